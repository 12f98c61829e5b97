//! Assembly of the lattice Hamiltonians as sparse operators on a
//! [`ConfigBasis`]: the full product basis or a Gauss-law sector.
//!
//! All terms are built from link configurations directly. Diagonal terms are
//! evaluated per basis state; hopping terms apply a pattern of ladder moves
//! and look up the target state. A hopping term that leaves a sector is
//! reported as a basis mismatch.
//!
//! Plaquette orientation: `L+(n,1̂) L+(n+1̂,2̂) L−(n+2̂,1̂) L−(n,2̂)`.

use crate::error::{Error, Result};
use crate::lattice::{
    gauss_value, staggered_sign_map, ChargeConfig, ConfigBasis, FullBasis, GaussConvention,
    LatticeSpec,
};
use crate::scalar::{RealScalar, Scalar};
use crate::sparse::SparseOperator;
use crate::spinops::{AngularLadder, Ladder, UnitLadder};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HamiltonianKind {
    SpinGauge,
    TruncatedKs,
    EffectiveStep1,
    EffectiveStep2,
    ConstraintForm,
}

/// Couplings `λ, μ, Ω` of the effective cold-atom Hamiltonians.
#[derive(Clone, Debug, PartialEq)]
pub struct EffectiveParams<T> {
    pub lambda: T,
    pub mu: T,
    pub omega: T,
}

impl<T: Scalar> EffectiveParams<T> {
    pub fn new(lambda: T, mu: T, omega: T) -> Result<Self> {
        let zero = T::zero();
        if lambda < zero || mu < zero || omega < zero {
            return Err(Error::Domain(format!(
                "effective couplings must be non-negative, got λ={lambda:?} μ={mu:?} Ω={omega:?}"
            )));
        }
        Ok(Self { lambda, mu, omega })
    }

    /// `2Ω²/λ`, the magnitude of the second-order plaquette and projector
    /// prefactors (the plaquette term carries `8Ω²/λ` on unit-element
    /// `c, d` operators, i.e. `2Ω²/λ` on `L±` for `l = 1`).
    pub fn second_order_scale(&self) -> Result<T> {
        if self.lambda.is_zero() {
            return Err(Error::Domain("second-order terms need λ > 0".into()));
        }
        Ok(T::from_i64(2) * self.omega.clone() * self.omega.clone() / self.lambda.clone())
    }
}

impl<T: RealScalar> EffectiveParams<T> {
    /// `g = (λμ / 8Ω²)^{1/4}`, the spin-gauge coupling the second effective
    /// Hamiltonian reproduces.
    pub fn matched_g(&self) -> Result<T> {
        Ok(self.matched_g_squared()?.sqrt())
    }

    pub fn matched_g_squared(&self) -> Result<T> {
        if self.omega.is_zero() || self.lambda.is_zero() || self.mu.is_zero() {
            return Err(Error::Domain("matched coupling needs λ, μ, Ω > 0".into()));
        }
        let eight = <T as Scalar>::from_i64(8);
        Ok((self.lambda * self.mu / (eight * self.omega * self.omega)).sqrt())
    }
}

/// Energy rescaling `α = 2μ/g²` (equivalently `16Ω²g²/λ`).
pub fn rescale_alpha<T: Scalar>(mu: T, g_squared: T) -> T {
    T::from_i64(2) * mu / g_squared
}

fn diagonal_term<T: Scalar, B: ConfigBasis>(
    basis: &B,
    mut value: impl FnMut(&[i32]) -> Result<T>,
) -> Result<SparseOperator<T>> {
    let diag = (0..basis.dim())
        .map(|i| value(&basis.config(i)))
        .collect::<Result<Vec<T>>>()?;
    Ok(SparseOperator::from_diagonal(basis.tag(), diag))
}

/// Triplets of `coefficient · A` where `A` applies the `(link, raise)`
/// ladder pattern. The amplitude is `√Π|elements|²`.
fn hopping_triplets<T: Scalar, B: ConfigBasis>(
    basis: &B,
    ladder: &impl Ladder,
    pattern: &[(usize, bool)],
    coefficient: &T,
    out: &mut Vec<(usize, usize, T)>,
) -> Result<()> {
    let rep = basis.rep();
    for source in 0..basis.dim() {
        let mut config = basis.config(source);
        let mut squared: u128 = 1;
        for &(link, raise) in pattern {
            let m = config[link];
            squared *= ladder.squared(rep, m, raise);
            if squared == 0 {
                break;
            }
            config[link] = if raise { m + 1 } else { m - 1 };
        }
        if squared == 0 {
            continue;
        }
        let target = basis.index_of(&config).ok_or_else(|| Error::BasisMismatch {
            expected: basis.tag().to_string(),
            found: format!("hopping term leaving the basis at state {source}"),
        })?;
        let amplitude = T::sqrt_int(squared).ok_or_else(|| {
            Error::Domain(format!("amplitude √{squared} not representable exactly"))
        })?;
        out.push((target, source, coefficient.clone() * amplitude));
    }
    Ok(())
}

/// `coefficient · (A + A†)` for the ladder pattern `A`.
fn hermitian_hopping<T: Scalar, B: ConfigBasis>(
    basis: &B,
    ladder: &impl Ladder,
    pattern: &[(usize, bool)],
    coefficient: &T,
    out: &mut Vec<(usize, usize, T)>,
) -> Result<()> {
    hopping_triplets(basis, ladder, pattern, coefficient, out)?;
    let adjoint: Vec<(usize, bool)> = pattern.iter().map(|&(l, r)| (l, !r)).collect();
    hopping_triplets(basis, ladder, &adjoint, coefficient, out)
}

/// `coefficient · Σ_links L_z²`.
pub fn electric_term<T: Scalar, B: ConfigBasis>(basis: &B, coefficient: T) -> Result<SparseOperator<T>> {
    diagonal_term(basis, |c| {
        let s: i64 = c.iter().map(|&m| (m as i64) * (m as i64)).sum();
        Ok(coefficient.clone() * T::from_i64(s))
    })
}

/// `coefficient · Σ_plaquettes (U + U†)` with `U` the oriented plaquette
/// product of the given ladder family.
pub fn plaquette_term<T: Scalar, B: ConfigBasis>(
    basis: &B,
    ladder: &impl Ladder,
    coefficient: T,
) -> Result<SparseOperator<T>> {
    let mut triplets = Vec::new();
    for p in basis.lattice().plaquettes() {
        hermitian_hopping(basis, ladder, &p.oriented(), &coefficient, &mut triplets)?;
    }
    Ok(SparseOperator::from_triplets(basis.dim(), basis.tag(), triplets))
}

/// Spin-gauge Hamiltonian
/// `(g²/2) Σ L_z² − 1/(2g²(l(l+1))²) Σ (L+ L+ L− L− + h.c.)`.
pub fn build_spin_gauge<T: Scalar, B: ConfigBasis>(basis: &B, g_squared: T) -> Result<SparseOperator<T>> {
    check_positive(&g_squared, "g²")?;
    let two = T::from_i64(2);
    let casimir = T::from_i64(basis.rep().casimir());
    let electric = electric_term(basis, g_squared.clone() / two.clone())?;
    let magnetic = plaquette_term(
        basis,
        &AngularLadder,
        -T::one() / (two * g_squared * casimir.clone() * casimir),
    )?;
    electric.add(&magnetic)
}

/// Truncated Kogut-Susskind Hamiltonian
/// `(g²/2) Σ E² − 1/(2g²) Σ (U + U†)` with unit-element link ladders.
pub fn build_truncated_ks<T: Scalar, B: ConfigBasis>(basis: &B, g_squared: T) -> Result<SparseOperator<T>> {
    check_positive(&g_squared, "g²")?;
    let two = T::from_i64(2);
    let electric = electric_term(basis, g_squared.clone() / two.clone())?;
    let magnetic = plaquette_term(basis, &UnitLadder, -T::one() / (two * g_squared))?;
    electric.add(&magnetic)
}

fn check_positive<T: Scalar>(value: &T, name: &str) -> Result<()> {
    if *value <= T::zero() {
        return Err(Error::Domain(format!("{name} must be positive, got {value:?}")));
    }
    Ok(())
}

/// `coefficient · Σ_diag (L+_h L−_v + L−_h L+_v)` over the unordered
/// horizontal/vertical corner pairs.
fn exchange_term<T: Scalar, B: ConfigBasis>(basis: &B, coefficient: T) -> Result<SparseOperator<T>> {
    let mut triplets = Vec::new();
    for (h, v) in basis.lattice().diagonal_pairs() {
        hermitian_hopping(basis, &AngularLadder, &[(h, true), (v, false)], &coefficient, &mut triplets)?;
    }
    Ok(SparseOperator::from_triplets(basis.dim(), basis.tag(), triplets))
}

/// Link pairs sharing a vertex, one entry per (vertex, pair), as produced
/// by expanding `(Σ_incident L_z)²`.
fn vertex_pairs(lattice: &LatticeSpec) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for v in lattice.vertices() {
        let inc = lattice.incidence(v).expect("lattice vertex");
        for (i, &(a, _)) in inc.iter().enumerate() {
            for &(b, _) in &inc[i + 1..] {
                out.push((a, b));
            }
        }
    }
    out
}

/// First effective (generalised XXZ) Hamiltonian on the full product space:
///
/// `2λ Σ_{pairs at a vertex} L_z L_z + Ω Σ_diag (L_x L_x + L_y L_y)
///  + Σ_links [(2λ+μ) L_z² − 2λ (q_n + q_{n+k̂}) L_z]`
///
/// `charges` are the all-plus charges `q_n`. The `Ω` sum runs over ordered
/// corner pairs, i.e. `Ω (L+L− + L−L+)` per unordered pair, which is what
/// makes it equal [`build_constraint_form`] minus [`constraint_offset`].
pub fn build_effective_step1<T: Scalar>(
    basis: &FullBasis,
    params: &EffectiveParams<T>,
    charges: &ChargeConfig,
) -> Result<SparseOperator<T>> {
    let lattice = basis.lattice();
    charges.validate(lattice)?;
    let lambda = params.lambda.clone();
    let two = T::from_i64(2);
    let pairs = vertex_pairs(lattice);
    let link_charge: Vec<i64> = (0..lattice.num_links())
        .map(|l| charges.charge(lattice.links()[l].source) + charges.charge(lattice.link_target(l)))
        .collect();
    let onsite = two.clone() * lambda.clone() + params.mu.clone();
    let diag = diagonal_term(basis, |c| {
        let zz: i64 = pairs.iter().map(|&(a, b)| c[a] as i64 * c[b] as i64).sum();
        let sq: i64 = c.iter().map(|&m| m as i64 * m as i64).sum();
        let lin: i64 = c.iter().zip(&link_charge).map(|(&m, &q)| m as i64 * q).sum();
        Ok(two.clone() * lambda.clone() * T::from_i64(zz) + onsite.clone() * T::from_i64(sq)
            - two.clone() * lambda.clone() * T::from_i64(lin))
    })?;
    diag.add(&exchange_term(basis, params.omega.clone())?)
}

/// `λ Σ_n (G_n − q_n)² + μ Σ L_z² + 2Ω Σ_diag (c†d + h.c.)` with the
/// all-plus `G_n`, `c = L−(horizontal)/√2`, `d = L−(vertical)/√2`.
pub fn build_constraint_form<T: Scalar>(
    basis: &FullBasis,
    params: &EffectiveParams<T>,
    charges: &ChargeConfig,
) -> Result<SparseOperator<T>> {
    let constraint = gauss_penalty(basis, params.lambda.clone(), charges)?;
    let electric = electric_term(basis, params.mu.clone())?;
    // 2Ω c†d = Ω L+_h L−_v
    let hopping = exchange_term(basis, params.omega.clone())?;
    constraint.add(&electric)?.add(&hopping)
}

/// `H_G = λ Σ_n (G_n − q_n)²`, all-plus convention.
pub fn gauss_penalty<T: Scalar, B: ConfigBasis>(
    basis: &B,
    lambda: T,
    charges: &ChargeConfig,
) -> Result<SparseOperator<T>> {
    let lattice = basis.lattice();
    charges.validate(lattice)?;
    let vertices: Vec<_> = lattice.vertices().collect();
    diagonal_term(basis, |c| {
        let mut s = 0i64;
        for &v in &vertices {
            let d = gauss_value(lattice, c, v, GaussConvention::AllPlus)? - charges.charge(v);
            s += d * d;
        }
        Ok(lambda.clone() * T::from_i64(s))
    })
}

/// The constant `λ Σ q_n²` separating the constraint form from the first
/// effective Hamiltonian.
pub fn constraint_offset<T: Scalar>(lattice: &LatticeSpec, lambda: T, charges: &ChargeConfig) -> T {
    let s: i64 = lattice.vertices().map(|v| charges.charge(v).pow(2)).sum();
    lambda * T::from_i64(s)
}

/// The second effective Hamiltonian split into its parts.
#[derive(Clone, Debug)]
pub struct EffectiveStep2<T> {
    /// `μ Σ L_z² + H_B + H_B′`.
    pub operator: SparseOperator<T>,
    /// The diagonal `H_B′` part alone.
    pub projector_term: SparseOperator<T>,
}

/// Second effective Hamiltonian in the staggered (physical) variables, on
/// any basis of the `l = 1` theory:
///
/// `μ Σ L_z² + H_B + H_B′`, with `H_B = −(2Ω²/λ) Σ_plaquettes (U + U†)`
/// in terms of `L±` and `H_B′` from [`projector_term`].
pub fn build_effective_step2<T: Scalar, B: ConfigBasis>(
    basis: &B,
    params: &EffectiveParams<T>,
) -> Result<EffectiveStep2<T>> {
    if basis.rep().l() != 1 {
        return Err(Error::UnsupportedRepresentation {
            l: basis.rep().l(),
            reason: "the second effective Hamiltonian is defined for l = 1 only",
        });
    }
    let scale = params.second_order_scale()?;
    let electric = electric_term(basis, params.mu.clone())?;
    let plaquette = plaquette_term(basis, &AngularLadder, -scale)?;
    let projector = projector_term(basis, params)?;
    Ok(EffectiveStep2 {
        operator: electric.add(&plaquette)?.add(&projector)?,
        projector_term: projector,
    })
}

/// `H_B′ = −(2Ω²/λ) Σ_diag (|+⟩⟨+| + |0⟩⟨0|)_n ⊗ (|0⟩⟨0| + |−⟩⟨−|)_{n′}`,
/// written in the unstaggered (simulation) variables with the sum over
/// ordered corner pairs `(n, n′)`, then expressed in the physical variables
/// of `basis` through the staggered sign map. Requires `l = 1`.
pub fn projector_term<T: Scalar, B: ConfigBasis>(
    basis: &B,
    params: &EffectiveParams<T>,
) -> Result<SparseOperator<T>> {
    if basis.rep().l() != 1 {
        return Err(Error::UnsupportedRepresentation {
            l: basis.rep().l(),
            reason: "the projector correction is defined for l = 1 only",
        });
    }
    let scale = params.second_order_scale()?;
    let map = staggered_sign_map(basis.lattice())?;
    let mut ordered = Vec::new();
    for (h, v) in basis.lattice().diagonal_pairs() {
        ordered.push((h, v));
        ordered.push((v, h));
    }
    diagonal_term(basis, |c| {
        let sim = map.apply(c);
        let count = ordered
            .iter()
            .filter(|&&(a, b)| sim[a] >= 0 && sim[b] <= 0)
            .count();
        Ok(-scale.clone() * T::from_i64(count as i64))
    })
}

/// Conjugates a full-space operator by the staggering unitary (a pure
/// permutation of product states: `m → −m` on odd-source links).
pub fn apply_staggering<T: Scalar>(op: &SparseOperator<T>, basis: &FullBasis) -> Result<SparseOperator<T>> {
    if *op.tag() != basis.tag() {
        return Err(Error::BasisMismatch {
            expected: basis.tag().to_string(),
            found: op.tag().to_string(),
        });
    }
    let map = staggered_sign_map(basis.lattice())?;
    let perm: Vec<usize> = (0..basis.dim())
        .map(|i| {
            basis
                .index_of(&map.apply(&basis.config(i)))
                .expect("reflection stays in the multiplet")
        })
        .collect();
    op.permute(&perm)
}

/// Full-space operator restricted to the states of `sector` (same lattice
/// and spin), in sector order.
pub fn restrict_to_sector<T: Scalar, B: ConfigBasis>(
    op: &SparseOperator<T>,
    full: &FullBasis,
    sector: &B,
) -> Result<SparseOperator<T>> {
    if *op.tag() != full.tag() {
        return Err(Error::BasisMismatch {
            expected: full.tag().to_string(),
            found: op.tag().to_string(),
        });
    }
    if sector.lattice() != full.lattice() || sector.rep() != full.rep() {
        return Err(Error::BasisMismatch {
            expected: full.tag().to_string(),
            found: sector.tag().to_string(),
        });
    }
    let keep: Vec<usize> = (0..sector.dim())
        .map(|i| full.index_of(&sector.config(i)).expect("sector state in full basis"))
        .collect();
    Ok(op.restrict(&keep, sector.tag()))
}
