//! Single-link operators on the `2l + 1` level multiplet.
//!
//! Basis index `i` corresponds to `m = i − l`, ascending, everywhere in the
//! crate (including every tensor-product factor).

use crate::error::{Error, Result};
use crate::scalar::{RealScalar, Scalar};
use crate::sparse::{BasisTag, SparseOperator};

/// Spin length `l` of the link multiplet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinRep {
    l: u32,
}

impl SpinRep {
    pub fn new(l: u32) -> Result<Self> {
        if l == 0 {
            return Err(Error::Domain("spin length l must be at least 1".into()));
        }
        Ok(Self { l })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn dim(&self) -> usize {
        2 * self.l as usize + 1
    }

    /// Casimir `l(l+1)`.
    pub fn casimir(&self) -> i64 {
        let l = self.l as i64;
        l * (l + 1)
    }

    pub fn contains(&self, m: i32) -> bool {
        m.unsigned_abs() <= self.l
    }

    pub fn index_of(&self, m: i32) -> Option<usize> {
        self.contains(m).then(|| (m + self.l as i32) as usize)
    }

    pub fn m_of(&self, index: usize) -> i32 {
        index as i32 - self.l as i32
    }

    /// Iterates `m = −l, …, l`.
    pub fn levels(&self) -> impl Iterator<Item = i32> {
        let l = self.l as i32;
        -l..=l
    }

    fn tag(&self) -> BasisTag {
        BasisTag::Link { l: self.l }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkOperatorKind {
    Lz,
    Lplus,
    Lminus,
    KsRaise,
    KsLower,
    Projector(i32),
}

/// A ladder family, described by its squared matrix elements
/// `|⟨m±1| A |m⟩|²` (integers for every family used here), zero outside the
/// multiplet.
///
/// Products of several ladder elements are formed as the square root of the
/// product of squares, which keeps e.g. the `l = 1` plaquette amplitudes
/// exactly rational.
pub trait Ladder {
    fn squared(&self, rep: SpinRep, m: i32, raise: bool) -> u128;

    fn element<T: Scalar>(&self, rep: SpinRep, m: i32, raise: bool) -> Option<T> {
        T::sqrt_int(self.squared(rep, m, raise))
    }
}

/// Angular-momentum ladder `L±`, elements `√(l(l+1) − m(m±1))`.
#[derive(Clone, Copy, Debug, Default)]
pub struct AngularLadder;

/// Kogut-Susskind link ladder `e^{±iφ}` hard-truncated to the multiplet:
/// unit elements, top level annihilated by the raiser, bottom by the lowerer.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitLadder;

impl Ladder for AngularLadder {
    fn squared(&self, rep: SpinRep, m: i32, raise: bool) -> u128 {
        let target = if raise { m + 1 } else { m - 1 };
        if !rep.contains(m) || !rep.contains(target) {
            return 0;
        }
        (rep.casimir() - m as i64 * target as i64) as u128
    }
}

impl Ladder for UnitLadder {
    fn squared(&self, rep: SpinRep, m: i32, raise: bool) -> u128 {
        let target = if raise { m + 1 } else { m - 1 };
        u128::from(rep.contains(m) && rep.contains(target))
    }
}

fn ladder_operator<T: Scalar>(
    rep: SpinRep,
    raise: bool,
    ladder: &impl Ladder,
) -> Result<SparseOperator<T>> {
    let mut triplets = Vec::with_capacity(rep.dim());
    for m in rep.levels() {
        let target = if raise { m + 1 } else { m - 1 };
        let (Some(col), Some(row)) = (rep.index_of(m), rep.index_of(target)) else {
            continue;
        };
        let value = ladder.element(rep, m, raise).ok_or_else(|| {
            Error::Domain(format!(
                "ladder element at m = {m} (l = {}) is not representable exactly",
                rep.l()
            ))
        })?;
        triplets.push((row, col, value));
    }
    Ok(SparseOperator::from_triplets(rep.dim(), rep.tag(), triplets))
}

/// `L_z = diag(−l, …, l)`.
pub fn lz_matrix<T: Scalar>(rep: SpinRep) -> SparseOperator<T> {
    SparseOperator::from_diagonal(rep.tag(), rep.levels().map(|m| T::from_i64(m as i64)).collect())
}

/// Standard angular-momentum `L+` (`raise`) or `L−`.
pub fn ladder_matrix<T: RealScalar>(rep: SpinRep, raise: bool) -> SparseOperator<T> {
    ladder_operator(rep, raise, &AngularLadder).expect("floats represent every square root")
}

/// `L±` over any scalar; fails when an element `√n` has no exact
/// representation (e.g. rationals with `l ≥ 2`).
pub fn try_ladder_matrix<T: Scalar>(rep: SpinRep, raise: bool) -> Result<SparseOperator<T>> {
    ladder_operator(rep, raise, &AngularLadder)
}

/// Unit-element ladder of the truncated Kogut-Susskind link.
pub fn truncated_ks_ladder<T: Scalar>(rep: SpinRep, raise: bool) -> SparseOperator<T> {
    ladder_operator(rep, raise, &UnitLadder).expect("unit elements are exact")
}

/// Rank-one projector `|m⟩⟨m|`.
pub fn level_projector<T: Scalar>(rep: SpinRep, m: i32) -> Result<SparseOperator<T>> {
    let index = rep
        .index_of(m)
        .ok_or_else(|| Error::Domain(format!("level m = {m} outside multiplet l = {}", rep.l())))?;
    Ok(SparseOperator::from_triplets(rep.dim(), rep.tag(), [(index, index, T::one())]))
}

pub fn link_operator<T: RealScalar>(rep: SpinRep, kind: LinkOperatorKind) -> Result<SparseOperator<T>> {
    Ok(match kind {
        LinkOperatorKind::Lz => lz_matrix(rep),
        LinkOperatorKind::Lplus => ladder_matrix(rep, true),
        LinkOperatorKind::Lminus => ladder_matrix(rep, false),
        LinkOperatorKind::KsRaise => truncated_ks_ladder(rep, true),
        LinkOperatorKind::KsLower => truncated_ks_ladder(rep, false),
        LinkOperatorKind::Projector(m) => level_projector(rep, m)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn rep(l: u32) -> SpinRep {
        SpinRep::new(l).unwrap()
    }

    #[test]
    fn zero_spin_rejected() {
        assert!(SpinRep::new(0).is_err());
    }

    #[test]
    fn lz_small_cases() {
        let lz: SparseOperator<f64> = lz_matrix(rep(1));
        assert_eq!(lz.diagonal(), vec![-1.0, 0.0, 1.0]);
        let lz2: SparseOperator<f64> = lz_matrix(rep(2));
        assert_eq!(lz2.diagonal(), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        for l in 1..=20 {
            let lz: SparseOperator<Rational64> = lz_matrix(rep(l));
            assert_eq!(lz.trace(), Rational64::from_integer(0));
            assert!(lz.is_symmetric());
        }
    }

    #[test]
    fn angular_ladder_elements() {
        let lp: SparseOperator<f64> = ladder_matrix(rep(1), true);
        // index 0,1,2 <-> m = -1,0,1
        assert_eq!(lp.get(1, 0), 2f64.sqrt());
        assert_eq!(lp.get(2, 1), 2f64.sqrt());
        assert!(lp.entries().iter().all(|&(_, c, _)| c != 2));
        let lp5: SparseOperator<f64> = ladder_matrix(rep(5), true);
        let (i0, i1) = (rep(5).index_of(0).unwrap(), rep(5).index_of(1).unwrap());
        assert_eq!(lp5.get(i1, i0), 30f64.sqrt());
        let lm: SparseOperator<f64> = ladder_matrix(rep(5), false);
        assert_eq!(lm, lp5.transpose());
    }

    #[test]
    fn ks_ladder_small_case() {
        let up: SparseOperator<Rational64> = truncated_ks_ladder(rep(1), true);
        let one = Rational64::from_integer(1);
        assert_eq!(up.entries(), &[(1, 0, one), (2, 1, one)]);
        let down = truncated_ks_ladder(rep(1), false);
        let udu = up.transpose().matmul(&up).unwrap();
        assert_eq!(udu.diagonal(), vec![one, one, Rational64::from_integer(0)]);
        let up20: SparseOperator<Rational64> = truncated_ks_ladder(rep(20), true);
        let down20 = truncated_ks_ladder(rep(20), false);
        assert_eq!(up20.sub(&down20.transpose()).unwrap().nnz(), 0);
        assert!(up20.entries().iter().all(|(_, _, v)| *v == one));
        assert_eq!(up20.nnz(), 40);
        assert_eq!(down, up.transpose());
    }

    #[test]
    fn projectors() {
        let p: SparseOperator<Rational64> = level_projector(rep(1), 0).unwrap();
        assert_eq!(p.entries(), &[(1, 1, Rational64::from_integer(1))]);
        assert_eq!(p.matmul(&p).unwrap(), p);
        assert!(matches!(level_projector::<f64>(rep(1), 2), Err(Error::Domain(_))));
        let r = rep(4);
        let mut sum = SparseOperator::<Rational64>::zeros(r.dim(), BasisTag::Link { l: 4 });
        for m in r.levels() {
            sum = sum.add(&level_projector(r, m).unwrap()).unwrap();
        }
        assert_eq!(sum, SparseOperator::identity(r.dim(), BasisTag::Link { l: 4 }));
    }

    #[test]
    fn commutation_relations_and_casimir() {
        for l in 1..=20 {
            let r = rep(l);
            let lz: SparseOperator<f64> = lz_matrix(r);
            let lp = ladder_matrix::<f64>(r, true);
            let lm = ladder_matrix::<f64>(r, false);
            // [Lz, L±] = ±L± to machine precision
            let scale = lp.max_abs();
            assert!(lz.commutator(&lp).unwrap().sub(&lp).unwrap().max_abs() <= 1e-14 * scale, "l={l}");
            assert!(lz.commutator(&lm).unwrap().add(&lm).unwrap().max_abs() <= 1e-14 * scale, "l={l}");
            // L+L- + L-L+ + 2Lz^2 = 2 l(l+1)
            let cas = lp
                .matmul(&lm)
                .unwrap()
                .add(&lm.matmul(&lp).unwrap())
                .unwrap()
                .add(&lz.matmul(&lz).unwrap().scale(2.0))
                .unwrap();
            let expected = 2.0 * r.casimir() as f64;
            for (i, v) in cas.diagonal().iter().enumerate() {
                assert!((v - expected).abs() <= 1e-12 * expected, "l={l} i={i} {v}");
            }
            assert!(cas.is_diagonal());
        }
    }

    #[test]
    fn normalised_ladder_approaches_unit_ladder() {
        for l in 1..=20u32 {
            let r = rep(l);
            let norm = (r.casimir() as f64).sqrt();
            for m in 0..(l as i32) {
                let e: f64 = AngularLadder.element(r, m, true).unwrap();
                let bound = (m * (m + 1)) as f64 / r.casimir() as f64;
                assert!((e / norm - 1.0).abs() <= bound + 1e-15, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn link_operator_dispatch() {
        let r = rep(2);
        let a: SparseOperator<f64> = link_operator(r, LinkOperatorKind::KsLower).unwrap();
        assert_eq!(a, truncated_ks_ladder(r, false));
        assert!(link_operator::<f64>(r, LinkOperatorKind::Projector(-3)).is_err());
    }

    #[test]
    fn exact_ladders_only_where_representable() {
        // single elements √2 are irrational; only products of them are not
        assert!(try_ladder_matrix::<Rational64>(rep(1), true).is_err());
        let f: SparseOperator<f64> = try_ladder_matrix(rep(3), false).unwrap();
        assert_eq!(f, ladder_matrix(rep(3), false));
    }
}
