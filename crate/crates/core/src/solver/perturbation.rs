//! Nondegenerate Rayleigh-Schrödinger series and the check that a
//! truncated link theory reproduces the untruncated ground-state series up
//! to the order the electric cutoff allows.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonians::{electric_term, plaquette_term};
use crate::lattice::{enumerate_gauge_sector, ChargeConfig, ConfigBasis, GaugeSector, LatticeSpec};
use crate::scalar::Scalar;
use crate::sparse::SparseOperator;
use crate::spinops::{SpinRep, UnitLadder};

/// Ground-state series of `H0 + κV` with intermediate normalisation
/// `⟨G⁽⁰⁾|G⁽ⁿ⁾⟩ = 0` for `n ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSeries<T> {
    pub order: usize,
    /// Index of the unperturbed ground state in the operator basis.
    pub ground_index: usize,
    /// `E⁽⁰⁾, …, E⁽ᴺ⁾`.
    pub energy_corrections: Vec<T>,
    /// `|G⁽⁰⁾⟩, …, |G⁽ᴺ⁾⟩`.
    pub state_corrections: Vec<Vec<T>>,
}

impl<T: Scalar> PerturbationSeries<T> {
    /// `Σ κⁿ E⁽ⁿ⁾`.
    pub fn energy_at(&self, kappa: T) -> T {
        let mut power = T::one();
        let mut total = T::zero();
        for e in &self.energy_corrections {
            total = total + power.clone() * e.clone();
            power = power * kappa.clone();
        }
        total
    }
}

/// Corrections through `order` for diagonal `h0` and perturbation `v`.
pub fn rs_series<T: Scalar>(
    h0: &SparseOperator<T>,
    v: &SparseOperator<T>,
    order: usize,
) -> Result<PerturbationSeries<T>> {
    if !h0.is_diagonal() {
        return Err(Error::Domain("unperturbed operator must be diagonal".into()));
    }
    if h0.tag() != v.tag() || h0.dim() != v.dim() {
        return Err(Error::BasisMismatch {
            expected: h0.tag().to_string(),
            found: v.tag().to_string(),
        });
    }
    let dim = h0.dim();
    if dim == 0 {
        return Err(Error::Domain("empty basis".into()));
    }
    let levels = h0.diagonal();
    let ground = (0..dim)
        .min_by(|&a, &b| levels[a].partial_cmp(&levels[b]).expect("comparable energies"))
        .expect("non-empty");
    let e0 = levels[ground].clone();
    if let Some(other) = (0..dim).find(|&k| k != ground && (levels[k].clone() - e0.clone()).is_negligible()) {
        let (first, second) = (ground.min(other), ground.max(other));
        return Err(Error::Degenerate {
            first,
            second,
            energy: e0.to_f64(),
        });
    }

    let mut g0 = vec![T::zero(); dim];
    g0[ground] = T::one();
    let mut energies = vec![e0.clone()];
    let mut states = vec![g0];
    for n in 1..=order {
        let vg = v.matvec(&states[n - 1])?;
        energies.push(vg[ground].clone());
        let mut next = vec![T::zero(); dim];
        for k in (0..dim).filter(|&k| k != ground) {
            let mut rhs = vg[k].clone();
            for j in 1..=n {
                rhs = rhs - energies[j].clone() * states[n - j][k].clone();
            }
            next[k] = rhs / (e0.clone() - levels[k].clone());
        }
        states.push(next);
    }
    Ok(PerturbationSeries {
        order,
        ground_index: ground,
        energy_corrections: energies,
        state_corrections: states,
    })
}

/// Strong-coupling split of the truncated Kogut-Susskind Hamiltonian on a
/// sector: `H0 = ½ Σ E²` and `V = −½ Σ (U + U†)`, so that
/// `H/g² = H0 + g⁻⁴ V`.
pub fn strong_coupling_split(sector: &GaugeSector) -> Result<(SparseOperator<f64>, SparseOperator<f64>)> {
    let h0 = electric_term(sector, 0.5)?;
    let v = plaquette_term(sector, &UnitLadder, -0.5)?;
    Ok((h0, v))
}

/// Highest power of any single ladder operator in a plaquette term.
pub const PLAQUETTE_LADDER_POWER: usize = 1;

/// Agreement tolerance between truncated and proxy coefficients.
pub const COEFFICIENT_TOLERANCE: f64 = 1e-10;

/// Bound on coefficient drift when the proxy cutoff is raised by two.
pub const PROXY_STABILITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderComparison {
    pub order: usize,
    pub max_state_deviation: f64,
    pub energy_deviation: f64,
    pub agrees: bool,
    pub predicted_to_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub lattice: String,
    pub charges: String,
    pub l_small: u32,
    pub l_large_proxy: u32,
    /// Largest `|m|` in the unperturbed ground state.
    pub n0: u32,
    pub p_max: usize,
    /// `⌊(l − n0)/p_max⌋`.
    pub predicted_max_order: i64,
    pub orders: Vec<OrderComparison>,
    pub first_disagreement: Option<usize>,
    pub proxy_stable: bool,
    pub proxy_drift: f64,
    pub pass: bool,
}

fn embed(small: &GaugeSector, large: &GaugeSector, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; large.dim()];
    for (i, x) in v.iter().enumerate() {
        let j = large
            .index_of(&small.config(i))
            .expect("smaller multiplet embeds in larger one");
        out[j] = *x;
    }
    out
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn series_for(lattice: &LatticeSpec, l: u32, charges: &ChargeConfig, order: usize) -> Result<(GaugeSector, PerturbationSeries<f64>)> {
    let sector = enumerate_gauge_sector(lattice, SpinRep::new(l)?, charges)?;
    let (h0, v) = strong_coupling_split(&sector)?;
    let series = rs_series(&h0, &v, order)?;
    Ok((sector, series))
}

/// Compares the ground-state series of the `l_small` truncated theory with
/// that of a large-cutoff proxy for the untruncated one, orders `0..=order`.
pub fn verify_truncation_theorem(
    lattice: &LatticeSpec,
    charges: &ChargeConfig,
    l_small: u32,
    l_large_proxy: u32,
    order: usize,
) -> Result<TheoremReport> {
    if (l_large_proxy as usize) < l_small as usize + order + 2 {
        return Err(Error::Domain(format!(
            "proxy cutoff {l_large_proxy} must be at least l_small + order + 2 = {}",
            l_small as usize + order + 2
        )));
    }
    let (small, s_series) = series_for(lattice, l_small, charges, order)?;
    let (large, l_series) = series_for(lattice, l_large_proxy, charges, order)?;
    let (larger, x_series) = series_for(lattice, l_large_proxy + 2, charges, order)?;

    let n0 = large
        .config(l_series.ground_index)
        .iter()
        .map(|m| m.unsigned_abs())
        .max()
        .unwrap_or(0);
    let predicted = (l_small as i64 - n0 as i64).div_euclid(PLAQUETTE_LADDER_POWER as i64);

    let mut proxy_drift = 0.0f64;
    for n in 0..=order {
        let a = embed(&large, &larger, &l_series.state_corrections[n]);
        proxy_drift = proxy_drift
            .max(max_dev(&a, &x_series.state_corrections[n]))
            .max((l_series.energy_corrections[n] - x_series.energy_corrections[n]).abs());
    }

    let mut orders = Vec::new();
    for n in 0..=order {
        let embedded = embed(&small, &large, &s_series.state_corrections[n]);
        let dev = max_dev(&embedded, &l_series.state_corrections[n]);
        let edev = (s_series.energy_corrections[n] - l_series.energy_corrections[n]).abs();
        orders.push(OrderComparison {
            order: n,
            max_state_deviation: dev,
            energy_deviation: edev,
            agrees: dev <= COEFFICIENT_TOLERANCE,
            predicted_to_agree: n as i64 <= predicted,
        });
    }
    let first_disagreement = orders.iter().find(|o| !o.agrees).map(|o| o.order);
    let proxy_stable = proxy_drift <= PROXY_STABILITY_TOLERANCE;
    let pass = proxy_stable && orders.iter().filter(|o| o.predicted_to_agree).all(|o| o.agrees);
    Ok(TheoremReport {
        lattice: lattice.describe(),
        charges: charges.describe(),
        l_small,
        l_large_proxy,
        n0,
        p_max: PLAQUETTE_LADDER_POWER,
        predicted_max_order: predicted,
        orders,
        first_disagreement,
        proxy_stable,
        proxy_drift,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::BasisTag;
    use num_rational::Rational64;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn zeroth_order_only() {
        let h0 = SparseOperator::from_diagonal(BasisTag::Generic, vec![r(2, 1), r(-1, 1), r(5, 1)]);
        let v = SparseOperator::from_triplets(3, BasisTag::Generic, vec![(0, 1, r(1, 1)), (1, 0, r(1, 1))]);
        let s = rs_series(&h0, &v, 0).unwrap();
        assert_eq!(s.energy_corrections, vec![r(-1, 1)]);
        assert_eq!(s.state_corrections, vec![vec![r(0, 1), r(1, 1), r(0, 1)]]);
    }

    #[test]
    fn two_level_second_order_exact() {
        let delta = r(3, 1);
        let coupling = r(1, 2);
        let h0 = SparseOperator::from_diagonal(BasisTag::Generic, vec![r(0, 1), delta]);
        let v = SparseOperator::from_triplets(2, BasisTag::Generic, vec![(0, 1, coupling), (1, 0, coupling)]);
        let s = rs_series(&h0, &v, 4).unwrap();
        assert_eq!(s.energy_corrections[1], r(0, 1));
        assert_eq!(s.energy_corrections[2], -coupling * coupling / delta);
        for n in 1..=4 {
            assert_eq!(s.state_corrections[n][0], r(0, 1));
        }
    }

    #[test]
    fn degeneracy_is_reported() {
        let h0 = SparseOperator::from_diagonal(BasisTag::Generic, vec![1.0, 0.0, 3.0, 0.0]);
        let v = SparseOperator::zeros(4, BasisTag::Generic);
        match rs_series(&h0, &v, 2) {
            Err(Error::Degenerate { first, second, .. }) => assert_eq!((first, second), (1, 3)),
            other => panic!("expected degeneracy, got {other:?}"),
        }
    }

    #[test]
    fn non_diagonal_h0_rejected() {
        let h0 = SparseOperator::from_triplets(2, BasisTag::Generic, vec![(0, 1, 1.0), (1, 0, 1.0)]);
        let v = SparseOperator::zeros(2, BasisTag::Generic);
        assert!(matches!(rs_series(&h0, &v, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn proxy_guard_enforced() {
        let lat = LatticeSpec::single_plaquette();
        assert!(verify_truncation_theorem(&lat, &ChargeConfig::neutral(), 1, 3, 2).is_err());
    }
}
