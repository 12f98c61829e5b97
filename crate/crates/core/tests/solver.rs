use approx::assert_relative_eq;
use spingauge::cli::config::default_lambda_grid;
use spingauge::hamiltonians::{build_effective_step1, build_spin_gauge, build_truncated_ks, EffectiveParams};
use spingauge::lattice::{enumerate_gauge_sector, Boundary, ChargeConfig, FullBasis, LatticeSpec};
use spingauge::solver::{
    dense_ground_state, ground_state, rs_series, strong_coupling_split, verify_truncation_theorem,
    Method, SolverOptions,
};
use spingauge::spinops::SpinRep;

fn step1(lambda: f64) -> spingauge::Operator {
    let full = FullBasis::new(&LatticeSpec::single_plaquette(), SpinRep::new(1).unwrap()).unwrap();
    let p = EffectiveParams::new(lambda, 1.0, 0.1).unwrap();
    build_effective_step1(&full, &p, &ChargeConfig::charged_plaquette().staggered()).unwrap()
}

#[test]
fn lanczos_agrees_with_dense_on_step1() {
    let lanczos = SolverOptions {
        method: Method::Lanczos,
        ..Default::default()
    };
    for lambda in default_lambda_grid().into_iter().step_by(3) {
        let h = step1(lambda);
        assert_eq!(h.dim(), 81);
        let d = dense_ground_state(&h).unwrap();
        let l = ground_state(&h, &lanczos).unwrap();
        assert!((d.energy - l.energy).abs() < 1e-10, "λ={lambda}: {} vs {}", d.energy, l.energy);
        let overlap: f64 = d.vector.iter().zip(&l.vector).map(|(a, b)| a * b).sum();
        assert!((overlap - 1.0).abs() < 1e-8, "λ={lambda}");
        assert!(l.residual <= lanczos.tol);
    }
}

#[test]
fn lanczos_handles_larger_sectors() {
    let lat = LatticeSpec::new(3, 3, Boundary::Open).unwrap();
    let sector = enumerate_gauge_sector(&lat, SpinRep::new(3).unwrap(), &ChargeConfig::neutral()).unwrap();
    assert!(sector.states().len() > 512, "{}", sector.states().len());
    let h = build_truncated_ks(&sector, 1.3).unwrap();
    let auto = ground_state(&h, &SolverOptions::default()).unwrap();
    let dense = dense_ground_state(&h).unwrap();
    assert!((auto.energy - dense.energy).abs() < 1e-9);
}

#[test]
fn series_matches_exact_energy_at_small_coupling() {
    let sector = enumerate_gauge_sector(
        &LatticeSpec::single_plaquette(),
        SpinRep::new(3).unwrap(),
        &ChargeConfig::charged_plaquette(),
    )
    .unwrap();
    let (h0, v) = strong_coupling_split(&sector).unwrap();
    let series = rs_series(&h0, &v, 6).unwrap();
    for kappa in [1e-2, 3e-2] {
        let exact = dense_ground_state(&h0.add(&v.scale(kappa)).unwrap()).unwrap().energy;
        for order in 1..=6 {
            let partial: f64 = series.energy_corrections[..=order]
                .iter()
                .enumerate()
                .map(|(n, e)| e * kappa.powi(n as i32))
                .sum();
            // remainder of a convergent series is O(κ^{order+1})
            assert!((partial - exact).abs() < 50.0 * kappa.powi(order as i32 + 1), "κ={kappa} order={order}");
        }
    }
    // odd orders vanish: every plaquette move changes the electric energy
    assert_eq!(series.energy_corrections[1], 0.0);
}

#[test]
fn series_state_is_first_order_accurate() {
    let sector = enumerate_gauge_sector(
        &LatticeSpec::single_plaquette(),
        SpinRep::new(2).unwrap(),
        &ChargeConfig::neutral(),
    )
    .unwrap();
    let (h0, v) = strong_coupling_split(&sector).unwrap();
    let series = rs_series(&h0, &v, 2).unwrap();
    let kappa = 1e-3;
    let exact = dense_ground_state(&h0.add(&v.scale(kappa)).unwrap()).unwrap();
    let g0 = series.ground_index;
    for (i, amp) in exact.vector.iter().enumerate() {
        let approx = series.state_corrections[0][i] + kappa * series.state_corrections[1][i];
        // exact is normalised, the series intermediate-normalised
        assert!((amp / exact.vector[g0] - approx).abs() < 1e-5);
    }
}

#[test]
fn truncation_theorem_orders() {
    let lat = LatticeSpec::single_plaquette();
    let charged = ChargeConfig::charged_plaquette();
    let cases = [
        (ChargeConfig::neutral(), 1u32, 0u32, 1i64),
        (charged.clone(), 1, 1, 0),
        (charged.clone(), 2, 1, 1),
        (ChargeConfig::neutral(), 2, 0, 2),
        (charged, 3, 1, 2),
    ];
    for (q, l, n0, predicted) in cases {
        let order = (predicted + 1) as usize;
        let rep = verify_truncation_theorem(&lat, &q, l, l + order as u32 + 3, order).unwrap();
        assert_eq!(rep.n0, n0);
        assert_eq!(rep.predicted_max_order, predicted);
        assert!(rep.pass && rep.proxy_stable);
        assert_eq!(rep.first_disagreement, Some(order), "{} l={l}", rep.charges);
    }
}

#[test]
fn spin_gauge_generic_over_precision() {
    let sector = enumerate_gauge_sector(
        &LatticeSpec::single_plaquette(),
        SpinRep::new(4).unwrap(),
        &ChargeConfig::charged_plaquette(),
    )
    .unwrap();
    let h64: spingauge::Operator = build_spin_gauge(&sector, 1.5).unwrap();
    let h32: spingauge::OperatorF32 = build_spin_gauge(&sector, 1.5f32).unwrap();
    assert_eq!(h64.nnz(), h32.nnz());
    for (a, b) in h64.entries().iter().zip(h32.entries()) {
        assert_relative_eq!(a.2, b.2 as f64, max_relative = 1e-6);
    }
    let e32 = dense_ground_state(&h32.to_f64()).unwrap().energy;
    let e64 = dense_ground_state(&h64).unwrap().energy;
    assert_relative_eq!(e32, e64, max_relative = 1e-6);
}
