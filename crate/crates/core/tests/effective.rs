use num_rational::Rational64;
use spingauge::hamiltonians::{
    build_constraint_form, build_effective_step1, build_effective_step2, build_spin_gauge,
    constraint_offset, electric_term, gauss_penalty, projector_term, rescale_alpha, EffectiveParams,
};
use spingauge::lattice::{
    enumerate_gauge_sector, staggered_sign_map, Boundary, ChargeConfig, ConfigBasis, FullBasis,
    LatticeSpec, Vertex,
};
use spingauge::spinops::SpinRep;
use spingauge::{BasisTag, ExactOperator, SparseOperator};

fn r(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn l1() -> SpinRep {
    SpinRep::new(1).unwrap()
}

#[test]
fn xxz_form_equals_constraint_form_minus_offset() {
    let cases = [
        (LatticeSpec::single_plaquette(), ChargeConfig::charged_plaquette().staggered()),
        (LatticeSpec::single_plaquette(), ChargeConfig::neutral()),
        (
            LatticeSpec::new(3, 2, Boundary::Open).unwrap(),
            ChargeConfig::from_pairs([(Vertex::new(0, 0), 1), (Vertex::new(2, 1), 2)]),
        ),
    ];
    for (lat, q) in cases {
        let full = FullBasis::new(&lat, l1()).unwrap();
        for (lambda, mu, omega) in [(r(7, 2), r(1, 3), r(2, 5)), (r(100, 1), r(1, 1), r(1, 10))] {
            let p = EffectiveParams::new(lambda, mu, omega).unwrap();
            let step1: ExactOperator = build_effective_step1(&full, &p, &q).unwrap();
            let form = build_constraint_form(&full, &p, &q).unwrap();
            let offset = SparseOperator::identity(full.dim(), full.tag()).scale(constraint_offset(&lat, lambda, &q));
            assert_eq!(step1, form.sub(&offset).unwrap(), "{}", lat.describe());
        }
    }
}

/// `μ Σ L² − P H_R² P / (2λ)` in simulation variables, built from the
/// constraint, electric and hopping pieces alone.
fn second_order_oracle(lat: &LatticeSpec, params: &EffectiveParams<Rational64>, q: &ChargeConfig) -> (FullBasis, ExactOperator, Vec<usize>) {
    let full = FullBasis::new(lat, l1()).unwrap();
    let zero = EffectiveParams::new(params.lambda, r(0, 1), params.omega).unwrap();
    let penalty = gauss_penalty(&full, params.lambda, q).unwrap();
    // hopping part = constraint form at μ = 0 minus the penalty
    let hop = build_constraint_form(&full, &zero, q).unwrap().sub(&penalty).unwrap();
    let ground: Vec<usize> = penalty
        .diagonal()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v == r(0, 1))
        .map(|(i, _)| i)
        .collect();
    // every hop out of the constrained space costs exactly 2λ
    for &i in &ground {
        let mut e = vec![r(0, 1); full.dim()];
        e[i] = r(1, 1);
        for (j, amp) in hop.matvec(&e).unwrap().iter().enumerate() {
            if *amp != r(0, 1) {
                assert_eq!(penalty.get(j, j), r(2, 1) * params.lambda);
            }
        }
    }
    let second = hop.matmul(&hop).unwrap().scale(-r(1, 2) / params.lambda);
    let h = electric_term(&full, params.mu).unwrap().add(&second).unwrap();
    (full, h, ground)
}

#[test]
fn second_order_oracle_reproduces_step2() {
    let cases = [
        (LatticeSpec::single_plaquette(), ChargeConfig::charged_plaquette()),
        (LatticeSpec::single_plaquette(), ChargeConfig::neutral()),
        (LatticeSpec::new(3, 2, Boundary::Open).unwrap(), ChargeConfig::neutral()),
        (
            LatticeSpec::new(2, 3, Boundary::Open).unwrap(),
            ChargeConfig::from_pairs([(Vertex::new(0, 0), 1), (Vertex::new(1, 2), -1)]),
        ),
    ];
    let params = EffectiveParams::new(r(50, 1), r(3, 2), r(1, 4)).unwrap();
    for (lat, phys_charges) in cases {
        let sim_charges = phys_charges.staggered();
        let (full, oracle, ground) = second_order_oracle(&lat, &params, &sim_charges);
        let sector = enumerate_gauge_sector(&lat, l1(), &phys_charges).unwrap();
        assert_eq!(sector.dim(), ground.len());
        let step2 = build_effective_step2(&sector, &params).unwrap().operator;
        let map = staggered_sign_map(&lat).unwrap();
        let to_full: Vec<usize> = (0..sector.dim())
            .map(|i| full.index_of(&map.apply(&sector.config(i))).unwrap())
            .collect();
        let mut ground_sorted = to_full.clone();
        ground_sorted.sort();
        assert_eq!(ground_sorted, ground);
        for i in 0..sector.dim() {
            for j in 0..sector.dim() {
                assert_eq!(
                    step2.get(i, j),
                    oracle.get(to_full[i], to_full[j]),
                    "{} {} ({i},{j})",
                    lat.describe(),
                    phys_charges.describe()
                );
            }
        }
    }
}

#[test]
fn projector_term_counts_ordered_pairs() {
    // all links at m = 0: every ordered corner pair contributes
    let lat = LatticeSpec::single_plaquette();
    let full = FullBasis::new(&lat, l1()).unwrap();
    let p = EffectiveParams::new(r(10, 1), r(1, 1), r(1, 2)).unwrap();
    let hb: ExactOperator = projector_term(&full, &p).unwrap();
    let vacuum = full.index_of(&[0, 0, 0, 0]).unwrap();
    assert_eq!(hb.get(vacuum, vacuum), -r(2, 1) * r(1, 4) / r(10, 1) * r(8, 1));
}

#[test]
fn matched_identity_exact() {
    // λμ/(8Ω²) = 2500, so g² = 50 and α = 1/25
    let params = EffectiveParams::new(r(200, 1), r(1, 1), r(1, 10)).unwrap();
    let g2 = r(50, 1);
    let alpha = rescale_alpha(params.mu, g2);
    assert_eq!(alpha, r(1, 25));
    assert_eq!(alpha, r(16, 1) * params.omega * params.omega * g2 / params.lambda);
    for lat in [LatticeSpec::single_plaquette(), LatticeSpec::new(3, 2, Boundary::Open).unwrap()] {
        let full = FullBasis::new(&lat, l1()).unwrap();
        let step2 = build_effective_step2(&full, &params).unwrap();
        let lhs = step2.operator.sub(&step2.projector_term).unwrap().scale(r(1, 1) / alpha);
        assert_eq!(lhs, build_spin_gauge(&full, g2).unwrap());
    }
}

#[test]
fn matched_identity_floating() {
    let params = EffectiveParams::new(100.0f64, 1.0, 0.1).unwrap();
    let g = params.matched_g().unwrap();
    assert!((g - 1250f64.powf(0.25)).abs() < 1e-12);
    assert!((g - 5.946).abs() < 5e-4);
    let g2 = params.matched_g_squared().unwrap();
    let alpha = rescale_alpha(params.mu, g2);
    let sector = enumerate_gauge_sector(&LatticeSpec::single_plaquette(), l1(), &ChargeConfig::charged_plaquette()).unwrap();
    let step2 = build_effective_step2(&sector, &params).unwrap();
    let lhs = step2.operator.sub(&step2.projector_term).unwrap().scale(1.0 / alpha);
    let rhs = build_spin_gauge(&sector, g2).unwrap();
    assert_eq!(lhs.nnz(), rhs.nnz());
    for (a, b) in lhs.entries().iter().zip(rhs.entries()) {
        assert_eq!((a.0, a.1), (b.0, b.1));
        assert!((a.2 - b.2).abs() <= 1e-12 * b.2.abs());
    }
}

#[test]
fn step1_at_zero_exchange_is_diagonal() {
    let full = FullBasis::new(&LatticeSpec::single_plaquette(), l1()).unwrap();
    let p = EffectiveParams::new(3.0, 1.0, 0.0).unwrap();
    let h = build_effective_step1(&full, &p, &ChargeConfig::neutral()).unwrap();
    assert!(h.is_diagonal());
    assert_eq!(*h.tag(), BasisTag::Full { lattice: "2x2-open".into(), l: 1 });
}
