//! Ground states, observables and perturbation series.

mod eigen;
mod perturbation;

pub use eigen::{
    dense_ground_state, expectation, ground_state, lanczos_ground_state, EigenResult, Method,
    SolverOptions, DENSE_LIMIT,
};
pub use perturbation::{
    rs_series, strong_coupling_split, verify_truncation_theorem, OrderComparison,
    PerturbationSeries, TheoremReport, COEFFICIENT_TOLERANCE, PLAQUETTE_LADDER_POWER,
    PROXY_STABILITY_TOLERANCE,
};
