//! Closed-form references: weak-coupling plaquette, truncation
//! probability, cold-atom parameters and the optical superlattice.

mod atomic;
mod drell;
mod potential;

pub use atomic::{
    atomic_parameters, AtomicInputs, AtomicParameters, HierarchyRatio, LinkDetuning,
    DEFAULT_HIERARCHY_THRESHOLD,
};
pub use drell::{drell_e1, truncation_probability, DrellState, WINDOW_CUTOFF};
pub use potential::{
    classify_minima, optical_potential, potential_period, DepthClass, MinimaReport,
    DEPTH_CLUSTER_FRACTION, MIN_POINTS_PER_PERIOD,
};
