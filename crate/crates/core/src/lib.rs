//! Spin-gauge lattice Hamiltonians.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod hamiltonians;
pub mod lattice;
pub mod scalar;
pub mod solver;
pub mod sparse;
pub mod spinops;

pub use error::{Error, Result};
pub use scalar::{RealScalar, Scalar};
pub use sparse::{BasisTag, SparseOperator};

pub type Operator = SparseOperator<f64>;
pub type OperatorF32 = SparseOperator<f32>;
pub type ExactOperator = SparseOperator<num_rational::Rational64>;
