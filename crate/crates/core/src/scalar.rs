//! Scalar abstraction shared by every operator in the crate.
//!
//! Operators whose matrix elements are rational (electric terms, Gauss
//! generators, unit-element ladders) can be assembled over [`Rational64`]
//! and compared exactly. Square-root valued angular-momentum ladders need a
//! [`RealScalar`], i.e. `f64` or `f32`.

use std::fmt::Debug;
use std::iter::Sum;

use num_rational::Rational64;
use num_traits::{Float, Num, Signed, ToPrimitive};

/// Field-like scalar usable as an operator matrix element.
pub trait Scalar:
    Num + Signed + Clone + Debug + PartialOrd + Sum + Send + Sync + 'static
{
    fn from_i64(value: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// `√n` when representable in this type (always for floats, only for
    /// perfect squares for rationals).
    fn sqrt_int(n: u128) -> Option<Self>;

    /// Entries at or below this magnitude are dropped when an operator is
    /// finalised. Zero for exact types.
    fn prune_threshold() -> Self;

    fn is_negligible(&self) -> bool {
        self.abs() <= Self::prune_threshold()
    }
}

/// A scalar with square roots and transcendental functions.
pub trait RealScalar: Scalar + Float {
    fn from_f64(value: f64) -> Self;
}

impl Scalar for f64 {
    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt_int(n: u128) -> Option<Self> {
        Some((n as f64).sqrt())
    }

    fn prune_threshold() -> Self {
        1e-15
    }
}

impl RealScalar for f64 {
    fn from_f64(value: f64) -> Self {
        value
    }
}

impl Scalar for f32 {
    fn from_i64(value: i64) -> Self {
        value as f32
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        (numer as f64 / denom as f64) as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn sqrt_int(n: u128) -> Option<Self> {
        Some((n as f64).sqrt() as f32)
    }

    fn prune_threshold() -> Self {
        1e-12
    }
}

impl RealScalar for f32 {
    fn from_f64(value: f64) -> Self {
        value as f32
    }
}

impl Scalar for Rational64 {
    fn from_i64(value: i64) -> Self {
        Rational64::from_integer(value)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational64::new(numer, denom)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn sqrt_int(n: u128) -> Option<Self> {
        let root = n.isqrt();
        (root * root == n)
            .then(|| i64::try_from(root).ok().map(Rational64::from_integer))
            .flatten()
    }

    fn prune_threshold() -> Self {
        Rational64::from_integer(0)
    }
}
