//! Coefficient fields.
//!
//! Two scalar types back every structure in this crate: arbitrary-precision
//! rationals (exact mode) and `f64` (float mode). Exact mode has decidable
//! equality; float mode comparisons take an explicit absolute tolerance.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact rational scalar: reduced fraction with positive denominator.
pub type Rat = BigRational;

/// Default absolute tolerance for float-mode coefficient comparisons.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Common interface of the two coefficient fields.
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Send
    + Sync
    + 'static
{
    /// True when arithmetic is exact and equality is decidable.
    const EXACT: bool;
    /// Field tag used in serialized output.
    const FIELD_NAME: &'static str;

    fn from_int(n: i64) -> Self;
    /// Exact p/q. `q` must be nonzero.
    fn from_ratio(p: i64, q: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
}

impl Scalar for Rat {
    const EXACT: bool = true;
    const FIELD_NAME: &'static str = "rational";

    fn from_int(n: i64) -> Self {
        Rat::from_integer(n.into())
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        Rat::new(p.into(), q.into())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const FIELD_NAME: &'static str = "float64";

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        p as f64 / q as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

/// Shorthand used heavily in tests and fixtures.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}
