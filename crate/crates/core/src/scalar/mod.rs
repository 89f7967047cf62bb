//! Coefficient fields.
//!
//! Everything above this module is generic over [`Scalar`]. Two backends are
//! provided: [`Surd`], the exact field of Gaussian rationals extended by square
//! roots of positive rationals, and [`Approx`], a complex floating-point
//! backend used to cross-check verdicts.

mod approx;
mod surd;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use approx::{Approx, FloatBackend};
pub use surd::{GaussRat, Surd};

use crate::error::ScalarError;

/// A field of coefficients, closed under complex conjugation and containing
/// square roots of positive rationals.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// True when equality and zero tests are exact.
    const EXACT: bool;

    /// Short backend name, used in reports.
    const BACKEND: &'static str;

    fn from_rational(r: &BigRational) -> Self;

    fn from_gaussian(re: &BigRational, im: &BigRational) -> Self;

    fn imag_unit() -> Self;

    fn conj(&self) -> Self;

    fn inv(&self) -> Result<Self, ScalarError>;

    /// Square root of a positive rational.
    fn sqrt_rational(r: &BigRational) -> Result<Self, ScalarError>;

    /// Square root of a positive real element. The exact backend supports
    /// rational arguments only.
    fn sqrt_real(&self) -> Result<Self, ScalarError>;

    fn to_c64(&self) -> Complex64;

    /// True when the imaginary part vanishes (within tolerance for floats).
    fn is_real(&self) -> bool;

    /// Sign of a real element; `None` if the element is not real.
    fn real_sign(&self) -> Option<Ordering>;

    /// True when this value counts as a zero residual for verification:
    /// exact zero on the exact backend, below the check threshold otherwise.
    fn negligible(&self) -> bool;

    /// Serialized form.
    fn to_repr(&self) -> String;

    fn parse_repr(s: &str) -> Result<Self, ScalarError>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&BigRational::new(num.into(), den.into()))
    }

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    fn div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * rhs.inv()?)
    }

    fn scale_int(&self, n: i64) -> Self {
        self.clone() * Self::from_int(n)
    }
}

/// Rational helper: `num/den`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
