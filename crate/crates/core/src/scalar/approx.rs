use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Float, One, ToPrimitive, Zero};

use super::Scalar;
use crate::error::ScalarError;

/// Real float types usable as the component type of [`Approx`].
pub trait FloatBackend: Float + Send + Sync + std::fmt::Debug + std::fmt::Display + 'static {
    /// Magnitude below which a value is treated as zero inside algorithms.
    const ZERO_TOL: f64;
    /// Residual threshold for verification verdicts.
    const CHECK_TOL: f64;
    const NAME: &'static str;
}

impl FloatBackend for f64 {
    const ZERO_TOL: f64 = 1e-12;
    const CHECK_TOL: f64 = 1e-9;
    const NAME: &'static str = "float64";
}

impl FloatBackend for f32 {
    const ZERO_TOL: f64 = 1e-5;
    const CHECK_TOL: f64 = 1e-4;
    const NAME: &'static str = "float32";
}

/// Complex floating-point scalar with tolerance-based zero tests.
#[derive(Clone, Copy, Debug, Default)]
pub struct Approx<T>(pub Complex<T>);

impl<T: FloatBackend> Approx<T> {
    pub fn new(re: T, im: T) -> Self {
        Approx(Complex::new(re, im))
    }

    fn from_f64(x: f64) -> T {
        T::from(x).unwrap_or_else(T::nan)
    }
}

/// Equality within the backend's zero tolerance.
impl<T: FloatBackend> PartialEq for Approx<T> {
    fn eq(&self, other: &Self) -> bool {
        (*self - *other).is_zero()
    }
}

impl<T: FloatBackend> Add for Approx<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Approx(self.0 + rhs.0)
    }
}

impl<T: FloatBackend> Sub for Approx<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Approx(self.0 - rhs.0)
    }
}

impl<T: FloatBackend> Mul for Approx<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Approx(self.0 * rhs.0)
    }
}

impl<T: FloatBackend> Neg for Approx<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Approx(-self.0)
    }
}

impl<T: FloatBackend> Zero for Approx<T> {
    fn zero() -> Self {
        Approx(Complex::new(T::zero(), T::zero()))
    }
    fn is_zero(&self) -> bool {
        self.magnitude() < T::ZERO_TOL
    }
}

impl<T: FloatBackend> One for Approx<T> {
    fn one() -> Self {
        Approx(Complex::new(T::one(), T::zero()))
    }
}

fn rat_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl<T: FloatBackend> Scalar for Approx<T> {
    const EXACT: bool = false;
    const BACKEND: &'static str = T::NAME;

    fn from_rational(r: &BigRational) -> Self {
        Approx::new(Self::from_f64(rat_f64(r)), T::zero())
    }

    fn from_gaussian(re: &BigRational, im: &BigRational) -> Self {
        Approx::new(Self::from_f64(rat_f64(re)), Self::from_f64(rat_f64(im)))
    }

    fn imag_unit() -> Self {
        Approx::new(T::zero(), T::one())
    }

    fn conj(&self) -> Self {
        Approx(self.0.conj())
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Approx(self.0.inv()))
    }

    fn sqrt_rational(r: &BigRational) -> Result<Self, ScalarError> {
        let v = rat_f64(r);
        if !(v > 0.0) {
            return Err(ScalarError::NonPositiveRadicand(r.to_string()));
        }
        Ok(Approx::new(Self::from_f64(v.sqrt()), T::zero()))
    }

    fn sqrt_real(&self) -> Result<Self, ScalarError> {
        if self.real_sign() != Some(Ordering::Greater) {
            return Err(ScalarError::NonPositiveRadicand(self.to_repr()));
        }
        Ok(Approx::new(self.0.re.sqrt(), T::zero()))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.0.re.to_f64().unwrap_or(f64::NAN),
            self.0.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn is_real(&self) -> bool {
        self.0.im.abs().to_f64().unwrap_or(f64::NAN) < T::ZERO_TOL
    }

    fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        let re = self.0.re.to_f64().unwrap_or(f64::NAN);
        Some(if re.abs() < T::ZERO_TOL {
            Ordering::Equal
        } else if re > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        })
    }

    fn negligible(&self) -> bool {
        self.magnitude() < T::CHECK_TOL
    }

    fn to_repr(&self) -> String {
        let c = self.to_c64();
        format!("({:e}{:+e}i)", c.re, c.im)
    }

    fn parse_repr(s: &str) -> Result<Self, ScalarError> {
        let err = || ScalarError::Parse {
            input: s.to_string(),
            reason: "expected `(re+imi)` with float components".to_string(),
        };
        let t = s.trim();
        if t == "0" {
            return Ok(Self::zero());
        }
        let body = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix("i)"))
            .ok_or_else(err)?;
        let bytes = body.as_bytes();
        // the split sign is the last +/- not belonging to an exponent
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'e')
            .ok_or_else(err)?;
        let re: f64 = body[..split].parse().map_err(|_| err())?;
        let im: f64 = body[split..].parse().map_err(|_| err())?;
        Ok(Approx::new(Self::from_f64(re), Self::from_f64(im)))
    }
}
