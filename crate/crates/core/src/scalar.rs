//! Scalar types the algebra machinery is generic over.
//!
//! [`Scalar`] covers everything the structural side of an algebra needs
//! (structure constants, multiplication, representation matrices, axiom
//! checks) and is implemented for `f32`, `f64` and exact `Rational64`.
//! [`Real`] adds the analytic operations (square roots, SVD) and is
//! implemented for the two float types only.

use std::fmt::{Debug, Display};

use num_rational::Rational64;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// A field element usable as a structure constant or coordinate.
pub trait Scalar:
    nalgebra::Scalar + Num + PartialOrd + std::ops::Neg<Output = Self> + Display + Debug + Send + Sync + 'static
{
    /// True for types whose arithmetic is exact.
    const EXACT: bool;

    /// Absolute value. Named to stay clear of `RealField::abs`.
    fn magnitude(&self) -> Self;

    /// Zero test against an absolute tolerance. Exact types ignore `tol`.
    fn is_negligible(&self, tol: f64) -> bool;

    fn to_f64(&self) -> f64;

    /// Nearest representable value; exact types approximate the float.
    fn from_f64_lossy(x: f64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

/// Floating-point scalars with the full analytic toolkit.
pub trait Real: Scalar + nalgebra::RealField + Copy {
    fn lit(x: f64) -> Self {
        Self::from_f64_lossy(x)
    }
}

impl<T: Scalar + nalgebra::RealField + Copy> Real for T {}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn magnitude(&self) -> Self {
        f64::abs(*self)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_f64_lossy(x: f64) -> Self {
        x
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn magnitude(&self) -> Self {
        f32::abs(*self)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        // tolerances are quoted for f64; an f32 cannot resolve below its own epsilon
        (f32::abs(*self) as f64) <= tol.max(f32::EPSILON as f64 * 8.0)
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn from_f64_lossy(x: f64) -> Self {
        x as f32
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn magnitude(&self) -> Self {
        Signed::abs(self)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_f64_lossy(x: f64) -> Self {
        Rational64::approximate_float(x).unwrap_or_else(Rational64::zero)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational64::new(num, den)
    }
}
