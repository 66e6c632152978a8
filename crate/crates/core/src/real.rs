//! Scalar abstraction shared by the double-precision and arbitrary-precision paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::ops::{Abs, SquareRoot};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

/// Binary floating point with a fixed significand length chosen at construction.
pub type Big = FBig<HalfEven, 2>;

/// Operations needed by the elliptic kernels, the seed generators and the recurrence sweep.
pub trait Real:
    Clone
    + Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64, bits: usize) -> Self;
    fn from_i64(x: i64, bits: usize) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn pi(bits: usize) -> Self;
    /// Significand length in bits.
    fn bits(&self) -> usize;
    /// 2^-e at the given precision.
    fn pow2_neg(e: usize, bits: usize) -> Self;
    /// Base-2 exponent such that 2^(e-1) <= |x| < 2^e; `None` for zero.
    fn log2_magnitude(&self) -> Option<i64>;
    /// Rounds or extends to the given precision.
    fn with_bits(&self, bits: usize) -> Self;

    /// a*b - c*d.
    fn diff_of_products(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a.clone() * b.clone() - c.clone() * d.clone()
    }

    fn zero(bits: usize) -> Self {
        Self::from_i64(0, bits)
    }

    fn one(bits: usize) -> Self {
        Self::from_i64(1, bits)
    }
}

impl Real for f64 {
    /// Kahan's fused evaluation, accurate to a few ulps of the result.
    fn diff_of_products(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let cd = c * d;
        let err = c.mul_add(*d, -cd);
        a.mul_add(*b, -cd) - err
    }

    fn from_f64(x: f64, _bits: usize) -> Self {
        x
    }

    fn from_i64(x: i64, _bits: usize) -> Self {
        x as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn pi(_bits: usize) -> Self {
        std::f64::consts::PI
    }

    fn bits(&self) -> usize {
        f64::MANTISSA_DIGITS as usize
    }

    fn pow2_neg(e: usize, _bits: usize) -> Self {
        (2.0f64).powi(-(e.min(1074) as i32))
    }

    fn with_bits(&self, _bits: usize) -> Self {
        *self
    }

    fn log2_magnitude(&self) -> Option<i64> {
        if *self == 0.0 || !self.is_finite() {
            return None;
        }
        Some(self.abs().log2().floor() as i64 + 1)
    }
}

impl Real for Big {
    fn from_f64(x: f64, bits: usize) -> Self {
        Big::try_from(x)
            .expect("finite f64")
            .with_precision(bits)
            .value()
    }

    fn from_i64(x: i64, bits: usize) -> Self {
        Big::from(x).with_precision(bits).value()
    }

    fn to_f64(&self) -> f64 {
        FBig::to_f64(self).value()
    }

    fn sqrt(&self) -> Self {
        SquareRoot::sqrt(self)
    }

    fn abs(&self) -> Self {
        Abs::abs(self.clone())
    }

    fn pi(bits: usize) -> Self {
        Big::pi(bits)
    }

    fn bits(&self) -> usize {
        self.precision()
    }

    fn pow2_neg(e: usize, bits: usize) -> Self {
        Big::from_parts(1.into(), -(e as isize)).with_precision(bits).value()
    }

    fn with_bits(&self, bits: usize) -> Self {
        self.clone().with_precision(bits).value()
    }

    fn log2_magnitude(&self) -> Option<i64> {
        let repr = self.repr();
        if repr.is_zero() {
            return None;
        }
        Some(repr.exponent() as i64 + repr.digits() as i64)
    }
}
