use crate::dd::{Dd, EPS};
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Field scalar for the ODE kernels: real or complex, f64 or double-double.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    type Re: Real;

    fn from_f64(v: f64) -> Self;
    fn from_i64(v: i64) -> Self;
    /// Exact rational constant to working precision (f64 literals would not be).
    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }
    fn zero() -> Self {
        Self::from_i64(0)
    }
    fn one() -> Self {
        Self::from_i64(1)
    }
    fn re_part(self) -> Self::Re;
    /// Cheap magnitude estimate (1-norm for complex); step control only.
    fn norm1(self) -> f64;
    /// True modulus |self|.
    fn modulus(self) -> Self::Re;
    fn is_finite(self) -> bool;
    fn mul_pwr2(self, p: f64) -> Self;
}

pub trait Real: Scalar<Re = Self> + PartialOrd {
    fn sqrt(self) -> Self;
    fn powf(self, e: Self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn atan2(y: Self, x: Self) -> Self;
    fn abs(self) -> Self;
    fn to_f64(self) -> f64;
    fn powi(self, n: i32) -> Self;
    fn pow_half_int(self, n: i32) -> Self;
    fn floor(self) -> Self;
    fn maxv(self, o: Self) -> Self;
    fn minv(self, o: Self) -> Self;
    fn eps() -> f64;
}

impl Scalar for f64 {
    type Re = f64;

    fn from_f64(v: f64) -> f64 {
        v
    }
    fn from_i64(v: i64) -> f64 {
        v as f64
    }
    fn re_part(self) -> f64 {
        self
    }
    fn norm1(self) -> f64 {
        self.abs()
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn mul_pwr2(self, p: f64) -> f64 {
        self * p
    }
}

impl Real for f64 {
    fn sqrt(self) -> f64 {
        f64::sqrt(self)
    }
    fn powf(self, e: f64) -> f64 {
        f64::powf(self, e)
    }
    fn exp(self) -> f64 {
        f64::exp(self)
    }
    fn ln(self) -> f64 {
        f64::ln(self)
    }
    fn sin_cos(self) -> (f64, f64) {
        f64::sin_cos(self)
    }
    fn atan2(y: f64, x: f64) -> f64 {
        f64::atan2(y, x)
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn powi(self, n: i32) -> f64 {
        f64::powi(self, n)
    }
    fn pow_half_int(self, n: i32) -> f64 {
        self.powf(n as f64 / 2.0)
    }
    fn floor(self) -> f64 {
        f64::floor(self)
    }
    fn maxv(self, o: f64) -> f64 {
        f64::max(self, o)
    }
    fn minv(self, o: f64) -> f64 {
        f64::min(self, o)
    }
    fn eps() -> f64 {
        f64::EPSILON
    }
}

impl Scalar for Dd {
    type Re = Dd;

    fn from_f64(v: f64) -> Dd {
        Dd::from_f64(v)
    }
    fn from_i64(v: i64) -> Dd {
        Dd::from_i64(v)
    }
    fn re_part(self) -> Dd {
        self
    }
    fn norm1(self) -> f64 {
        self.hi.abs()
    }
    fn modulus(self) -> Dd {
        Dd::abs(self)
    }
    fn is_finite(self) -> bool {
        Dd::is_finite(self)
    }
    fn mul_pwr2(self, p: f64) -> Dd {
        Dd::mul_pwr2(self, p)
    }
}

impl Real for Dd {
    fn sqrt(self) -> Dd {
        Dd::sqrt(self)
    }
    fn powf(self, e: Dd) -> Dd {
        Dd::powf(self, e)
    }
    fn exp(self) -> Dd {
        Dd::exp(self)
    }
    fn ln(self) -> Dd {
        Dd::ln(self)
    }
    fn sin_cos(self) -> (Dd, Dd) {
        Dd::sin_cos(self)
    }
    fn atan2(y: Dd, x: Dd) -> Dd {
        Dd::atan2(y, x)
    }
    fn abs(self) -> Dd {
        Dd::abs(self)
    }
    fn to_f64(self) -> f64 {
        Dd::to_f64(self)
    }
    fn powi(self, n: i32) -> Dd {
        Dd::powi(self, n)
    }
    fn pow_half_int(self, n: i32) -> Dd {
        Dd::pow_half_int(self, n)
    }
    fn floor(self) -> Dd {
        Dd::floor(self)
    }
    fn maxv(self, o: Dd) -> Dd {
        Dd::max(self, o)
    }
    fn minv(self, o: Dd) -> Dd {
        Dd::min(self, o)
    }
    fn eps() -> f64 {
        EPS
    }
}
