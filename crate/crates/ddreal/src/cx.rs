use crate::real::{Real, Scalar};
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Complex number over any `Real`; principal branches throughout.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct Cx<R> {
    pub re: R,
    pub im: R,
}

impl<R: Real> Cx<R> {
    #[inline]
    pub fn new(re: R, im: R) -> Cx<R> {
        Cx { re, im }
    }

    #[inline]
    pub fn from_real(re: R) -> Cx<R> {
        Cx { re, im: R::zero() }
    }

    pub fn i() -> Cx<R> {
        Cx { re: R::zero(), im: R::one() }
    }

    #[inline]
    pub fn conj(self) -> Cx<R> {
        Cx { re: self.re, im: -self.im }
    }

    #[inline]
    pub fn abs2(self) -> R {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> R {
        self.abs2().sqrt()
    }

    pub fn arg(self) -> R {
        R::atan2(self.im, self.re)
    }

    pub fn exp(self) -> Cx<R> {
        let m = self.re.exp();
        let (s, c) = self.im.sin_cos();
        Cx { re: m * c, im: m * s }
    }

    pub fn ln(self) -> Cx<R> {
        Cx { re: self.abs().ln(), im: self.arg() }
    }

    pub fn sqrt(self) -> Cx<R> {
        let zero = R::zero();
        if self.im == zero && self.re >= zero {
            return Cx { re: self.re.sqrt(), im: zero };
        }
        let r = self.abs();
        let half = R::from_ratio(1, 2);
        let u = ((r + self.re.abs()) * half).sqrt();
        if self.re >= zero {
            let v = self.im * half / u;
            Cx { re: u, im: v }
        } else {
            let v = self.im.abs() * half / u;
            let sgn = if self.im >= zero { u } else { -u };
            Cx { re: v, im: sgn }
        }
    }

    /// Principal z^p for real p.
    pub fn powf_real(self, p: R) -> Cx<R> {
        (self.ln() * Cx::from_real(p)).exp()
    }

    pub fn powi(self, n: i32) -> Cx<R> {
        if n == 0 {
            return Cx::from_real(R::one());
        }
        let mut base = if n < 0 { Cx::from_real(R::one()) / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Cx::from_real(R::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(self, r: R) -> Cx<R> {
        Cx { re: self.re * r, im: self.im * r }
    }
}

impl<R: Real> Add for Cx<R> {
    type Output = Cx<R>;
    #[inline]
    fn add(self, b: Cx<R>) -> Cx<R> {
        Cx { re: self.re + b.re, im: self.im + b.im }
    }
}

impl<R: Real> Sub for Cx<R> {
    type Output = Cx<R>;
    #[inline]
    fn sub(self, b: Cx<R>) -> Cx<R> {
        Cx { re: self.re - b.re, im: self.im - b.im }
    }
}

impl<R: Real> Neg for Cx<R> {
    type Output = Cx<R>;
    #[inline]
    fn neg(self) -> Cx<R> {
        Cx { re: -self.re, im: -self.im }
    }
}

impl<R: Real> Mul for Cx<R> {
    type Output = Cx<R>;
    #[inline]
    fn mul(self, b: Cx<R>) -> Cx<R> {
        Cx {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl<R: Real> Div for Cx<R> {
    type Output = Cx<R>;
    #[inline]
    fn div(self, b: Cx<R>) -> Cx<R> {
        let d = b.abs2();
        let n = self * b.conj();
        Cx { re: n.re / d, im: n.im / d }
    }
}

impl<R: Real> AddAssign for Cx<R> {
    fn add_assign(&mut self, b: Cx<R>) {
        *self = *self + b;
    }
}
impl<R: Real> SubAssign for Cx<R> {
    fn sub_assign(&mut self, b: Cx<R>) {
        *self = *self - b;
    }
}
impl<R: Real> MulAssign for Cx<R> {
    fn mul_assign(&mut self, b: Cx<R>) {
        *self = *self * b;
    }
}
impl<R: Real> DivAssign for Cx<R> {
    fn div_assign(&mut self, b: Cx<R>) {
        *self = *self / b;
    }
}

impl<R: Real> Scalar for Cx<R> {
    type Re = R;

    fn from_f64(v: f64) -> Cx<R> {
        Cx::from_real(R::from_f64(v))
    }
    fn from_i64(v: i64) -> Cx<R> {
        Cx::from_real(R::from_i64(v))
    }
    fn re_part(self) -> R {
        self.re
    }
    fn norm1(self) -> f64 {
        self.re.norm1() + self.im.norm1()
    }
    fn modulus(self) -> R {
        self.abs()
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn mul_pwr2(self, p: f64) -> Cx<R> {
        Cx { re: self.re.mul_pwr2(p), im: self.im.mul_pwr2(p) }
    }
}

impl<R: Real> fmt::Debug for Cx<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.to_f64() >= 0.0 {
            write!(f, "{:?}+{:?}i", self.re, self.im)
        } else {
            write!(f, "{:?}{:?}i", self.re, self.im)
        }
    }
}
