use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Unevaluated sum of two doubles with |lo| <= ulp(hi)/2, giving ~106 bits.
///
/// Algorithms follow Dekker's splitting and the Bailey/Hida/Li double-double
/// kernels; no FMA is assumed.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b|
    let s = a + b;
    (s, b - (s - a))
}

const SPLIT: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLIT * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

pub const PI: Dd = Dd { hi: 3.141592653589793, lo: 1.2246467991473532e-16 };
pub const TWO_PI: Dd = Dd { hi: 6.283185307179586, lo: 2.4492935982947064e-16 };
pub const FRAC_PI_2: Dd = Dd { hi: 1.5707963267948966, lo: 6.123233995736766e-17 };
pub const FRAC_PI_4: Dd = Dd { hi: 0.7853981633974483, lo: 3.061616997868383e-17 };
pub const LN_2: Dd = Dd { hi: 0.6931471805599453, lo: 2.3190468138462996e-17 };
pub const LN_10: Dd = Dd { hi: 2.302585092994046, lo: -2.1707562233822494e-16 };
pub const E: Dd = Dd { hi: 2.718281828459045, lo: 1.4456468917292502e-16 };

/// Unit roundoff of the format, 2^-104.
pub const EPS: f64 = 4.93038065763132e-32;

const INV_FACT: [Dd; 31] = [
    Dd { hi: 0.5, lo: 0.0 },
    Dd { hi: 0.16666666666666666, lo: 9.25185853854297e-18 },
    Dd { hi: 0.041666666666666664, lo: 2.3129646346357427e-18 },
    Dd { hi: 0.008333333333333333, lo: 1.1564823173178714e-19 },
    Dd { hi: 0.001388888888888889, lo: -5.300543954373577e-20 },
    Dd { hi: 0.0001984126984126984, lo: 1.7209558293420705e-22 },
    Dd { hi: 2.48015873015873e-05, lo: 2.1511947866775882e-23 },
    Dd { hi: 2.7557319223985893e-06, lo: -1.858393274046472e-22 },
    Dd { hi: 2.755731922398589e-07, lo: 2.3767714622250297e-23 },
    Dd { hi: 2.505210838544172e-08, lo: -1.448814070935912e-24 },
    Dd { hi: 2.08767569878681e-09, lo: -1.20734505911326e-25 },
    Dd { hi: 1.6059043836821613e-10, lo: 1.2585294588752098e-26 },
    Dd { hi: 1.1470745597729725e-11, lo: 2.0655512752830745e-28 },
    Dd { hi: 7.647163731819816e-13, lo: 7.03872877733453e-30 },
    Dd { hi: 4.779477332387385e-14, lo: 4.399205485834081e-31 },
    Dd { hi: 2.8114572543455206e-15, lo: 1.6508842730861433e-31 },
    Dd { hi: 1.5619206968586225e-16, lo: 1.1910679660273754e-32 },
    Dd { hi: 8.22063524662433e-18, lo: 2.2141894119604265e-34 },
    Dd { hi: 4.110317623312165e-19, lo: 1.4412973378659527e-36 },
    Dd { hi: 1.9572941063391263e-20, lo: -1.3643503830087908e-36 },
    Dd { hi: 8.896791392450574e-22, lo: -7.911402614872376e-38 },
    Dd { hi: 3.868170170630684e-23, lo: -8.843177655482344e-40 },
    Dd { hi: 1.6117375710961184e-24, lo: -3.6846573564509766e-41 },
    Dd { hi: 6.446950284384474e-26, lo: -1.9330404233703465e-42 },
    Dd { hi: 2.4795962632247976e-27, lo: -1.2953730964765229e-43 },
    Dd { hi: 9.183689863795546e-29, lo: 1.4303150396787322e-45 },
    Dd { hi: 3.279889237069838e-30, lo: 1.5117542744029879e-46 },
    Dd { hi: 1.1309962886447716e-31, lo: 1.0498015412959506e-47 },
    Dd { hi: 3.7699876288159054e-33, lo: 2.5870347832750324e-49 },
    Dd { hi: 1.216125041553518e-34, lo: 5.586290567888806e-51 },
    Dd { hi: 3.8003907548547434e-36, lo: 1.7457158024652518e-52 },
];

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    #[inline]
    pub fn from_i64(v: i64) -> Dd {
        // i64 may carry more than 53 bits; split exactly
        let hi = v as f64;
        let lo = (v - hi as i64) as f64;
        Dd::new(hi, lo)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) { -self } else { self }
    }

    /// Exact scaling by a power of two.
    #[inline]
    pub fn mul_pwr2(self, p: f64) -> Dd {
        Dd { hi: self.hi * p, lo: self.lo * p }
    }

    #[inline]
    pub fn ldexp(self, n: i32) -> Dd {
        Dd { hi: libm_ldexp(self.hi, n), lo: libm_ldexp(self.lo, n) }
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        let (p1, mut p2) = two_prod(self.hi, self.hi);
        p2 += 2.0 * self.hi * self.lo;
        p2 += self.lo * self.lo;
        let (s, e) = quick_two_sum(p1, p2);
        Dd { hi: s, lo: e }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn floor(self) -> Dd {
        let f = self.hi.floor();
        if f == self.hi {
            let (s, e) = quick_two_sum(f, self.lo.floor());
            Dd { hi: s, lo: e }
        } else {
            Dd { hi: f, lo: 0.0 }
        }
    }

    /// Round to nearest integer, ties away from half-way hi values resolved by lo.
    pub fn nint(self) -> Dd {
        let f = self.hi.round();
        if f == self.hi {
            let (s, e) = quick_two_sum(f, self.lo.round());
            Dd { hi: s, lo: e }
        } else if (f - self.hi).abs() == 0.5 && self.lo < 0.0 {
            Dd { hi: f - 1.0, lo: 0.0 }
        } else {
            Dd { hi: f, lo: 0.0 }
        }
    }

    pub fn sqrt(self) -> Dd {
        // Karp: one Newton correction on the f64 root reaches full precision
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0, "sqrt of negative dd");
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let axd = Dd::from_f64(ax);
        let err = (self - axd.sqr()).hi * (x * 0.5);
        axd + Dd::from_f64(err)
    }

    pub fn exp(self) -> Dd {
        // scale r = (x - m ln2)/512, expm1 Taylor, square back up 9 times
        if self.hi <= -709.0 {
            return Dd::ZERO;
        }
        if self.hi >= 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        let m = (self.hi / LN_2.hi + 0.5).floor();
        let r = (self - LN_2 * Dd::from_f64(m)).mul_pwr2(1.0 / 512.0);
        let mut p = r.sqr();
        let mut s = r + p.mul_pwr2(0.5);
        p = p * r;
        let mut t = p * INV_FACT[1];
        let thresh = EPS / 512.0;
        let mut i = 2;
        loop {
            s = s + t;
            p = p * r;
            t = p * INV_FACT[i];
            if t.hi.abs() <= thresh || i >= 8 {
                break;
            }
            i += 1;
        }
        s = s + t;
        for _ in 0..9 {
            s = s.mul_pwr2(2.0) + s.sqr();
        }
        s = s + Dd::ONE;
        s.ldexp(m as i32)
    }

    pub fn ln(self) -> Dd {
        // Newton on exp: doubles the 16 digits of the f64 seed; second pass for margin
        debug_assert!(self.hi > 0.0, "ln of non-positive dd");
        let mut x = Dd::from_f64(self.hi.ln());
        x = x + self * (-x).exp() - Dd::ONE;
        x = x + self * (-x).exp() - Dd::ONE;
        x
    }

    pub fn exp_m1(self) -> Dd {
        // accurate near 0; falls back to exp elsewhere
        if self.hi.abs() > 0.3 {
            return self.exp() - Dd::ONE;
        }
        let r = self.mul_pwr2(1.0 / 512.0);
        let mut p = r.sqr();
        let mut s = r + p.mul_pwr2(0.5);
        p = p * r;
        let mut t = p * INV_FACT[1];
        let mut i = 2;
        loop {
            s = s + t;
            p = p * r;
            t = p * INV_FACT[i];
            if t.hi.abs() <= EPS / 512.0 || i >= 10 {
                break;
            }
            i += 1;
        }
        s = s + t;
        for _ in 0..9 {
            s = s.mul_pwr2(2.0) + s.sqr();
        }
        s
    }

    fn sin_taylor(self) -> Dd {
        // |self| <= pi/4
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        let x2 = -self.sqr();
        let mut s = self;
        let mut p = self;
        let mut i = 1usize; // INV_FACT[1] = 1/3!
        loop {
            p = p * x2;
            let t = p * INV_FACT[i];
            s = s + t;
            if t.hi.abs() <= EPS || i + 2 >= INV_FACT.len() {
                break;
            }
            i += 2;
        }
        s
    }

    fn cos_taylor(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        let x2 = -self.sqr();
        let mut s = Dd::ONE + x2.mul_pwr2(0.5);
        let mut p = x2;
        let mut i = 2usize; // INV_FACT[2] = 1/4!
        loop {
            p = p * x2;
            let t = p * INV_FACT[i];
            s = s + t;
            if t.hi.abs() <= EPS || i + 2 >= INV_FACT.len() {
                break;
            }
            i += 2;
        }
        s
    }

    pub fn sin_cos(self) -> (Dd, Dd) {
        // reduce modulo pi/2 with exact j*(pi/2) products and a third word of
        // pi/2, so results near zeros of sin/cos keep full relative accuracy
        const FRAC_PI_2_T3: f64 = -1.4973849048591698e-33;
        let j = (self.hi / FRAC_PI_2.hi).round();
        let (p1, e1) = two_prod(j, FRAC_PI_2.hi);
        let (p2, e2) = two_prod(j, FRAC_PI_2.lo);
        let r = self - Dd::new(p1, e1) - Dd::new(p2, e2) - Dd::from_f64(FRAC_PI_2_T3 * j);
        let q = (j as i64).rem_euclid(4);
        let (s, c) = (r.sin_taylor(), r.cos_taylor());
        match q {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    pub fn atan2(y: Dd, x: Dd) -> Dd {
        // Newton on the unit circle from the f64 seed
        if x.hi == 0.0 && x.lo == 0.0 && y.hi == 0.0 && y.lo == 0.0 {
            return Dd::ZERO;
        }
        let r = (x.sqr() + y.sqr()).sqrt();
        let xn = x / r;
        let yn = y / r;
        let mut z = Dd::from_f64(y.to_f64().atan2(x.to_f64()));
        for _ in 0..2 {
            let (sz, cz) = z.sin_cos();
            if xn.hi.abs() > yn.hi.abs() {
                z = z + (yn - sz) / cz;
            } else {
                z = z - (xn - cz) / sz;
            }
        }
        z
    }

    pub fn atan(self) -> Dd {
        Dd::atan2(self, Dd::ONE)
    }

    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = if n < 0 { self.recip() } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    pub fn powf(self, p: Dd) -> Dd {
        (p * self.ln()).exp()
    }

    /// x^(n/2) for integer n, via powi and sqrt; x > 0.
    pub fn pow_half_int(self, n: i32) -> Dd {
        if n % 2 == 0 {
            self.powi(n / 2)
        } else {
            self.powi(n.div_euclid(2)) * self.sqrt().powi(n.rem_euclid(2))
        }
    }

    pub fn max(self, other: Dd) -> Dd {
        if self >= other { self } else { other }
    }

    pub fn min(self, other: Dd) -> Dd {
        if self <= other { self } else { other }
    }

    /// ~31 significant digits in scientific notation.
    pub fn to_sci(self, ndigits: usize) -> String {
        if !self.is_finite() {
            return format!("{}", self.hi);
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return "0.0".to_string();
        }
        let neg = self.hi < 0.0;
        let mut r = self.abs();
        let mut e = r.hi.log10().floor() as i32;
        // normalize into [1, 10); powi on 10 keeps ~1 ulp
        r = r / Dd::from_f64(10.0).powi(e);
        if r.hi >= 10.0 {
            r = r / Dd::from_f64(10.0);
            e += 1;
        } else if r.hi < 1.0 {
            r = r * Dd::from_f64(10.0);
            e -= 1;
        }
        let n = ndigits.clamp(1, 34);
        // two guard digits absorb the borrow pass and the final rounding
        let total = n + 2;
        let mut digits = Vec::with_capacity(total + 1);
        for _ in 0..total {
            let d = r.hi.trunc();
            digits.push(d as i32);
            r = (r - Dd::from_f64(d)) * Dd::from_f64(10.0);
        }
        // extraction drifts out of 0..=9 when the dd tail is negative
        // (e.g. 1 - 2^{-80} yields digits 1, 0, ..., 0, -1); fix by borrowing
        for i in (1..total).rev() {
            while digits[i] < 0 {
                digits[i] += 10;
                digits[i - 1] -= 1;
            }
            while digits[i] > 9 {
                digits[i] -= 10;
                digits[i - 1] += 1;
            }
        }
        while digits[0] >= 10 {
            let d0 = digits[0];
            digits[0] = d0 % 10;
            digits.insert(0, d0 / 10);
            digits.pop();
            e += 1;
        }
        while digits[0] == 0 && digits.iter().any(|&d| d != 0) {
            digits.remove(0);
            digits.push(0);
            e -= 1;
        }
        // round on the first dropped digit, propagating carries
        if digits[n] >= 5 {
            let mut i = n;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    e += 1;
                    break;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < 10 {
                    break;
                }
                digits[i] = 0;
            }
        }
        digits.truncate(n);
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push(char::from_digit(digits[0] as u32, 10).unwrap());
        out.push('.');
        for &d in &digits[1..] {
            out.push(char::from_digit(d as u32, 10).unwrap());
        }
        out.push('e');
        out.push_str(&e.to_string());
        out
    }
}

#[inline]
fn libm_ldexp(x: f64, n: i32) -> f64 {
    // powi of 2 is exact over the relevant range; avoids pulling in libm
    if x == 0.0 {
        return x;
    }
    x * f64::powi(2.0, n)
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (s1, s2) = quick_two_sum(s1, s2 + t2);
        Dd { hi: s1, lo: s2 }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let (s1, s2) = quick_two_sum(s1, s2 + self.lo);
        Dd { hi: s1, lo: s2 }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: f64) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p1, mut p2) = two_prod(self.hi, b.hi);
        p2 += self.hi * b.lo + self.lo * b.hi;
        let (s, e) = quick_two_sum(p1, p2);
        Dd { hi: s, lo: e }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: f64) -> Dd {
        let (p1, mut p2) = two_prod(self.hi, b);
        p2 += self.lo * b;
        let (s, e) = quick_two_sum(p1, p2);
        Dd { hi: s, lo: e }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let mut r = self - b * q1;
        let q2 = r.hi / b.hi;
        r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, b: f64) -> Dd {
        self / Dd::from_f64(b)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, b: Dd) {
        *self = *self + b;
    }
}
impl SubAssign for Dd {
    fn sub_assign(&mut self, b: Dd) {
        *self = *self - b;
    }
}
impl MulAssign for Dd {
    fn mul_assign(&mut self, b: Dd) {
        *self = *self * b;
    }
}
impl DivAssign for Dd {
    fn div_assign(&mut self, b: Dd) {
        *self = *self / b;
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl From<f64> for Dd {
    fn from(v: f64) -> Dd {
        Dd::from_f64(v)
    }
}

impl fmt::Debug for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dd({:e}, {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(31))
    }
}
