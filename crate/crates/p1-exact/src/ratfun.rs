//! Rational functions of the matching variable s, kept in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::Poly;

/// A quotient of polynomials with the representation pinned down: the
/// denominator is monic and shares no factor with the numerator.  Two equal
/// rational functions therefore compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFnS {
    num: Poly,
    den: Poly,
}

impl RationalFnS {
    /// Reduce `num/den` to canonical form.  Panics on zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self { num: Poly::zero(), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.divrem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.divrem(&g);
        debug_assert!(r2.is_zero());
        let (den, lead) = den.into_monic();
        let num = num.scale(&lead.recip());
        Self { num, den }
    }

    pub fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, a: &BigRational) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(a), den: self.den.clone() }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    /// Evaluate; `None` at a pole.
    pub fn eval(&self, s: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(s);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(s) / d)
    }

    /// Multiplicity of `s0` as a pole (0 if regular there).
    pub fn pole_order(&self, s0: &BigRational) -> usize {
        let lin = Poly::new(vec![-s0.clone(), BigRational::one()]);
        let mut d = self.den.clone();
        let mut ord = 0;
        loop {
            let (q, r) = d.divrem(&lin);
            if !r.is_zero() {
                return ord;
            }
            ord += 1;
            d = q;
        }
    }

    /// Coefficients of `s^0, s^{-1}, s^{-2}, ...` in the expansion as
    /// `s -> infinity`.  Requires `deg num <= deg den`.
    pub fn expansion_at_infinity(&self, n_terms: usize) -> Vec<BigRational> {
        if self.num.is_zero() {
            return vec![BigRational::zero(); n_terms];
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        assert!(dn <= dd, "unbounded at infinity");
        // in u = 1/s:  num/den = u^{dd-dn} * N(u)/D(u) with the coefficient
        // lists reversed; D(0) = 1 because the denominator is monic
        let nrev: Vec<BigRational> = (0..=dn).map(|i| self.num.coeff(dn - i)).collect();
        let drev: Vec<BigRational> = (0..=dd).map(|i| self.den.coeff(dd - i)).collect();
        let shift = dd - dn;
        let mut series = vec![BigRational::zero(); n_terms];
        let mut s_inner = vec![BigRational::zero(); n_terms];
        for t in 0..n_terms {
            let mut v = nrev.get(t).cloned().unwrap_or_else(BigRational::zero);
            for j in 1..=t.min(dd) {
                v -= &drev[j] * &s_inner[t - j];
            }
            s_inner[t] = v;
        }
        for t in 0..n_terms.saturating_sub(shift) {
            series[t + shift] = s_inner[t].clone();
        }
        series
    }
}

impl Add for &RationalFnS {
    type Output = RationalFnS;
    fn add(self, rhs: &RationalFnS) -> RationalFnS {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFnS::new(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFnS {
    type Output = RationalFnS;
    fn sub(self, rhs: &RationalFnS) -> RationalFnS {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFnS::new(num, &self.den * &rhs.den)
    }
}

impl Mul for &RationalFnS {
    type Output = RationalFnS;
    fn mul(self, rhs: &RationalFnS) -> RationalFnS {
        RationalFnS::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFnS {
    type Output = RationalFnS;
    fn neg(self) -> RationalFnS {
        RationalFnS { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFnS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
