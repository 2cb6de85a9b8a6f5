//! Power series in 1/x with exact rational coefficients.

use num_rational::BigRational;
use num_traits::Zero;

use crate::quartic_coeff;

/// A truncated power series `sum_{m=0}^{M} c_m x^{-m}`.
///
/// `coeffs[m]` is the coefficient of `x^{-m}`; the truncation order is
/// `coeffs.len() - 1`.  Arithmetic truncates to the window on which the
/// result is exact: `min` of the operand orders for `+`/`*`, one more than
/// the input order for `deriv` and `shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries1x {
    pub coeffs: Vec<BigRational>,
}

impl PowerSeries1x {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(m_max: usize) -> Self {
        Self { coeffs: vec![BigRational::zero(); m_max + 1] }
    }

    /// Truncation order: the largest m for which the coefficient is stored.
    pub fn m_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^{-m}`, zero beyond the truncation order.
    pub fn coeff(&self, m: usize) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.m_max().min(other.m_max());
        let coeffs = (0..=n).map(|m| self.coeff(m) + other.coeff(m)).collect();
        Self { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.m_max().min(other.m_max());
        let coeffs = (0..=n).map(|m| self.coeff(m) - other.coeff(m)).collect();
        Self { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.m_max().min(other.m_max());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for i in 0..=n.min(self.m_max()) {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i).min(other.m_max()) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        Self { coeffs }
    }

    pub fn scale(&self, a: &BigRational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }

    /// d/dx.  Sends `x^{-m}` to `-m x^{-m-1}`, so the result is exact to one
    /// order beyond the input.
    pub fn deriv(&self) -> Self {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (m, c) in self.coeffs.iter().enumerate() {
            coeffs[m + 1] = -BigRational::from_integer(m.into()) * c;
        }
        Self { coeffs }
    }

    /// Multiply by `x^{-k}`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + k];
        for (m, c) in self.coeffs.iter().enumerate() {
            coeffs[m + k] = c.clone();
        }
        Self { coeffs }
    }
}

/// Coefficients of the level-0 series `h0 = sum_{n>=4} c_n x^{-n}` solving
/// the normal form to all orders.  Substituting and matching powers gives
///
/// ```text
/// c_n = (n-2)^2 c_{n-2} - (1/2) sum_{i+j=n} c_i c_j - (392/625) [n=4],
/// ```
///
/// where the convolution only sees indices >= 4, so each c_n is determined by
/// strictly earlier ones.  Odd coefficients vanish.
pub fn compute_h0_series(m_max: usize) -> PowerSeries1x {
    compute_h0_series_with_quartic(m_max, &quartic_coeff())
}

/// Same recursion with the quartic forcing coefficient replaced by `q`.
/// The recursion never divides, so it is solvable for any forcing.
pub fn compute_h0_series_with_quartic(m_max: usize, q: &BigRational) -> PowerSeries1x {
    let mut c = vec![BigRational::zero(); m_max + 1];
    for n in 4..=m_max {
        let nm2 = BigRational::from_integer((n as i64 - 2).into());
        let mut v = &nm2 * &nm2 * &c[n - 2];
        let mut conv = BigRational::zero();
        for i in 4..=n.saturating_sub(4) {
            conv += &c[i] * &c[n - i];
        }
        v -= conv / BigRational::from_integer(2.into());
        if n == 4 {
            v -= q;
        }
        c[n] = v;
    }
    PowerSeries1x::new(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn leading_coefficients() {
        let h0 = compute_h0_series(14);
        assert_eq!(h0.coeff(4), rat(-392, 625));
        assert_eq!(h0.coeff(6), rat(-6272, 625));
        assert_eq!(h0.coeff(8), rat(-141196832, 390625));
        assert_eq!(h0.coeff(10), rat(-9039055872, 390625));
        assert_eq!(h0.coeff(12), rat(-565008634278144, 244140625));
        assert_eq!(h0.coeff(14), rat(-81365672232484864, 244140625));
    }

    #[test]
    fn odd_and_low_coefficients_vanish() {
        let h0 = compute_h0_series(41);
        for m in 0..4 {
            assert!(h0.coeff(m).is_zero(), "c_{m} nonzero");
        }
        for m in (5..=41).step_by(2) {
            assert!(h0.coeff(m).is_zero(), "c_{m} nonzero");
        }
    }

    #[test]
    fn residual_vanishes_identically() {
        let m = 30;
        let h = compute_h0_series(m);
        let hp = h.deriv();
        let hpp = hp.deriv();
        let mut res = hpp.add(&hp.shift(1)).sub(&h).sub(&h.mul(&h).scale(&rat(1, 2)));
        let mut force = PowerSeries1x::zero(m);
        force.coeffs[4] = rat(392, 625);
        res = res.sub(&force);
        assert_eq!(res.m_max(), m);
        assert!(res.is_zero(), "nonzero residual: {:?}", res);
    }

    #[test]
    fn perturbed_quartic_still_solves() {
        // forcing -q x^{-4} with q shifted off the standard value; the
        // recursion is division-free, so any forcing coefficient works
        let q = crate::quartic_coeff() - rat(1, 1000);
        let h = compute_h0_series_with_quartic(12, &q);
        assert_eq!(h.coeff(4), -&q);
        assert_eq!(h.coeff(6), rat(-16, 1) * &q);
        let hp = h.deriv();
        let mut force = PowerSeries1x::zero(4);
        force.coeffs[4] = q;
        let res = hp
            .deriv()
            .add(&hp.shift(1))
            .sub(&h)
            .sub(&h.mul(&h).scale(&rat(1, 2)))
            .sub(&force);
        assert!(res.is_zero());
    }
}
