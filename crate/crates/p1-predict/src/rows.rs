//! Least-term evaluation of transseries rows.
//!
//! A row `T_k(x) = sum_m c_{km} x^{-m}` is divergent; its optimal truncation
//! cuts at the least nonzero term at the evaluation point, and that term's
//! size is the honest accuracy estimate.  For complex x the term sizes are
//! measured with |x|.

use ddreal::{CDd, Cx, Dd, Scalar};

#[derive(Debug, Clone, Copy)]
pub struct RowEval {
    pub val: Dd,
    pub der: Dd,
    pub m_star: usize,
    /// Size of the least kept term: the truncation ambiguity.
    pub least: f64,
}

fn m_star(row: &[Dd], xa: f64) -> Option<(usize, f64)> {
    let mut best = None;
    let mut least = f64::INFINITY;
    for (m, &cm) in row.iter().enumerate() {
        let a = cm.abs().to_f64() * xa.powi(-(m as i32));
        if a > 0.0 && a < least {
            least = a;
            best = Some(m);
        }
    }
    best.map(|m| (m, least))
}

pub fn row_opt(row: &[Dd], x: Dd) -> RowEval {
    let Some((ms, least)) = m_star(row, x.to_f64()) else {
        return RowEval { val: Dd::ZERO, der: Dd::ZERO, m_star: 0, least: 0.0 };
    };
    let xinv = x.recip();
    let mut val = Dd::ZERO;
    let mut der = Dd::ZERO;
    let mut xpow = Dd::ONE;
    for (m, &cm) in row.iter().enumerate().take(ms + 1) {
        val += cm * xpow;
        der += cm * xpow * xinv * Dd::from_i64(-(m as i64));
        xpow *= xinv;
    }
    RowEval { val, der, m_star: ms, least }
}

/// Complex-argument variant; returns (value, derivative).
pub fn row_opt_cx(row: &[Dd], x: CDd) -> (CDd, CDd) {
    let Some((ms, _)) = m_star(row, x.abs().to_f64()) else {
        return (CDd::zero(), CDd::zero());
    };
    let xinv = Cx::from_real(Dd::ONE) / x;
    let mut val = CDd::zero();
    let mut der = CDd::zero();
    let mut xpow = Cx::from_real(Dd::ONE);
    for (m, &cm) in row.iter().enumerate().take(ms + 1) {
        let c = Cx::from_real(cm);
        val += c * xpow;
        der += c * xpow * xinv * Cx::from_real(Dd::from_i64(-(m as i64)));
        xpow *= xinv;
    }
    (val, der)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncates_at_the_least_nonzero_term() {
        // terms 1, 2/x, 9/x^2 at x = 4: sizes 1, 0.5, 0.5625 -> m* = 1
        let row = vec![Dd::ONE, Dd::from_i64(2), Dd::from_i64(9)];
        let r = row_opt(&row, Dd::from_f64(4.0));
        assert_eq!(r.m_star, 1);
        assert!((r.val - Dd::from_f64(1.5)).abs().to_f64() < 1e-30);
        assert!((r.der - Dd::from_f64(-0.125)).abs().to_f64() < 1e-30);
        assert!((r.least - 0.5).abs() < 1e-15);
    }

    #[test]
    fn skips_zero_coefficients() {
        let row = vec![Dd::ZERO, Dd::ZERO, Dd::from_f64(3.0), Dd::ZERO, Dd::from_f64(1e6)];
        let r = row_opt(&row, Dd::from_f64(10.0));
        assert_eq!(r.m_star, 2);
        assert!((r.val - Dd::from_ratio(3, 100)).abs().to_f64() < 1e-30);
    }

    #[test]
    fn complex_variant_matches_real_axis() {
        let row = vec![Dd::ONE, Dd::from_f64(-0.125), Dd::from_f64(0.0703125)];
        let x = Dd::from_f64(17.0);
        let r = row_opt(&row, x);
        let (v, d) = row_opt_cx(&row, Cx::from_real(x));
        assert!((v.re - r.val).abs().to_f64() < 1e-31);
        assert!((d.re - r.der).abs().to_f64() < 1e-31);
        assert_eq!(v.im.to_f64(), 0.0);
    }
}
