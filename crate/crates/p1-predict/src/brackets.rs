//! Closed-form pieces of the pole prediction: the existence threshold C_0,
//! the bracket roots, the leading asymptotic location, and the complex pole
//! array w + (1/2) ln w = ln(C/12) + 2 pi i k.

use ddreal::{CDd, Cx, Dd, Scalar};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BracketError {
    #[error("threshold A = {a} must exceed 9/4")]
    ADomain { a: f64 },
}

/// Interior minimizer of sqrt(t) e^t / (1 - 9/(4t)): the positive root of
/// 4t^2 - 7t - 27/2 = 0.
pub fn t_star() -> Dd {
    (Dd::from_i64(7) + Dd::from_i64(265).sqrt()).mul_pwr2(0.125)
}

fn objective(t: Dd) -> Dd {
    // 12 sqrt(t) e^t / (1 - 9/(4t))
    Dd::from_i64(12) * t.sqrt() * t.exp() / (Dd::ONE - Dd::from_i64(9) / t.mul_pwr2(4.0))
}

/// C_0(A) = 12 min_{t >= A} sqrt(t) e^t (1 - 9/(4t))^{-1}.  The objective
/// falls to a single interior minimum at t* and grows beyond, so the
/// minimizer is t* when A < t* and A itself otherwise.
pub fn compute_c0(a: f64) -> Result<Dd, BracketError> {
    if a <= 2.25 {
        return Err(BracketError::ADomain { a });
    }
    let ts = t_star();
    let t = if Dd::from_f64(a) < ts {
        ts
    } else {
        Dd::from_f64(a)
    };
    Ok(objective(t))
}

/// Root of x + (1/2) ln x = ln(c/12): the upper bracket end.
pub fn x_hi(c: f64) -> Dd {
    let l = (Dd::from_f64(c) / Dd::from_i64(12)).ln();
    // x + ln(x)/2 is increasing on (0, oo) with full range; Newton from a
    // safeguarded start converges for every c > 0
    let mut x = if l.to_f64() > 1.0 {
        l - l.ln().mul_pwr2(0.5)
    } else {
        Dd::from_f64(0.5)
    };
    for _ in 0..60 {
        let f = x + x.ln().mul_pwr2(0.5) - l;
        let df = Dd::ONE + x.mul_pwr2(2.0).recip();
        let step = f / df;
        let next = (x - step).max(x.mul_pwr2(0.125));
        if ((next - x) / next).abs().to_f64() < 1e-30 {
            return next;
        }
        x = next;
    }
    x
}

/// Root of x + (1/2) ln x - ln(1 - 9/(4x)) = ln(c/12) on the branch
/// x >= t*: the lower bracket end.  None when c < C_0(t*), where the branch
/// never reaches down to ln(c/12).
pub fn x_lo(c: f64) -> Option<Dd> {
    let ts = t_star();
    let c0 = objective(ts);
    let cd = Dd::from_f64(c);
    if cd < c0 {
        return None;
    }
    let l = (cd / Dd::from_i64(12)).ln();
    let f = |x: Dd| {
        x + x.ln().mul_pwr2(0.5) - (Dd::ONE - Dd::from_i64(9) / x.mul_pwr2(4.0)).ln() - l
    };
    // increasing on [t*, oo) with f'(t*) = 0 (t* minimizes the objective),
    // so keep a bisection bracket under the Newton steps
    let mut lo = ts;
    let mut hi = ts + Dd::ONE;
    while f(hi) < Dd::ZERO {
        lo = hi;
        hi = hi.mul_pwr2(2.0);
    }
    let mut x = (lo + hi).mul_pwr2(0.5);
    for _ in 0..200 {
        let fx = f(x);
        if fx < Dd::ZERO {
            lo = x;
        } else {
            hi = x;
        }
        let df = Dd::ONE + x.mul_pwr2(2.0).recip()
            - Dd::from_i64(9)
                / (x.sqr().mul_pwr2(4.0) * (Dd::ONE - Dd::from_i64(9) / x.mul_pwr2(4.0)));
        let mut next = x - fx / df;
        if !(next > lo && next < hi) {
            next = (lo + hi).mul_pwr2(0.5);
        }
        if ((next - x) / next).abs().to_f64() < 1e-30 {
            return Some(next);
        }
        x = next;
    }
    Some(x)
}

/// Leading asymptotic location L - (1/2) ln L with L = ln(c/12); only
/// meaningful once L > 1.
pub fn x_asym(c: f64) -> Option<Dd> {
    let l = (Dd::from_f64(c) / Dd::from_i64(12)).ln();
    if l.to_f64() <= 1.0 {
        return None;
    }
    Some(l - l.ln().mul_pwr2(0.5))
}

/// Complex pole array: for each k in [k_min, k_max], the root of
/// w + (1/2) ln w = ln(C/12) + 2 pi i k by Newton from that right side.
pub fn pole_array(c: CDd, k_min: i64, k_max: i64) -> Vec<CDd> {
    let base = (c / Cx::from_real(Dd::from_i64(12))).ln();
    let mut out = Vec::new();
    for k in k_min..=k_max {
        let rhs = base + Cx::new(Dd::ZERO, Dd::TWO_PI * Dd::from_i64(k));
        let mut w = rhs;
        for _ in 0..60 {
            let f = w + w.ln().scale(Dd::from_f64(0.5)) - rhs;
            let df = Cx::from_real(Dd::ONE) + (w.scale(Dd::from_i64(2))).recip();
            let next = w - f / df;
            let rel = ((next - w).abs() / next.abs()).to_f64();
            w = next;
            if rel < 1e-30 {
                break;
            }
        }
        out.push(w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_star_and_c0_match_reference_values() {
        assert!((t_star().to_f64() - 2.9098525745124633).abs() < 1e-15);
        let c0 = compute_c0(2.5).unwrap();
        assert!(
            (c0 - Dd::new(1656.8138880409467, 7.364447367173167e-14))
                .abs()
                .to_f64()
                < 1e-9
        );
        // same interior minimum for any A below t*
        let c0b = compute_c0(2.3).unwrap();
        assert_eq!(c0.to_f64(), c0b.to_f64());
        assert!(matches!(
            compute_c0(2.25),
            Err(BracketError::ADomain { .. })
        ));
    }

    #[test]
    fn c0_beyond_t_star_sits_on_the_boundary() {
        let c0 = compute_c0(4.0).unwrap();
        let direct = objective(Dd::from_f64(4.0));
        assert_eq!(c0.to_f64(), direct.to_f64());
        // the (1 - 9/(4t))^{-1} factor only inflates sqrt(A) e^A
        for &a in &[4.0, 6.0, 10.0] {
            let c0 = compute_c0(a).unwrap().to_f64();
            let floor = 12.0 * a.sqrt() * a.exp();
            assert!(c0 >= floor, "C0({a}) = {c0} < {floor}");
        }
    }

    #[test]
    fn constructed_c_puts_the_plain_root_at_ten() {
        // c = 12 e^10 sqrt(10)
        let c = Dd::from_i64(12) * Dd::from_i64(10).exp() * Dd::from_i64(10).sqrt();
        let x = x_hi(c.to_f64());
        // c held as f64 shifts the root by ~1e-17/ (dx/dlnc ~ 1)
        assert!(
            (x - Dd::from_i64(10)).abs().to_f64() < 1e-13,
            "x_hi = {}",
            x.to_f64()
        );
    }

    #[test]
    fn bracket_ends_order_and_match_the_root_table() {
        let lo = x_lo(1.0e6).unwrap();
        let hi = x_hi(1.0e6);
        assert!((lo.to_f64() - 9.9260).abs() < 5e-4, "lo = {}", lo.to_f64());
        assert!(
            (hi.to_f64() - 10.170841436307288).abs() < 1e-12,
            "hi = {}",
            hi.to_f64()
        );
        assert!(lo < hi);
        // below threshold there is no lower end
        assert!(x_lo(1000.0).is_none());
        let at = x_lo(compute_c0(2.5).unwrap().to_f64() * (1.0 + 1e-14));
        let t = at.unwrap().to_f64();
        assert!((t - t_star().to_f64()).abs() < 1e-6, "x_lo(C0) = {t}");
    }

    #[test]
    fn asymptotic_location_undershoots_the_plain_root() {
        for &c in &[1.0e3, 1.0e6, 1.0e9] {
            let a = x_asym(c).unwrap();
            let h = x_hi(c);
            assert!(a < h);
            assert!((h - a).to_f64() < 0.2);
        }
    }

    #[test]
    fn pole_array_newton_lands_on_known_points() {
        // ln(c/12) = 1 with k = 0 gives w = 1
        let c = (Dd::E * Dd::from_i64(12)).to_f64();
        let w = pole_array(Cx::from_real(Dd::from_f64(c)), 0, 0)[0];
        assert!((w - Cx::from_real(Dd::ONE)).abs().to_f64() < 1e-14);
        // residual check on a genuinely complex member
        let c6 = Cx::from_real(Dd::from_f64(1.0e6));
        for (i, w) in pole_array(c6, -2, 2).iter().enumerate() {
            let k = i as i64 - 2;
            let rhs = (c6 / Cx::from_real(Dd::from_i64(12))).ln()
                + Cx::new(Dd::ZERO, Dd::TWO_PI * Dd::from_i64(k));
            let res = (*w + w.ln().scale(Dd::from_f64(0.5)) - rhs).abs().to_f64();
            assert!(res < 1e-28, "k = {k}: residual {res:.3e}");
            if k != 0 {
                assert!(w.im.to_f64().signum() == (k as f64).signum());
            }
        }
    }
}
