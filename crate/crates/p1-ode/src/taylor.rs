//! Taylor coefficient recursions and the analyticity-radius bound.

use ddreal::{Real, Scalar};

/// Taylor coefficients `c_0..c_n` of a P1 solution at a regular point:
///
/// ```text
/// (k+1)(k+2) c_{k+2} = 6 sum_{m=0}^{k} c_m c_{k-m} + z0 [k=0] + [k=1]
/// ```
///
/// with `c_0 = y`, `c_1 = y'`.
pub fn p1_taylor_coeffs<S: Scalar>(z0: S, y: S, yp: S, n: usize) -> Vec<S> {
    let mut c = vec![S::zero(); n + 1];
    c[0] = y;
    if n >= 1 {
        c[1] = yp;
    }
    for k in 0..n.saturating_sub(1) {
        let mut conv = S::zero();
        for m in 0..=k {
            conv += c[m] * c[k - m];
        }
        let mut v = S::from_i64(6) * conv;
        if k == 0 {
            v += z0;
        }
        if k == 1 {
            v += S::one();
        }
        c[k + 2] = v / S::from_i64(((k + 1) * (k + 2)) as i64);
    }
    c
}

/// Lower bound on the analyticity radius of a P1 solution at a regular
/// point: `R = 1 / max{ |y|^{1/2}, |y'/2|^{1/3}, |y^2 + z/6|^{1/4} }`,
/// capped at `max_step` (the all-zero state has an infinite bound).
/// f64 output: this only steers step sizes.
pub fn radius_bound<S: Scalar>(z: S, y: S, yp: S, max_step: f64) -> f64 {
    let a = y.modulus().to_f64().sqrt();
    let b = (yp.modulus().to_f64() / 2.0).powf(1.0 / 3.0);
    let w = y * y + z * S::from_ratio(1, 6);
    let c = w.modulus().to_f64().powf(0.25);
    let m = a.max(b).max(c);
    if m <= 1.0 / max_step {
        max_step
    } else {
        1.0 / m
    }
}

/// Taylor coefficients of a normal-form solution at `x0 != 0`.  Multiplying
/// the equation by `x^4` clears the singular coefficients:
///
/// ```text
/// x^4 h'' + x^3 h' - x^4 h - x^4 h^2/2 - 392/625 = 0,
/// ```
///
/// and expanding `x = x0 + t` gives a recursion whose leading coefficient is
/// `x0^4 (k+1)(k+2)`, nonzero away from the singular point.
pub fn normal_taylor_coeffs<S: Scalar>(x0: S, h: S, hp: S, n: usize) -> Vec<S> {
    let x2 = x0 * x0;
    let x3 = x2 * x0;
    let x4 = x3 * x0;
    let a = [x4, S::from_i64(4) * x3, S::from_i64(6) * x2, S::from_i64(4) * x0, S::one()];
    let b = [x3, S::from_i64(3) * x2, S::from_i64(3) * x0, S::one()];
    let mut c = vec![S::zero(); n + 1];
    let mut w = vec![S::zero(); n + 1];
    c[0] = h;
    if n >= 1 {
        c[1] = hp;
    }
    for k in 0..n.saturating_sub(1) {
        let mut wk = S::zero();
        for m in 0..=k {
            wk += c[m] * c[k - m];
        }
        w[k] = wk;
        let mut rhs = S::zero();
        for j in 1..=k.min(4) {
            let f = ((k + 2 - j) * (k + 1 - j)) as i64;
            rhs -= a[j] * S::from_i64(f) * c[k + 2 - j];
        }
        for j in 0..=k.min(3) {
            rhs -= b[j] * S::from_i64((k + 1 - j) as i64) * c[k + 1 - j];
        }
        for j in 0..=k.min(4) {
            rhs += a[j] * (c[k - j] + w[k - j].mul_pwr2(0.5));
        }
        if k == 0 {
            rhs += S::from_ratio(392, 625);
        }
        c[k + 2] = rhs / (a[0] * S::from_i64(((k + 1) * (k + 2)) as i64));
    }
    c
}
