//! Seeding a normal-form trajectory from the doubly-truncated transseries
//!
//! ```text
//! h(x) ~ sum_k  sigma^k T_k(x),   sigma = C e^{-x} x^{-1/2},
//! T_k(x) = sum_m c_{km} x^{-m}   (row k of the transseries table),
//! ```
//!
//! with each inner sum truncated at its least term at `x_seed`.  The first
//! omitted term of each row feeds the returned error estimate, so two seeds
//! of the same solution taken at different x_seed can be compared honestly.

use crate::state::NormalState;
use ddreal::{CDd, Cx, Dd, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SeedError {
    #[error("|C| e^{{-x}} x^{{-1/2}} = {sigma:.3e} at x_seed; need < 1/24")]
    XSeedTooSmall { sigma: f64 },
}

#[derive(Debug, Clone)]
pub struct SeedInfo {
    /// Estimated seeding ambiguity: least-term sizes weighted by |sigma|^k,
    /// plus the wholly omitted level K+1.
    pub err_est: f64,
    /// Truncation index chosen for each row.
    pub trunc: Vec<usize>,
    /// |sigma| at the seed point.
    pub sigma_abs: f64,
}

/// Evaluate the truncated transseries and its x-derivative at `x_seed`.
/// `rows[k][m]` holds c_{km}; row 0 is the power-series part.
pub fn seed_at_infinity(
    cpar: CDd,
    x_seed: Dd,
    rows: &[Vec<Dd>],
) -> Result<(NormalState<CDd>, SeedInfo), SeedError> {
    let sigma = cpar * Cx::from_real((-x_seed).exp() / x_seed.sqrt());
    let sigma_abs = sigma.modulus().to_f64();
    if sigma_abs >= 1.0 / 24.0 {
        return Err(SeedError::XSeedTooSmall { sigma: sigma_abs });
    }
    let xf = x_seed.to_f64();
    let xinv = x_seed.recip();
    let mut h = CDd::zero();
    let mut hp = CDd::zero();
    let mut err_est = 0.0f64;
    let mut trunc = Vec::with_capacity(rows.len());
    let mut sig_pow = CDd::one();
    for (k, row) in rows.iter().enumerate() {
        // least nonzero term |c_{km}| x^{-m} marks the optimal truncation
        let mut m_star = None;
        let mut least = f64::INFINITY;
        for (m, &cm) in row.iter().enumerate() {
            let a = cm.abs().to_f64() * xf.powi(-(m as i32));
            if a > 0.0 && a < least {
                least = a;
                m_star = Some(m);
            }
        }
        let Some(m_star) = m_star else {
            trunc.push(0);
            continue;
        };
        trunc.push(m_star);
        let mut tk = CDd::zero();
        let mut tkp = CDd::zero();
        let mut xpow = Dd::ONE;
        for (m, &cm) in row.iter().enumerate().take(m_star + 1) {
            tk += Cx::from_real(cm * xpow);
            tkp += Cx::from_real(cm * xpow * xinv * Dd::from_i64(-(m as i64)));
            xpow = xpow * xinv;
        }
        let omitted = row
            .iter()
            .enumerate()
            .skip(m_star + 1)
            .find(|(_, &cm)| cm != Dd::ZERO)
            .map(|(m, &cm)| cm.abs().to_f64() * xf.powi(-(m as i32)))
            .unwrap_or(least);
        err_est += sig_pow.modulus().to_f64() * omitted;
        // d/dx [sigma^k T_k] = sigma^k (T_k' - k (1 + 1/(2x)) T_k)
        let damp = Dd::from_i64(k as i64) * (Dd::ONE + xinv.mul_pwr2(0.5));
        h += sig_pow * tk;
        hp += sig_pow * (tkp - Cx::from_real(damp) * tk);
        sig_pow *= sigma;
        if sig_pow.modulus().to_f64() == 0.0 {
            break;
        }
    }
    err_est += sigma_abs.powi(rows.len() as i32) * (rows.len() + 1) as f64;
    let info = SeedInfo { err_est, trunc, sigma_abs };
    Ok((NormalState { x: Cx::from_real(x_seed), h, hp }, info))
}
