//! The level-ratio radius rho_inf(x) and the limsup root x_lim.
//!
//! The tail of sum_k sigma^k h_k(x) behaves geometrically with ratio
//! sigma(x) / rho_inf(x), where rho_inf = lim_k h_k/h_{k+1} measured through
//! the normalized ratio sequence b_k = (h_{k+1}/h_k) k/(k+1) -> 1/rho_inf.
//! The 1/k corrections are polynomial, so Richardson extrapolation over a
//! fixed k window converges far faster than the raw sequence.  x_lim is then
//! the root of sqrt(x) e^x = C rho_inf(x).

use crate::hier::Hierarchy;
use ddreal::Dd;

/// Levels used for the ratio window; extrapolation depth is fixed with them
/// so results are reproducible run to run.
pub const K_WINDOW_LO: usize = 2;
pub const K_WINDOW_HI: usize = 11;
const RICHARDSON_DEPTH: usize = 5;
const SETTLE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
pub struct RhoEval {
    pub value: Dd,
    /// Gap to the previous extrapolation level: the convergence estimate.
    pub err_est: f64,
    /// Last three extrapolation levels agree to 1e-6.
    pub settled: bool,
}

/// rho_inf at one grid point.  Needs levels through K_WINDOW_HI + 1.
pub fn rho_inf(hier: &Hierarchy, x: Dd) -> RhoEval {
    assert!(
        hier.k_max() > K_WINDOW_HI,
        "hierarchy too shallow for the ratio window"
    );
    let ks: Vec<usize> = (K_WINDOW_LO..=K_WINDOW_HI).collect();
    let mut cur: Vec<Dd> = ks
        .iter()
        .map(|&k| {
            let hk = hier.hk_at(k, x);
            let hk1 = hier.hk_at(k + 1, x);
            hk1 / hk * Dd::from_i64(k as i64) / Dd::from_i64(k as i64 + 1)
        })
        .collect();
    // successive extrapolation tails, already on the rho scale
    let mut tails = Vec::with_capacity(RICHARDSON_DEPTH + 1);
    tails.push(cur.last().unwrap().recip());
    for j in 1..=RICHARDSON_DEPTH {
        let next: Vec<Dd> = (0..cur.len() - 1)
            .map(|i| {
                cur[i + 1]
                    + (cur[i + 1] - cur[i]) * Dd::from_i64(ks[i] as i64) / Dd::from_i64(j as i64)
            })
            .collect();
        cur = next;
        tails.push(cur.last().unwrap().recip());
    }
    let n = tails.len();
    let err_est = (tails[n - 1] - tails[n - 2]).abs().to_f64();
    let settled = err_est < SETTLE_TOL && (tails[n - 2] - tails[n - 3]).abs().to_f64() < SETTLE_TOL;
    RhoEval {
        value: tails[n - 1],
        err_est,
        settled,
    }
}

/// g(x) = x + (1/2) ln x - ln rho_inf(x) - ln C, whose root is x_lim.
fn g_of(hier: &Hierarchy, x: Dd, ln_c: Dd) -> (Dd, RhoEval) {
    let rho = rho_inf(hier, x);
    (x + x.ln().mul_pwr2(0.5) - rho.value.ln() - ln_c, rho)
}

#[derive(Debug, Clone, Copy)]
pub struct XLim {
    pub x: Dd,
    pub rho: RhoEval,
}

/// Root of sqrt(x) e^x = C rho_inf(x) inside the grid; None when the root
/// leaves the grid or the extrapolation never settles.
pub fn x_lim(hier: &Hierarchy, c: f64) -> Option<XLim> {
    let ln_c = Dd::from_f64(c).ln();
    // margin keeps interpolation away from the very edge panels
    let lo = hier.grid.a().to_f64() + 0.25;
    let hi = hier.grid.b().to_f64() - 0.5;
    let mut a = Dd::from_f64(lo);
    let mut b = Dd::from_f64(hi);
    let (ga, _) = g_of(hier, a, ln_c);
    let (gb, _) = g_of(hier, b, ln_c);
    if !(ga < Dd::ZERO && gb > Dd::ZERO) {
        return None;
    }
    // bisect to a short interval, then secant-polish
    for _ in 0..30 {
        let mid = (a + b).mul_pwr2(0.5);
        let (gm, _) = g_of(hier, mid, ln_c);
        if gm < Dd::ZERO {
            a = mid;
        } else {
            b = mid;
        }
    }
    let mut x0 = a;
    let mut x1 = b;
    let (mut g0, _) = g_of(hier, x0, ln_c);
    let mut out = None;
    for _ in 0..8 {
        let (g1, rho) = g_of(hier, x1, ln_c);
        out = Some(XLim { x: x1, rho });
        if (g1 - g0).abs().to_f64() == 0.0 {
            break;
        }
        let x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
        if (x2 - x1).abs().to_f64() < 1e-24 {
            let (_, rho) = g_of(hier, x2, ln_c);
            return Some(XLim { x: x2, rho });
        }
        x0 = x1;
        g0 = g1;
        x1 = x2;
    }
    out
}
