//! The transseries level hierarchy h_k on the grid.
//!
//! Each level k >= 2 is the decaying particular solution of the linearized
//! equation driven by the lower levels.  Written directly in the flattened
//! variables f_- = e^x y_- and f_+ = e^{-x} y_+ it reads
//!
//! ```text
//! h_k(x) = 1/4 [ f_-(x) P_k(x) - f_+(x) M_k(x) ]
//! P_k(x) = int_x^oo (x/t)^{(k-1)/2} e^{-(k-1)(t-x)} f_+(t) S_k(t) dt
//! M_k(x) = int_x^oo (x/t)^{(k-1)/2} e^{-(k+1)(t-x)} f_-(t) S_k(t) dt
//! S_k    = sum_{j=1}^{k-1} h_j h_{k-j}
//! ```
//!
//! so every factor is O(1) on the grid and the only subtraction is the final
//! assembly, whose cancellation is a benign factor ~2(k+1).  The integrals
//! are accumulated panel by panel from the right: the kernel anchored at a
//! panel boundary factors exactly through the next boundary, giving a stable
//! downward recurrence, and the remainder beyond x_max is summed from the
//! x^{-m} product series with an incomplete-gamma moment per power.
//!
//! As x -> oo every h_k tends to k/12^{k-1}, which fixes the normalization
//! and provides a free end-to-end check.

use crate::basis::HomogeneousBasis;
use crate::gamma::tail_moment;
use crate::grid::{PanelGrid, GL_N};
use crate::rows::row_opt;
use ddreal::Dd;

/// Nodes below this x are exempt from the lower-bound certificate.
const LOWER_BOUND_FROM: f64 = 2.5;

/// One level of the hierarchy.
#[derive(Debug, Clone)]
pub struct HkGrid {
    pub k: usize,
    /// h_k at the grid nodes.
    pub h: Vec<Dd>,
    /// h_k at x_max (a panel boundary, not a node).
    pub h_b: Dd,
}

/// Certificate counters for one level; all zero on a healthy build.
#[derive(Debug, Clone, Copy, Default)]
pub struct LevelCheck {
    /// Nodes where 0 < h_k < k/12^{k-1} fails.
    pub range: usize,
    /// Nodes at x >= 2.5 below (1 - 1/(8x)) (1 - 9/(4x))^{(k-1)/2} k/12^{k-1}.
    pub lower: usize,
    /// Consecutive node pairs where x^{-k/2} e^{-kx} h_k fails to decrease.
    pub mono: usize,
}

impl LevelCheck {
    pub fn clean(&self) -> bool {
        self.range == 0 && self.lower == 0 && self.mono == 0
    }
}

#[derive(Debug, Clone)]
pub struct Hierarchy {
    pub grid: PanelGrid,
    /// levels[k-1] holds level k; levels[0] is f_- itself.
    pub levels: Vec<HkGrid>,
    pub checks: Vec<LevelCheck>,
    /// max over k of the relative gap between h_k(x_max) and the optimally
    /// truncated row series there.
    pub junction_err: f64,
}

/// c[m] += sum_{i} a[i] b[m-i], all slices at least c.len() long.
fn conv_into(c: &mut [Dd], a: &[Dd], b: &[Dd]) {
    for m in 0..c.len() {
        let mut s = Dd::ZERO;
        for i in 0..=m {
            s += a[i] * b[m - i];
        }
        c[m] += s;
    }
}

fn kernel(x: Dd, t: Dd, nu2: i32, beta: Dd) -> Dd {
    (x / t).pow_half_int(nu2) * (-(beta * (t - x))).exp()
}

/// Optimally truncated tail integral beyond l: the series for the integrand
/// is asymptotic, so the moment sum stops at its least term.
fn tail_sum(ser: &[Dd], l: Dd, nu2: i32, beta: Dd) -> Dd {
    let mut acc = Dd::ZERO;
    let mut best = Dd::ZERO;
    let mut least = f64::INFINITY;
    let mut growing = 0usize;
    for (m, &c) in ser.iter().enumerate() {
        let term = c * tail_moment(l, nu2, m, beta);
        acc += term;
        let a = term.abs().to_f64();
        if a > 0.0 {
            if a < least {
                least = a;
                best = acc;
                growing = 0;
            } else {
                growing += 1;
                // well past the least term; the rest only diverges
                if growing >= 3 {
                    break;
                }
            }
        }
    }
    best
}

/// Values of int_x^oo (x/t)^{nu2/2} e^{-beta (t-x)} phi(t) dt at the nodes,
/// given the tail from x_max on.  Boundary-anchored panel sums feed a
/// downward transfer recurrence; each node then adds a fresh rule on the
/// partial panel to its right.
fn scaled_integral(grid: &PanelGrid, phi: &[Dd], nu2: i32, beta: Dd, tail: Dd) -> Vec<Dd> {
    let np = grid.panels();
    let mut bnd = vec![Dd::ZERO; np + 1];
    bnd[np] = tail;
    for p in (0..np).rev() {
        let b0 = grid.bounds[p];
        let mut acc = Dd::ZERO;
        for i in 0..GL_N {
            let t = grid.nodes[p * GL_N + i];
            acc += grid.weights[p * GL_N + i] * kernel(b0, t, nu2, beta) * phi[p * GL_N + i];
        }
        bnd[p] = acc + kernel(b0, grid.bounds[p + 1], nu2, beta) * bnd[p + 1];
    }
    let mut out = vec![Dd::ZERO; grid.nodes.len()];
    for p in 0..np {
        let b1 = grid.bounds[p + 1];
        let f = &phi[p * GL_N..(p + 1) * GL_N];
        for i in 0..GL_N {
            let x = grid.nodes[p * GL_N + i];
            let mut acc = Dd::ZERO;
            for (t, w) in grid.sub_rule(x, b1) {
                acc += w * kernel(x, t, nu2, beta) * grid.interp_panel(f, p, t);
            }
            out[p * GL_N + i] = acc + kernel(x, b1, nu2, beta) * bnd[p + 1];
        }
    }
    out
}

fn check_level(grid: &PanelGrid, lv: &HkGrid) -> LevelCheck {
    let k = lv.k;
    let cap = Dd::from_i64(k as i64) / Dd::from_i64(12).powi(k as i32 - 1);
    let mut c = LevelCheck::default();
    for (i, &h) in lv.h.iter().enumerate() {
        if !(h > Dd::ZERO && h < cap) {
            c.range += 1;
        }
        let x = grid.nodes[i];
        if x.to_f64() >= LOWER_BOUND_FROM {
            let lb = (Dd::ONE - x.mul_pwr2(8.0).recip())
                * (Dd::ONE - Dd::from_i64(9) / x.mul_pwr2(4.0)).pow_half_int(k as i32 - 1)
                * cap;
            if h < lb {
                c.lower += 1;
            }
        }
        if i + 1 < lv.h.len() {
            let x1 = grid.nodes[i + 1];
            let ratio = (x / x1).pow_half_int(k as i32)
                * (-Dd::from_i64(k as i64) * (x1 - x)).exp()
                * (lv.h[i + 1] / h);
            if !(ratio < Dd::ONE) {
                c.mono += 1;
            }
        }
    }
    c
}

/// Build levels 1..=k_max.  `rows` is the full coefficient table including
/// row 0; rows beyond index k_max are not needed but harmless.
pub fn build_hk(
    grid: PanelGrid,
    basis: &HomogeneousBasis,
    rows: &[Vec<Dd>],
    k_max: usize,
) -> Hierarchy {
    assert!(k_max >= 1, "need at least level 1");
    assert!(rows.len() > k_max, "coefficient table too short for k_max");
    let n = grid.nodes.len();
    let b_top = grid.b();
    let m1 = rows[1].len();

    // f_+ tends to the first row with alternating signs flipped.
    let row_g: Vec<Dd> = rows[1]
        .iter()
        .enumerate()
        .map(|(m, &c)| if m % 2 == 1 { -c } else { c })
        .collect();

    let mut levels = Vec::with_capacity(k_max);
    levels.push(HkGrid {
        k: 1,
        h: basis.fm.clone(),
        h_b: basis.fm_b,
    });

    for k in 2..=k_max {
        let mut sk = vec![Dd::ZERO; n];
        let mut sk_ser = vec![Dd::ZERO; m1];
        for j in 1..k {
            let hj = &levels[j - 1].h;
            let hkj = &levels[k - j - 1].h;
            for i in 0..n {
                sk[i] += hj[i] * hkj[i];
            }
        }
        for j in 1..k / 2 + 1 {
            // h_j h_{k-j} + h_{k-j} h_j collapse into one doubled convolution
            let mut part = vec![Dd::ZERO; m1];
            conv_into(&mut part, &rows[j], &rows[k - j]);
            let w = if 2 * j == k { 1.0 } else { 2.0 };
            for (s, p) in sk_ser.iter_mut().zip(&part) {
                *s += p.mul_pwr2(w);
            }
        }

        let phi_p: Vec<Dd> = (0..n).map(|i| basis.fp[i] * sk[i]).collect();
        let phi_m: Vec<Dd> = (0..n).map(|i| basis.fm[i] * sk[i]).collect();
        let mut ser_p = vec![Dd::ZERO; m1];
        conv_into(&mut ser_p, &row_g, &sk_ser);
        let mut ser_m = vec![Dd::ZERO; m1];
        conv_into(&mut ser_m, &rows[1], &sk_ser);

        let nu2 = (k - 1) as i32;
        let beta_p = Dd::from_i64(k as i64 - 1);
        let beta_m = Dd::from_i64(k as i64 + 1);
        let tail_p = tail_sum(&ser_p, b_top, nu2, beta_p);
        let tail_m = tail_sum(&ser_m, b_top, nu2, beta_m);
        let cap_p = scaled_integral(&grid, &phi_p, nu2, beta_p, tail_p);
        let cap_m = scaled_integral(&grid, &phi_m, nu2, beta_m, tail_m);

        let h: Vec<Dd> = (0..n)
            .map(|i| (basis.fm[i] * cap_p[i] - basis.fp[i] * cap_m[i]).mul_pwr2(0.25))
            .collect();
        let h_b = (basis.fm_b * tail_p - basis.fp_b * tail_m).mul_pwr2(0.25);
        levels.push(HkGrid { k, h, h_b });
    }

    let checks: Vec<LevelCheck> = levels.iter().map(|lv| check_level(&grid, lv)).collect();
    let mut junction_err = 0.0f64;
    for lv in &levels {
        let r = row_opt(&rows[lv.k], b_top);
        let rel = ((lv.h_b - r.val) / r.val).abs().to_f64();
        junction_err = junction_err.max(rel);
    }

    Hierarchy {
        grid,
        levels,
        checks,
        junction_err,
    }
}

impl Hierarchy {
    pub fn k_max(&self) -> usize {
        self.levels.len()
    }

    pub fn hk(&self, k: usize) -> &[Dd] {
        &self.levels[k - 1].h
    }

    /// h_k between nodes, by barycentric interpolation.
    pub fn hk_at(&self, k: usize, x: Dd) -> Dd {
        self.grid.interp(&self.levels[k - 1].h, x)
    }

    /// Total (range, lower, mono) certificate violations over k <= k_cap.
    pub fn violations_up_to(&self, k_cap: usize) -> (usize, usize, usize) {
        let mut t = (0, 0, 0);
        for c in self.checks.iter().take(k_cap) {
            t.0 += c.range;
            t.1 += c.lower;
            t.2 += c.mono;
        }
        t
    }

    /// x -> oo limit of h_k, read off by polynomial extrapolation in 1/x
    /// through the built value at x_max and the row series at 2^j x_max.
    pub fn limit_of(&self, k: usize, rows: &[Vec<Dd>]) -> Dd {
        const DEPTH: usize = 9;
        let mut t = [Dd::ZERO; DEPTH];
        let mut v = [Dd::ZERO; DEPTH];
        for j in 0..DEPTH {
            let x = self.grid.b().ldexp(j as i32);
            t[j] = x.recip();
            v[j] = if j == 0 {
                self.levels[k - 1].h_b
            } else {
                row_opt(&rows[k], x).val
            };
        }
        for order in 1..DEPTH {
            for i in 0..DEPTH - order {
                v[i] = (t[i] * v[i + 1] - t[i + order] * v[i]) / (t[i] - t[i + order]);
            }
        }
        v[0]
    }
}
