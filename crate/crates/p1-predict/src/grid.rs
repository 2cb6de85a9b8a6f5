//! Chebyshev-clustered Gauss-Legendre panel grid.
//!
//! Every hierarchy quadrature and interpolation in this crate lives on one
//! fixed grid: panels whose boundaries cluster at both ends of `[a, b]`,
//! each carrying a 16-point Gauss-Legendre rule.  The reference nodes double
//! as an interpolation stencil, so a function tabulated on the grid can be
//! evaluated anywhere by barycentric interpolation within its panel.

use ddreal::{Dd, PI};

pub const GL_N: usize = 16;

/// Legendre (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: Dd) -> (Dd, Dd) {
    let mut p0 = Dd::ONE;
    let mut p1 = x;
    for k in 1..n {
        let p2 = (Dd::from_i64((2 * k + 1) as i64) * x * p1 - Dd::from_i64(k as i64) * p0)
            / Dd::from_i64((k + 1) as i64);
        p0 = p1;
        p1 = p2;
    }
    let dp = Dd::from_i64(n as i64) * (x * p1 - p0) / (x * x - Dd::ONE);
    (p1, dp)
}

/// Reference 16-point rule on [-1, 1], nodes ascending.
fn gl_rule() -> ([Dd; GL_N], [Dd; GL_N]) {
    let mut xi = [Dd::ZERO; GL_N];
    let mut w = [Dd::ZERO; GL_N];
    for i in 0..GL_N {
        let mut x = (PI * Dd::from_f64((i as f64 + 0.75) / (GL_N as f64 + 0.5))).cos();
        for _ in 0..8 {
            let (p, dp) = legendre(GL_N, x);
            let step = p / dp;
            x -= step;
            if step.abs().to_f64() < 1e-33 {
                break;
            }
        }
        let (_, dp) = legendre(GL_N, x);
        xi[GL_N - 1 - i] = x;
        w[GL_N - 1 - i] = Dd::from_i64(2) / ((Dd::ONE - x * x) * dp * dp);
    }
    (xi, w)
}

#[derive(Debug, Clone)]
pub struct PanelGrid {
    /// Panel boundaries, ascending, len = panels + 1.
    pub bounds: Vec<Dd>,
    /// All quadrature nodes, ascending, len = panels * 16.
    pub nodes: Vec<Dd>,
    /// Quadrature weights matching `nodes`.
    pub weights: Vec<Dd>,
    /// Reference nodes, weights, and barycentric weights on [-1, 1].
    pub xi: [Dd; GL_N],
    pub wref: [Dd; GL_N],
    pub bary: [Dd; GL_N],
}

impl PanelGrid {
    pub fn new(a: f64, b: f64, panels: usize) -> Self {
        let (xi, wref) = gl_rule();
        let mut bary = [Dd::ONE; GL_N];
        for i in 0..GL_N {
            let mut prod = Dd::ONE;
            for j in 0..GL_N {
                if j != i {
                    prod *= xi[i] - xi[j];
                }
            }
            bary[i] = prod.recip();
        }
        let (a, b) = (Dd::from_f64(a), Dd::from_f64(b));
        let mid = (a + b).mul_pwr2(0.5);
        let half = (b - a).mul_pwr2(0.5);
        let mut bounds = Vec::with_capacity(panels + 1);
        for i in 0..=panels {
            let t = (PI * Dd::from_f64(i as f64 / panels as f64)).cos();
            bounds.push(mid - half * t);
        }
        bounds[0] = a;
        bounds[panels] = b;
        let mut nodes = Vec::with_capacity(panels * GL_N);
        let mut weights = Vec::with_capacity(panels * GL_N);
        for p in 0..panels {
            let c = (bounds[p] + bounds[p + 1]).mul_pwr2(0.5);
            let h = (bounds[p + 1] - bounds[p]).mul_pwr2(0.5);
            for i in 0..GL_N {
                nodes.push(c + h * xi[i]);
                weights.push(h * wref[i]);
            }
        }
        PanelGrid { bounds, nodes, weights, xi, wref, bary }
    }

    pub fn panels(&self) -> usize {
        self.bounds.len() - 1
    }

    pub fn a(&self) -> Dd {
        self.bounds[0]
    }

    pub fn b(&self) -> Dd {
        *self.bounds.last().unwrap()
    }

    /// Panel index containing x (clamped at the ends).
    pub fn panel_of(&self, x: Dd) -> usize {
        let xf = x.to_f64();
        let n = self.panels();
        match self.bounds.binary_search_by(|b| b.to_f64().partial_cmp(&xf).unwrap()) {
            Ok(i) => i.min(n - 1),
            Err(i) => i.saturating_sub(1).min(n - 1),
        }
    }

    /// Fresh Gauss-Legendre rule on an arbitrary subinterval [lo, hi].
    pub fn sub_rule(&self, lo: Dd, hi: Dd) -> [(Dd, Dd); GL_N] {
        let c = (lo + hi).mul_pwr2(0.5);
        let h = (hi - lo).mul_pwr2(0.5);
        let mut out = [(Dd::ZERO, Dd::ZERO); GL_N];
        for i in 0..GL_N {
            out[i] = (c + h * self.xi[i], h * self.wref[i]);
        }
        out
    }

    /// Barycentric interpolation of grid values within x's panel.
    pub fn interp(&self, vals: &[Dd], x: Dd) -> Dd {
        let p = self.panel_of(x);
        self.interp_panel(&vals[p * GL_N..(p + 1) * GL_N], p, x)
    }

    /// As [`interp`](Self::interp) with the panel slice already in hand.
    pub fn interp_panel(&self, f: &[Dd], p: usize, x: Dd) -> Dd {
        let c = (self.bounds[p] + self.bounds[p + 1]).mul_pwr2(0.5);
        let h = (self.bounds[p + 1] - self.bounds[p]).mul_pwr2(0.5);
        let t = (x - c) / h;
        let mut num = Dd::ZERO;
        let mut den = Dd::ZERO;
        for i in 0..GL_N {
            let d = t - self.xi[i];
            if d.abs().to_f64() < 1e-30 {
                return f[i];
            }
            let r = self.bary[i] / d;
            num += r * f[i];
            den += r;
        }
        num / den
    }

    /// d/dx of the interpolant of panel p, at that panel's own nodes.
    pub fn panel_deriv(&self, f: &[Dd], p: usize) -> [Dd; GL_N] {
        let h = (self.bounds[p + 1] - self.bounds[p]).mul_pwr2(0.5);
        let mut out = [Dd::ZERO; GL_N];
        for i in 0..GL_N {
            let mut diag = Dd::ZERO;
            let mut acc = Dd::ZERO;
            for j in 0..GL_N {
                if j != i {
                    let dij = (self.bary[j] / self.bary[i]) / (self.xi[i] - self.xi[j]);
                    acc += dij * f[j];
                    diag -= dij;
                }
            }
            out[i] = (acc + diag * f[i]) / h;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ddreal::Scalar;

    #[test]
    fn reference_rule_is_exact_through_degree_31() {
        let (xi, w) = gl_rule();
        // int x^30 = 2/31, int x^31 = 0
        let mut even = Dd::ZERO;
        let mut odd = Dd::ZERO;
        for i in 0..GL_N {
            even += w[i] * xi[i].powi(30);
            odd += w[i] * xi[i].powi(31);
        }
        assert!((even - Dd::from_ratio(2, 31)).abs().to_f64() < 1e-30);
        assert!(odd.abs().to_f64() < 1e-30);
        let sum: Dd = w.iter().fold(Dd::ZERO, |s, &wi| s + wi);
        assert!((sum - Dd::from_i64(2)).abs().to_f64() < 1e-30);
    }

    #[test]
    fn panel_layout_clusters_at_both_ends() {
        let g = PanelGrid::new(2.25, 40.0, 128);
        assert_eq!(g.panels(), 128);
        assert_eq!(g.nodes.len(), 2048);
        assert_eq!(g.a().to_f64(), 2.25);
        assert_eq!(g.b().to_f64(), 40.0);
        let widths: Vec<f64> =
            g.bounds.windows(2).map(|w| (w[1] - w[0]).to_f64()).collect();
        let wmax = widths.iter().cloned().fold(0.0, f64::max);
        let wmin = widths.iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(wmax < 0.47, "widest panel {wmax}");
        assert!(wmin < 0.006, "end panels should cluster, got {wmin}");
        for w in g.nodes.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn quadrature_and_interpolation_on_a_smooth_function() {
        let g = PanelGrid::new(0.0, 1.0, 4);
        let vals: Vec<Dd> = g.nodes.iter().map(|&x| x.exp()).collect();
        let int: Dd = vals
            .iter()
            .zip(&g.weights)
            .fold(Dd::ZERO, |s, (&f, &w)| s + f * w);
        assert!((int - (Dd::ONE.exp() - Dd::ONE)).abs().to_f64() < 1e-30);
        for &x in &[0.111, 0.5, 0.77, 0.999] {
            let x = Dd::from_f64(x);
            let e = (g.interp(&vals, x) - x.exp()).abs().to_f64();
            assert!(e < 1e-27, "interp error {e:.3e}");
        }
    }

    #[test]
    fn derivative_matrix_differentiates_the_panel() {
        let g = PanelGrid::new(2.0, 3.0, 2);
        let vals: Vec<Dd> = g.nodes.iter().map(|&x| x.exp()).collect();
        let d = g.panel_deriv(&vals[GL_N..2 * GL_N], 1);
        for i in 0..GL_N {
            let x = g.nodes[GL_N + i];
            let e = (d[i] - x.exp()).abs().to_f64() / x.exp().to_f64();
            assert!(e < 1e-24, "deriv error {e:.3e}");
        }
    }

    #[test]
    fn panel_lookup_handles_boundaries_and_ends() {
        let g = PanelGrid::new(2.25, 40.0, 128);
        assert_eq!(g.panel_of(Dd::from_f64(2.25)), 0);
        assert_eq!(g.panel_of(Dd::from_f64(40.0)), 127);
        let b5 = g.bounds[5];
        let p = g.panel_of(b5);
        assert!(p == 4 || p == 5);
        let x = (g.bounds[64] + g.bounds[65]).mul_pwr2(0.5);
        assert_eq!(g.panel_of(x), 64);
    }
}
