//! Homogeneous basis y_-, y_+ of y'' = (1 + h_0 - 1/(4x^2)) y.
//!
//! y_- is the recessive solution, seeded at x_max from the optimally
//! truncated level-one row: y_-(x) = e^{-x} T_1(x) + O(e^{-3x}).  Seeding at
//! the far end matters: any admixture of the dominant solution decays like
//! e^{-2(x_max - x)} marching inward, so the seed ambiguity never surfaces.
//! y_+ is marched outward from (1, 0) at A and rescaled so the Wronskian
//! y_- y_+' - y_-' y_+ equals 2; the e^{-x} admixture picked up by the
//! arbitrary inner seed is invisible at that normalization and drops out of
//! the kernel u(t,s) entirely.

use crate::fixture::H0Fixture;
use crate::grid::PanelGrid;
use ddreal::Dd;
use p1_ode::taylor::normal_taylor_coeffs;
use thiserror::Error;

const ORDER: usize = 48;
const STEP_TOL: f64 = 1e-28;

#[derive(Debug, Error)]
pub enum BasisError {
    #[error("Wronskian drifts from 2 by {err:.3e}")]
    Wronskian { err: f64 },
    #[error("|h_0| >= x^-4 at x = {x}; contraction bound unavailable")]
    Domain { x: f64 },
    #[error("basis solution lost positivity at x = {x}")]
    Positivity { x: f64 },
}

#[derive(Debug, Clone)]
pub struct HomogeneousBasis {
    /// y_-, y_-', y_+, y_+' at the grid nodes.
    pub ym: Vec<Dd>,
    pub dym: Vec<Dd>,
    pub yp: Vec<Dd>,
    pub dyp: Vec<Dd>,
    /// Exponentially flattened views  f_- = e^x y_-,  f_+ = e^{-x} y_+.
    pub fm: Vec<Dd>,
    pub fp: Vec<Dd>,
    /// The same at the right endpoint x_max (a panel boundary, not a node).
    pub fm_b: Dd,
    pub fp_b: Dd,
    /// max |W/2 - 1| over the grid.
    pub w_err: f64,
}

/// Taylor series of y'' = q y at x0 given the local h_0 series:
/// q = 1 + h_0 - 1/(4x^2) expanded about x0.
fn y_series(hs: &[Dd], x0: Dd, y: Dd, dy: Dd) -> Vec<Dd> {
    let n = hs.len();
    let xinv = x0.recip();
    let mut q = vec![Dd::ZERO; n];
    let mut xp = xinv * xinv;
    for (j, qj) in q.iter_mut().enumerate() {
        // -(1/4) d^j/dx^j x^{-2} / j! = -(1/4)(j+1)(-1)^j x^{-(j+2)}
        let sign = if j % 2 == 0 { 1 } else { -1 };
        *qj = hs[j] - Dd::from_i64(sign * (j as i64 + 1)).mul_pwr2(0.25) * xp;
        xp *= xinv;
    }
    q[0] += Dd::ONE;
    let mut c = vec![Dd::ZERO; n + 1];
    c[0] = y;
    c[1] = dy;
    for m in 0..n - 1 {
        let mut conv = Dd::ZERO;
        for j in 0..=m {
            conv += q[j] * c[m - j];
        }
        c[m + 2] = conv / Dd::from_i64(((m + 1) * (m + 2)) as i64);
    }
    c
}

fn eval_pair(c: &[Dd], u: Dd) -> (Dd, Dd, Dd, Dd) {
    let half = (c.len() - 1) / 2;
    let mut v = Dd::ZERO;
    let mut d = Dd::ZERO;
    let mut vh = Dd::ZERO;
    let mut dh = Dd::ZERO;
    let mut uk = Dd::ONE;
    let mut uk_prev = Dd::ZERO;
    for (k, &ck) in c.iter().enumerate() {
        v += ck * uk;
        if k >= 1 {
            d += ck * Dd::from_i64(k as i64) * uk_prev;
        }
        if k == half {
            vh = v;
            dh = d;
        }
        uk_prev = uk;
        uk *= u;
    }
    (v, d, vh, dh)
}

fn linear_step(fx: &H0Fixture, x0: Dd, y: Dd, dy: Dd, x1: Dd, depth: usize) -> (Dd, Dd) {
    assert!(depth < 24, "linear step refused to converge at x = {}", x0.to_f64());
    let (h, hp) = fx.lookup(x0).unwrap_or_else(|| fx.eval(x0));
    let hs = normal_taylor_coeffs(x0, h, hp, ORDER);
    let c = y_series(&hs, x0, y, dy);
    let u = x1 - x0;
    let (v, d, vh, dh) = eval_pair(&c, u);
    let scale = v.abs().to_f64() + d.abs().to_f64();
    let err = ((v - vh).abs().to_f64() + (d - dh).abs().to_f64()) / (1.0 + scale);
    if err <= STEP_TOL {
        return (v, d);
    }
    let mid = x0 + u.mul_pwr2(0.5);
    let (ym, dym) = linear_step(fx, x0, y, dy, mid, depth + 1);
    linear_step(fx, mid, ym, dym, x1, depth + 1)
}

pub fn build_basis(
    grid: &PanelGrid,
    fx: &H0Fixture,
    row1: &[Dd],
) -> Result<HomogeneousBasis, BasisError> {
    for (&x, &h) in fx.xs.iter().zip(&fx.h) {
        if h.abs() >= x.powi(-4) {
            return Err(BasisError::Domain { x: x.to_f64() });
        }
    }
    let xs = &fx.xs;
    let n = xs.len();
    let top = n - 1;
    let b = xs[top];
    let a = grid.a();
    let ia = xs
        .iter()
        .position(|&x| (x - a).abs().to_f64() < 1e-13)
        .expect("grid start is a march node");

    // recessive branch, inward from x_max
    let t1 = crate::rows::row_opt(row1, b);
    let eb = (-b).exp();
    let mut ym = vec![Dd::ZERO; n];
    let mut dym = vec![Dd::ZERO; n];
    ym[top] = eb * t1.val;
    dym[top] = eb * (t1.der - t1.val);
    for i in (0..top).rev() {
        let (v, d) = linear_step(fx, xs[i + 1], ym[i + 1], dym[i + 1], xs[i], 0);
        ym[i] = v;
        dym[i] = d;
    }

    // dominant branch, outward from A, then Wronskian normalization
    let mut yp = vec![Dd::ZERO; n];
    let mut dyp = vec![Dd::ZERO; n];
    yp[ia] = Dd::ONE;
    for i in ia + 1..n {
        let (v, d) = linear_step(fx, xs[i - 1], yp[i - 1], dyp[i - 1], xs[i], 0);
        yp[i] = v;
        dyp[i] = d;
    }
    let w_raw = ym[ia] * dyp[ia] - dym[ia] * yp[ia];
    let s = Dd::from_i64(2) / w_raw;
    for i in ia..n {
        yp[i] *= s;
        dyp[i] *= s;
    }

    for i in ia..n {
        if !(ym[i] > Dd::ZERO && yp[i] > Dd::ZERO) {
            return Err(BasisError::Positivity { x: xs[i].to_f64() });
        }
    }

    // restrict to the quadrature nodes
    let mut idx = Vec::with_capacity(grid.nodes.len());
    for &x in &grid.nodes {
        let xf = x.to_f64();
        let i = xs
            .binary_search_by(|p| p.to_f64().partial_cmp(&xf).unwrap())
            .unwrap_or_else(|i| i);
        let i = (i.saturating_sub(1)..(i + 2).min(n))
            .find(|&j| (xs[j] - x).abs().to_f64() < 1e-13)
            .expect("grid node is a march node");
        idx.push(i);
    }
    let pick = |v: &[Dd]| idx.iter().map(|&i| v[i]).collect::<Vec<_>>();
    let (gym, gdym, gyp, gdyp) = (pick(&ym), pick(&dym), pick(&yp), pick(&dyp));

    let mut w_err = 0.0f64;
    for i in 0..gym.len() {
        let w = gym[i] * gdyp[i] - gdym[i] * gyp[i];
        w_err = w_err.max((w.mul_pwr2(0.5) - Dd::ONE).abs().to_f64());
    }
    if w_err > 1e-8 {
        return Err(BasisError::Wronskian { err: w_err });
    }

    let mut fm = Vec::with_capacity(gym.len());
    let mut fp = Vec::with_capacity(gym.len());
    for (i, &x) in grid.nodes.iter().enumerate() {
        fm.push(x.exp() * gym[i]);
        fp.push((-x).exp() * gyp[i]);
    }
    let fm_b = b.exp() * ym[top];
    let fp_b = (-b).exp() * yp[top];

    Ok(HomogeneousBasis {
        ym: gym,
        dym: gdym,
        yp: gyp,
        dyp: gdyp,
        fm,
        fp,
        fm_b,
        fp_b,
        w_err,
    })
}

impl HomogeneousBasis {
    /// Kernel of the variation-of-parameters integral, u(t,s) for node
    /// indices it >= is.
    pub fn u_kernel(&self, it: usize, is: usize) -> Dd {
        debug_assert!(it >= is);
        self.yp[it] * self.ym[is] - self.ym[it] * self.yp[is]
    }

    pub fn f1_range_ok(&self) -> bool {
        self.fm.iter().all(|&f| f > Dd::ZERO && f < Dd::ONE)
    }

    /// Level-one hierarchy values h_1 = e^x y_- at the grid nodes.
    pub fn h1(&self) -> &[Dd] {
        &self.fm
    }
}
