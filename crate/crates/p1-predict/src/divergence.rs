//! Ratio-test scan for the convergence edge of sum_k C^k F_k(x).
//!
//! With F_k = x^{-k/2} e^{-kx} h_k the term ratio is sigma(x) h_{k+1}/h_k,
//! sigma = C e^{-x} x^{-1/2}.  The level ratios increase toward 1/rho_inf,
//! so the largest sampled ratio decides; walking the grid from the right,
//! the first node where it reaches 1 brackets the divergence onset, and a
//! bisection against the interpolated levels sharpens it.

use crate::hier::Hierarchy;
use ddreal::Dd;

#[derive(Debug, Clone, Copy)]
pub struct DivergenceScan {
    pub x_div: f64,
    /// Level index attaining the deciding ratio at the crossing.
    pub k_at_max: usize,
    /// Largest ratio at the outermost grid node, for "safe above" checks.
    pub top_ratio: f64,
}

fn max_ratio(hier: &Hierarchy, sigma: Dd, i: usize) -> (Dd, usize) {
    let mut best = Dd::ZERO;
    let mut at = 1;
    for k in 1..hier.k_max() {
        let r = sigma * hier.levels[k].h[i] / hier.levels[k - 1].h[i];
        if r > best {
            best = r;
            at = k;
        }
    }
    (best, at)
}

fn max_ratio_at(hier: &Hierarchy, c: Dd, x: Dd) -> Dd {
    let sigma = c * (-x).exp() / x.sqrt();
    let mut best = Dd::ZERO;
    for k in 1..hier.k_max() {
        let r = sigma * hier.hk_at(k + 1, x) / hier.hk_at(k, x);
        if r > best {
            best = r;
        }
    }
    best
}

/// None when the sum converges over the whole grid (C too small to push the
/// divergence edge above x = A).
pub fn divergence_scan(hier: &Hierarchy, c: f64) -> Option<DivergenceScan> {
    let cd = Dd::from_f64(c);
    let n = hier.grid.nodes.len();
    let top_sigma = cd * (-hier.grid.nodes[n - 1]).exp() / hier.grid.nodes[n - 1].sqrt();
    let (top, _) = max_ratio(hier, top_sigma, n - 1);
    let top_ratio = top.to_f64();
    let mut hit = None;
    for i in (0..n).rev() {
        let x = hier.grid.nodes[i];
        let sigma = cd * (-x).exp() / x.sqrt();
        let (r, k) = max_ratio(hier, sigma, i);
        if r >= Dd::ONE {
            hit = Some((i, k));
            break;
        }
    }
    let (i, k_at_max) = hit?;
    if i + 1 >= n {
        // diverging already at the outermost node; no crossing inside
        return Some(DivergenceScan {
            x_div: hier.grid.nodes[i].to_f64(),
            k_at_max,
            top_ratio,
        });
    }
    let mut lo = hier.grid.nodes[i];
    let mut hi = hier.grid.nodes[i + 1];
    for _ in 0..60 {
        let mid = (lo + hi).mul_pwr2(0.5);
        if max_ratio_at(hier, cd, mid) >= Dd::ONE {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(DivergenceScan {
        x_div: (lo + hi).mul_pwr2(0.5).to_f64(),
        k_at_max,
        top_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::build_basis;
    use crate::brackets::{x_hi, x_lo};
    use crate::fixture::build_fixture;
    use crate::grid::PanelGrid;
    use crate::hier::build_hk;
    use p1_exact::table::compute_transseries_table;
    use p1_ode::convert::dd_rows;

    fn hierarchy(k_max: usize) -> Hierarchy {
        let rows = dd_rows(&compute_transseries_table(k_max, 60).rows);
        let grid = PanelGrid::new(2.25, 40.0, 48);
        let fx = build_fixture(&grid);
        let basis = build_basis(&grid, &fx, &rows[1]).unwrap();
        build_hk(grid, &basis, &rows, k_max)
    }

    #[test]
    fn converges_above_and_crosses_inside_the_bracket() {
        let hier = hierarchy(24);
        let scan = divergence_scan(&hier, 1.0e6).expect("crossing on grid");
        assert!(scan.top_ratio < 1.0);
        let lo = x_lo(1.0e6).unwrap().to_f64();
        let hi = x_hi(1.0e6).to_f64();
        assert!(
            scan.x_div > lo && scan.x_div < hi,
            "x_div = {} outside [{lo}, {hi}]",
            scan.x_div
        );
        // the deciding level is the deepest available ratio
        assert_eq!(scan.k_at_max, hier.k_max() - 1);
    }

    #[test]
    fn small_c_never_diverges_on_the_grid() {
        // sigma(2.25) ~ 0.035: even times the deep ratio ~13.5 stays under 1
        let hier = hierarchy(24);
        assert!(divergence_scan(&hier, 0.5).is_none());
    }
}
