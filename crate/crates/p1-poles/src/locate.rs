//! Pole location from a blown-up trajectory.
//!
//! The last regular states of a blow-up trajectory sit well inside the
//! Laurent disk of the pole, so (z~, c_4) can be recovered by Newton on the
//! forward model: match the series value and derivative at a trailing state.
//! A linear fit of the residual pole block (a_{-2}, a_{-1}, a_0, a_1) over
//! several trailing states then certifies the double-pole structure; any
//! other singularity type is rejected.

use crate::laurent::laurent_from_pole;
use ddreal::{CDd, Cx, Dd, Scalar};
use p1_ode::{MapError, P1State, P1Trajectory, TrajEvent, VariableMap};
use thiserror::Error;

/// |y| window for trailing states used in fitting.
const WINDOW_LO: f64 = 1e2;
const WINDOW_HI: f64 = 1e6;
/// Series order for the Newton model; far more than needed at |u| <= 0.1 rho.
const MODEL_N: usize = 32;

#[derive(Debug, Clone)]
pub struct PoleRecord {
    /// Pole location.
    pub z: CDd,
    /// The same point in normal-form coordinates.
    pub x: CDd,
    /// Free Laurent coefficient; (z, c4) identify the solution.
    pub c4: CDd,
    /// Always 2: only double poles exist.
    pub order: u32,
    /// Location uncertainty (multi-state spread, fit residual, floor).
    pub err: f64,
    /// Asymptotic parameter of the hunt that produced this record.
    pub c_param: CDd,
}

#[derive(Debug, Error)]
pub enum LocateError {
    #[error("trajectory did not end in a blow-up")]
    NoBlowUp,
    #[error("only {found} trailing states inside the fit window; need 3")]
    TooFewStates { found: usize },
    #[error("refinement did not converge")]
    NoConvergence,
    #[error("unexpected singularity type: {detail}")]
    NotDoublePole { detail: String },
}

/// Solve a small dense complex system in place; None if singular.
fn solve_dense(mut a: Vec<Vec<CDd>>, mut b: Vec<CDd>) -> Option<Vec<CDd>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            a[i][col].norm1().partial_cmp(&a[j][col].norm1()).unwrap()
        })?;
        if a[piv][col].norm1() == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                let t = a[col][k];
                a[row][k] -= f * t;
            }
            let t = b[col];
            b[row] -= f * t;
        }
    }
    let mut x = vec![CDd::zero(); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Newton on (z~, c4) matching (y, y') of `state`; starts from `guess`.
/// Convergence is judged on the relative residual: steps in c4 are limited
/// by roundoff amplified through u^{-4} and never settle that finely.
fn refine_at_state(state: &P1State<CDd>, guess: (CDd, CDd)) -> Option<(CDd, CDd)> {
    let (mut zt, mut c4) = guess;
    let resid = |zt: CDd, c4: CDd| {
        let lx = laurent_from_pole(zt, c4, MODEL_N);
        let (y, yp) = lx.eval(state.z - zt);
        (y - state.y, yp - state.yp)
    };
    let rel = |f0: CDd, f1: CDd| {
        f0.norm1() / (1.0 + state.y.norm1()) + f1.norm1() / (1.0 + state.yp.norm1())
    };
    for _ in 0..40 {
        let (f0, f1) = resid(zt, c4);
        if rel(f0, f1) < 1e-27 {
            return Some((zt, c4));
        }
        let d = Cx::from_real(Dd::from_f64(1e-16 * (1.0 + zt.norm1())));
        let dc = Cx::from_real(Dd::from_f64(1e-16 * (1.0 + c4.norm1())));
        let (fz0, fz1) = resid(zt + d, c4);
        let (fc0, fc1) = resid(zt, c4 + dc);
        let jac = vec![
            vec![(fz0 - f0) / d, (fc0 - f0) / dc],
            vec![(fz1 - f1) / d, (fc1 - f1) / dc],
        ];
        let step = solve_dense(jac, vec![f0, f1])?;
        zt -= step[0];
        c4 -= step[1];
    }
    let (f0, f1) = resid(zt, c4);
    if rel(f0, f1) < 1e-24 {
        Some((zt, c4))
    } else {
        None
    }
}

/// Normal-form image of the pole.  The boundary ray arg(-24z) = pi belongs
/// to the principal branch even though the path map rejects it, so fall back
/// to the explicit boundary value there.
fn normal_image(z: CDd) -> CDd {
    match VariableMap::x_of_z(z) {
        Ok(x) => x,
        Err(MapError::ZeroPoint) => CDd::zero(),
        Err(MapError::BranchCut) => {
            // z real positive: x = (24 z)^{5/4} e^{5 pi i / 4} / 30
            let r = (Dd::from_i64(24) * z.re).powf(Dd::from_ratio(5, 4)) / Dd::from_i64(30);
            let (s, c) = (ddreal::PI * Dd::from_ratio(5, 4)).sin_cos();
            Cx::new(r * c, r * s)
        }
    }
}

pub fn locate_pole(traj: &P1Trajectory<CDd>, c_param: CDd) -> Result<PoleRecord, LocateError> {
    if !matches!(traj.event, TrajEvent::BlowUp { .. }) {
        return Err(LocateError::NoBlowUp);
    }
    // trailing run of states inside the |y| window
    let mut window: Vec<&P1State<CDd>> = Vec::new();
    for s in traj.states.iter().rev() {
        let a = s.y.modulus().to_f64();
        if a > WINDOW_HI {
            if window.is_empty() {
                continue;
            }
            break;
        }
        if a < WINDOW_LO {
            break;
        }
        window.push(s);
    }
    window.reverse();
    if window.len() < 3 {
        return Err(LocateError::TooFewStates { found: window.len() });
    }

    // initial guess from the innermost state: z + 2y/y' = z~ + O(u^5)
    let s_last = window[window.len() - 1];
    let zt0 = s_last.z + CDd::from_i64(2) * s_last.y / s_last.yp;
    // match where both parameters are well conditioned: near |y| ~ 1e3 the
    // c4 term u^4 is still ~1e-12 above roundoff while u is small
    let s_match = *window
        .iter()
        .min_by(|a, b| {
            let da = (a.y.modulus().to_f64().ln() - 3.0 * std::f64::consts::LN_10).abs();
            let db = (b.y.modulus().to_f64().ln() - 3.0 * std::f64::consts::LN_10).abs();
            da.partial_cmp(&db).unwrap()
        })
        .unwrap();
    let (zt, c4) =
        refine_at_state(s_match, (zt0, CDd::zero())).ok_or(LocateError::NoConvergence)?;

    // spread of the location across refits at other trailing states
    let mut spread = 0.0f64;
    for idx in [0, window.len() / 2, window.len().saturating_sub(2)] {
        let s = window[idx];
        let guess = (zt, c4);
        if let Some((zi, _)) = refine_at_state(s, guess) {
            spread = spread.max((zi - zt).modulus().to_f64());
        }
    }

    // structural certificate: subtract the known regular tail and fit the
    // pole block y ~ a_{-2} u^{-2} + a_{-1} u^{-1} + a_0 + a_1 u
    let lx = laurent_from_pole(zt, c4, MODEL_N);
    let m = window.len().min(12);
    let stride = (window.len() + m - 1) / m;
    let picks: Vec<&P1State<CDd>> = window.iter().copied().step_by(stride).collect();
    let mut ata = vec![vec![CDd::zero(); 4]; 4];
    let mut atb = vec![CDd::zero(); 4];
    let u_scale = {
        let mut p = 1.0f64;
        for s in &picks {
            p *= (s.z - zt).modulus().to_f64();
        }
        p.powf(1.0 / picks.len() as f64)
    };
    let sc = Cx::from_real(Dd::from_f64(u_scale));
    for s in &picks {
        let u = s.z - zt;
        // regular tail starting at u^2
        let mut tail = CDd::zero();
        let mut upow = u * u;
        for k in 2..=MODEL_N {
            tail += lx.coeffs[k + 2] * upow;
            upow *= u;
        }
        let r = s.y - tail;
        let us = u / sc;
        let row = [
            CDd::one() / (us * us),
            CDd::one() / us,
            CDd::one(),
            us,
        ];
        for i in 0..4 {
            for j in 0..4 {
                let t = row[i].conj() * row[j];
                ata[i][j] += t;
            }
            atb[i] += row[i].conj() * r;
        }
    }
    let sol = solve_dense(ata, atb).ok_or(LocateError::NoConvergence)?;
    // undo the column scaling: the fitted basis was (u/sc)^k, so a_k = sol_k sc^k
    let a_m2 = sol[0] * sc * sc;
    let a_m1 = sol[1] * sc;
    let a_0 = sol[2];
    let a_1 = sol[3] / sc;
    let dev_m2 = (a_m2 - CDd::one()).modulus().to_f64();
    let zeros = [a_m1.modulus().to_f64(), a_0.modulus().to_f64(), a_1.modulus().to_f64()];
    if dev_m2 > 1e-6 {
        return Err(LocateError::NotDoublePole {
            detail: format!("leading coefficient {dev_m2:.3e} away from 1"),
        });
    }
    let zmax = zeros.iter().cloned().fold(0.0f64, f64::max);
    if zmax > 1e-8 {
        return Err(LocateError::NotDoublePole {
            detail: format!("structural zero violated at {zmax:.3e}"),
        });
    }
    // worst relative misfit of the full model over the fit states
    let mut resid = 0.0f64;
    for s in &picks {
        let (ym, _) = lx.eval(s.z - zt);
        resid = resid.max((ym - s.y).modulus().to_f64() / (1.0 + s.y.modulus().to_f64()));
    }
    if resid > 1e-8 {
        return Err(LocateError::NotDoublePole {
            detail: format!("model misfit {resid:.3e}"),
        });
    }

    let err = spread.max(resid).max(1e-22 * (1.0 + zt.modulus().to_f64()));
    Ok(PoleRecord { z: zt, x: normal_image(zt), c4, order: 2, err, c_param })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::laurent_from_pole;

    fn cz(re: f64, im: f64) -> CDd {
        Cx::new(Dd::from_f64(re), Dd::from_f64(im))
    }

    pub(crate) fn synthetic_blowup(zt: CDd, c4: CDd, dir_arg: f64) -> P1Trajectory<CDd> {
        let lx = laurent_from_pole(zt, c4, 60);
        let dir = Cx::new(Dd::from_f64(dir_arg.cos()), Dd::from_f64(dir_arg.sin()));
        let mut states = Vec::new();
        let mut r = 0.3f64;
        while r > 1e-4 {
            let u = dir * Cx::from_real(Dd::from_f64(r));
            let (y, yp) = lx.eval(u);
            states.push(P1State {
                z: zt + u,
                y,
                yp,
                i_path: CDd::zero(),
                e_const: CDd::zero(),
            });
            r *= 0.8;
        }
        P1Trajectory { states, event: TrajEvent::BlowUp { underflow: false }, max_drift: 0.0 }
    }

    #[test]
    fn recovers_synthetic_pole() {
        let zt = cz(2.0, 0.0);
        let c4 = cz(0.3, 0.0);
        let traj = synthetic_blowup(zt, c4, 0.7);
        let rec = locate_pole(&traj, CDd::zero()).unwrap();
        assert!((rec.z - zt).modulus().to_f64() < 1e-9, "spec tolerance");
        assert!((rec.z - zt).modulus().to_f64() < 1e-20, "head room");
        assert!((rec.c4 - c4).modulus().to_f64() < 1e-6, "spec tolerance");
        assert!((rec.c4 - c4).modulus().to_f64() < 1e-16, "head room");
        assert_eq!(rec.order, 2);
        assert!(rec.err > 0.0);
    }

    #[test]
    fn rejects_wrong_singularity_model() {
        // a fabricated cubic blow-up y = u^{-3}, y' = -3 u^{-4}
        let zt = cz(1.0, 0.5);
        let mut states = Vec::new();
        let mut r = 0.3f64;
        while r > 1e-3 {
            let u = cz(r, 0.0);
            let ui = CDd::one() / u;
            states.push(P1State {
                z: zt + u,
                y: ui * ui * ui,
                yp: -CDd::from_i64(3) * ui * ui * ui * ui,
                i_path: CDd::zero(),
                e_const: CDd::zero(),
            });
            r *= 0.8;
        }
        let traj =
            P1Trajectory { states, event: TrajEvent::BlowUp { underflow: false }, max_drift: 0.0 };
        assert!(locate_pole(&traj, CDd::zero()).is_err());
    }

    #[test]
    fn refuses_trajectories_without_blowup() {
        let traj = P1Trajectory::<CDd> {
            states: vec![P1State::start(CDd::zero(), CDd::zero(), CDd::zero())],
            event: TrajEvent::ReachedEnd,
            max_drift: 0.0,
        };
        assert!(matches!(locate_pole(&traj, CDd::zero()), Err(LocateError::NoBlowUp)));
    }
}
