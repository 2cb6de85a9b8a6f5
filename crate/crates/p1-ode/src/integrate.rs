//! Taylor-method stepping along polyline paths.
//!
//! Each step recomputes the local Taylor coefficients, picks a step length
//! from the certified analyticity radius, and validates it by order halving:
//! the difference between the full-order and half-order partial sums is the
//! local error estimate.  Steps that land exactly on a waypoint snap to it.

use crate::map::VariableMap;
use crate::state::{NormalState, NormalTrajectory, P1State, P1Trajectory, StepControl, TrajEvent};
use crate::taylor::{normal_taylor_coeffs, p1_taylor_coeffs, radius_bound};
use ddreal::{Cx, Real, Scalar};

const MAX_STEPS: usize = 400_000;
const MAX_HALVINGS: usize = 60;

/// Single ascending pass over the step polynomial: value, derivative, the
/// antiderivative piece `int_0^u y`, the first moment `int_0^u t y(t) dt`,
/// and the half-order partial sums used for error estimation.
fn eval_series<S: Scalar>(c: &[S], u: S) -> (S, S, S, S, S, S) {
    let half = (c.len() - 1) / 2;
    let mut y = S::zero();
    let mut yp = S::zero();
    let mut di = S::zero();
    let mut mom = S::zero();
    let mut y_half = S::zero();
    let mut yp_half = S::zero();
    let mut uk = S::one();
    let mut uk_prev = S::zero();
    for (k, &ck) in c.iter().enumerate() {
        let term = ck * uk;
        y += term;
        di += term * u * S::from_ratio(1, (k + 1) as i64);
        mom += term * u * u * S::from_ratio(1, (k + 2) as i64);
        if k >= 1 {
            yp += ck * S::from_i64(k as i64) * uk_prev;
        }
        if k == half {
            y_half = y;
            yp_half = yp;
        }
        uk_prev = uk;
        uk *= u;
    }
    (y, yp, di, mom, y_half, yp_half)
}

/// Initial step fraction: the half-order error behaves like (t/R)^{N/2}, so
/// aim it at the tolerance and let halving mop up the remainder.
fn step_guess(r: f64, safety: f64, tol: f64, order: usize) -> f64 {
    let frac = tol.powf(1.0 / (order / 2).max(1) as f64);
    r * safety.min(frac)
}

pub fn integrate_path<S: Scalar>(
    start: P1State<S>,
    path: &[S],
    ctl: StepControl,
) -> P1Trajectory<S> {
    integrate_path_with_moment(start, path, ctl, S::zero()).0
}

/// As [`integrate_path`], additionally accumulating `int (z - center) y dz`
/// along the whole path (used for residue certificates on closed contours).
pub fn integrate_path_with_moment<S: Scalar>(
    start: P1State<S>,
    path: &[S],
    ctl: StepControl,
    center: S,
) -> (P1Trajectory<S>, S) {
    let mut states = vec![start];
    let mut cur = start;
    let mut moment = S::zero();
    let mut max_drift = start.energy_drift();
    let mut steps = 0usize;
    let tol = ctl.tol();
    let mut event = TrajEvent::ReachedEnd;
    'path: for &wp in path {
        loop {
            if !(cur.y.is_finite() && cur.yp.is_finite()) || cur.y.norm1() > ctl.blowup {
                event = TrajEvent::BlowUp { underflow: false };
                break 'path;
            }
            let delta = wp - cur.z;
            let rem = delta.modulus().to_f64();
            if rem == 0.0 {
                continue 'path;
            }
            if steps >= MAX_STEPS {
                event = TrajEvent::MaxSteps;
                break 'path;
            }
            steps += 1;
            let r = radius_bound(cur.z, cur.y, cur.yp, ctl.max_step);
            let t = step_guess(r, ctl.safety, tol, ctl.max_order).min(rem);
            let mut landing = t >= rem;
            let mut u = if landing { delta } else { delta * S::from_f64(t / rem) };
            let coeffs = p1_taylor_coeffs(cur.z, cur.y, cur.yp, ctl.max_order);
            let mut halvings = 0usize;
            let (ynew, ypnew, di, dmom) = loop {
                let (yv, ypv, di, mom, yh, yph) = eval_series(&coeffs, u);
                let err = ((yv - yh).norm1() + (ypv - yph).norm1()) / (1.0 + yv.norm1());
                if err <= tol {
                    break (yv, ypv, di, mom);
                }
                halvings += 1;
                u = u.mul_pwr2(0.5);
                landing = false;
                if halvings > MAX_HALVINGS || u.norm1() < 1e-28 * (1.0 + cur.z.norm1()) {
                    event = TrajEvent::BlowUp { underflow: true };
                    break 'path;
                }
            };
            if !(ynew.is_finite() && ypnew.is_finite()) {
                event = TrajEvent::BlowUp { underflow: false };
                break 'path;
            }
            moment += (cur.z - center) * di + dmom;
            cur = P1State {
                z: if landing { wp } else { cur.z + u },
                y: ynew,
                yp: ypnew,
                i_path: cur.i_path + di,
                e_const: cur.e_const,
            };
            max_drift = max_drift.max(cur.energy_drift());
            states.push(cur);
        }
    }
    (P1Trajectory { states, event, max_drift }, moment)
}

/// Step control for the normal form: map the state to P1 variables, take the
/// certified radius there, shrink it away from the branch cut, and pull it
/// back with a quarter-theorem distortion factor.  Any slack only shortens
/// steps; accuracy is enforced by the order-halving error check.
fn normal_radius<R: Real>(s: &NormalState<Cx<R>>, max_step: f64) -> f64 {
    let xa = s.x.modulus().to_f64();
    match VariableMap::inverse(s.x, s.h, s.hp) {
        Ok((z, y, yp)) => {
            let rz = radius_bound(z, y, yp, f64::INFINITY);
            let dist_cut = if z.re <= R::zero() {
                z.modulus().to_f64()
            } else {
                z.im.abs().to_f64()
            };
            let rz_used = rz.min(0.9 * dist_cut);
            let dxdz = (z.modulus().to_f64() * 24.0).powf(0.25);
            (0.25 * rz_used * dxdz).min(0.9 * xa).min(max_step)
        }
        // x on its cut: the ODE itself is fine away from x = 0
        Err(_) => (0.5 * xa).min(max_step),
    }
}

pub fn integrate_normal<R: Real>(
    start: NormalState<Cx<R>>,
    path: &[Cx<R>],
    ctl: StepControl,
) -> NormalTrajectory<Cx<R>> {
    let mut states = vec![start];
    let mut cur = start;
    let mut steps = 0usize;
    let tol = ctl.tol();
    let mut event = TrajEvent::ReachedEnd;
    'path: for &wp in path {
        loop {
            if !(cur.h.is_finite() && cur.hp.is_finite()) || cur.h.norm1() > ctl.blowup {
                event = TrajEvent::BlowUp { underflow: false };
                break 'path;
            }
            let delta = wp - cur.x;
            let rem = delta.modulus().to_f64();
            if rem == 0.0 {
                continue 'path;
            }
            if steps >= MAX_STEPS {
                event = TrajEvent::MaxSteps;
                break 'path;
            }
            steps += 1;
            let r = normal_radius(&cur, ctl.max_step);
            let t = step_guess(r, ctl.safety, tol, ctl.max_order).min(rem);
            let mut landing = t >= rem;
            let mut u = if landing {
                delta
            } else {
                delta * Cx::from_real(R::from_f64(t / rem))
            };
            let coeffs = normal_taylor_coeffs(cur.x, cur.h, cur.hp, ctl.max_order);
            let mut halvings = 0usize;
            let (hnew, hpnew) = loop {
                let (hv, hpv, _, _, hh, hph) = eval_series(&coeffs, u);
                let err = ((hv - hh).norm1() + (hpv - hph).norm1()) / (1.0 + hv.norm1());
                if err <= tol {
                    break (hv, hpv);
                }
                halvings += 1;
                u = u.mul_pwr2(0.5);
                landing = false;
                if halvings > MAX_HALVINGS || u.norm1() < 1e-28 * (1.0 + cur.x.norm1()) {
                    event = TrajEvent::BlowUp { underflow: true };
                    break 'path;
                }
            };
            if !(hnew.is_finite() && hpnew.is_finite()) {
                event = TrajEvent::BlowUp { underflow: false };
                break 'path;
            }
            cur = NormalState {
                x: if landing { wp } else { cur.x + u },
                h: hnew,
                hp: hpnew,
            };
            states.push(cur);
        }
    }
    NormalTrajectory { states, event }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ddreal::{CDd, Dd};

    fn c(re: f64, im: f64) -> CDd {
        Cx::new(Dd::from_f64(re), Dd::from_f64(im))
    }

    #[test]
    fn steps_respect_radius_bound() {
        let start = P1State::start(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let traj = integrate_path(start, &[c(1.0, 0.0)], StepControl::default());
        assert_eq!(traj.event, TrajEvent::ReachedEnd);
        let ctl = StepControl::default();
        for w in traj.states.windows(2) {
            let r = radius_bound(w[0].z, w[0].y, w[0].yp, ctl.max_step);
            let step = (w[1].z - w[0].z).modulus().to_f64();
            assert!(step <= ctl.safety * r * (1.0 + 1e-12), "step {step} vs R {r}");
        }
        // landing snaps exactly onto the waypoint
        assert_eq!(traj.last().z, c(1.0, 0.0));
    }

    #[test]
    fn closed_contour_in_regular_region_returns_and_cancels() {
        let start = P1State::start(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let square = [c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0), c(0.0, 0.0)];
        let (traj, moment) =
            integrate_path_with_moment(start, &square, StepControl::default(), c(0.5, 0.5));
        assert_eq!(traj.event, TrajEvent::ReachedEnd);
        let end = traj.last();
        assert!((end.y - start.y).modulus().to_f64() < 1e-23);
        assert!((end.yp - start.yp).modulus().to_f64() < 1e-23);
        // y analytic inside the square: both contour integrals vanish
        assert!(end.i_path.modulus().to_f64() < 1e-23);
        assert!(moment.modulus().to_f64() < 1e-23);
        assert!(traj.max_drift < 1e-24);
    }

    #[test]
    fn reversal_recovers_start() {
        let start = P1State::start(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let fwd = integrate_path(start, &[c(1.0, 0.0)], StepControl::default());
        let back = integrate_path(*fwd.last(), &[c(0.0, 0.0)], StepControl::default());
        let end = back.last();
        assert_eq!(back.event, TrajEvent::ReachedEnd);
        assert!(end.y.modulus().to_f64() < 1e-23);
        assert!(end.yp.modulus().to_f64() < 1e-23);
        assert!(end.i_path.modulus().to_f64() < 1e-23);
    }

    #[test]
    fn taylor_coefficients_match_divided_differences() {
        let z0 = c(0.3, 0.0);
        let y0 = c(0.2, 0.0);
        let yp0 = c(-0.1, 0.0);
        let coeffs = p1_taylor_coeffs(z0, y0, yp0, 6);
        let ctl = StepControl::default();
        let e = 1e-4;
        let sample = |k: f64| {
            let start = P1State::start(z0, y0, yp0);
            let traj = integrate_path(start, &[z0 + c(k * e, 0.0)], ctl);
            assert_eq!(traj.event, TrajEvent::ReachedEnd);
            traj.last().y
        };
        let (ym2, ym1, y1, y2) = (sample(-2.0), sample(-1.0), sample(1.0), sample(2.0));
        let ee = Dd::from_f64(e);
        let d2 = (ym1 + y1 - y0.mul_pwr2(2.0)) / Cx::from_real(ee * ee);
        let d3 = (y2 - y1.mul_pwr2(2.0) + ym1.mul_pwr2(2.0) - ym2)
            / Cx::from_real((ee * ee * ee).mul_pwr2(2.0));
        let six_y0 = y0.mul_pwr2(4.0) + y0.mul_pwr2(2.0);
        let d4 = (y2 - y1.mul_pwr2(4.0) + six_y0 - ym1.mul_pwr2(4.0) + ym2)
            / Cx::from_real(ee.powi(4));
        let six = Cx::from_real(Dd::from_f64(6.0));
        let t24 = Cx::from_real(Dd::from_f64(24.0));
        assert!((d2.mul_pwr2(0.5) - coeffs[2]).modulus().to_f64() < 1e-6);
        assert!((d3 / six - coeffs[3]).modulus().to_f64() < 1e-6);
        assert!((d4 / t24 - coeffs[4]).modulus().to_f64() < 1e-6);
    }

    #[test]
    fn blow_up_reports_last_regular_state() {
        // y'' = 6y^2 + z with y(0)=3 grows monotonically and hits a pole
        let start = P1State::start(c(0.0, 0.0), c(3.0, 0.0), c(0.0, 0.0));
        let traj = integrate_path(start, &[c(5.0, 0.0)], StepControl::default());
        assert_eq!(traj.event, TrajEvent::BlowUp { underflow: false });
        let last = traj.last();
        assert!(last.y.modulus().to_f64() > 1e6);
        assert!(last.z.modulus().to_f64() < 5.0);
        // energy still conserved on the way in
        assert!(traj.max_drift < 1e-10, "drift {:.3e}", traj.max_drift);
    }

    #[test]
    fn fast_profile_still_accurate() {
        let start = P1State::start(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let traj = integrate_path(start, &[c(1.0, 0.0)], StepControl::fast());
        let best = integrate_path(start, &[c(1.0, 0.0)], StepControl::default());
        let diff = (traj.last().y - best.last().y).modulus().to_f64();
        assert!(diff < 1e-11, "diff {diff:.3e}");
    }
}
