//! First pole on the real-x ray of the solution picked by C.
//!
//! Seed the transseries deep in the asymptotic regime, pull the state back
//! to Painleve coordinates, and march the image of the real-x ray (the
//! negative real z axis) inward.  Blow-up hands over to the pole locator;
//! reaching x = 9/4 without one is reported as such, since solutions with
//! small C stay bounded on the remaining stretch.

use crate::locate::{locate_pole, LocateError, PoleRecord};
use ddreal::{CDd, Cx, Dd, Scalar};
use p1_ode::{
    integrate_path, seed_at_infinity, MapError, P1State, SeedError, StepControl, TrajEvent,
    VariableMap,
};
use thiserror::Error;

#[derive(Debug)]
pub enum PoleOutcome {
    Found(PoleRecord),
    /// Integration reached `x_reached` without any sign of a pole.
    NoPoleGuaranteed { x_reached: f64 },
}

#[derive(Debug, Error)]
pub enum HuntError {
    #[error(transparent)]
    Seed(#[from] SeedError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Locate(#[from] LocateError),
    #[error("step budget exhausted before blow-up or arrival")]
    StepBudget,
}

/// End of the hunted stretch; below this x the pole bound gives nothing.
const X_STOP_NUM: i64 = 9;
const X_STOP_DEN: i64 = 4;

pub fn first_real_pole(
    c: Dd,
    rows: &[Vec<Dd>],
    ctl: StepControl,
) -> Result<PoleOutcome, HuntError> {
    let cpar = Cx::from_real(c);
    // push the seed out until sigma is safely small
    let mut x_seed = 30.0f64;
    while x_seed < 200.0 {
        let sigma = c.abs().to_f64() * (-x_seed).exp() / x_seed.sqrt();
        if sigma < 1.0 / 40.0 {
            break;
        }
        x_seed += 5.0;
    }
    let (ns, _) = seed_at_infinity(cpar, Dd::from_f64(x_seed), rows)?;
    let (z0, y0, yp0) = VariableMap::inverse(ns.x, ns.h, ns.hp)?;
    let z_stop = VariableMap::z_of_x(Cx::from_real(Dd::from_ratio(X_STOP_NUM, X_STOP_DEN)))?;
    let traj = integrate_path(P1State::start(z0, y0, yp0), &[z_stop], ctl);
    match traj.event {
        TrajEvent::BlowUp { .. } => Ok(PoleOutcome::Found(locate_pole(&traj, cpar)?)),
        TrajEvent::ReachedEnd => {
            let x_reached = match VariableMap::x_of_z(traj.last().z) {
                Ok(x) => x.re.to_f64(),
                Err(_) => X_STOP_NUM as f64 / X_STOP_DEN as f64,
            };
            Ok(PoleOutcome::NoPoleGuaranteed { x_reached })
        }
        TrajEvent::MaxSteps => Err(HuntError::StepBudget),
    }
}
