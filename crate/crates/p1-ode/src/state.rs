//! State and trajectory types shared by both integrators.

use ddreal::{Real, Scalar};

/// P1 state with the path integral and energy constant carried along.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct P1State<S: Scalar> {
    pub z: S,
    pub y: S,
    pub yp: S,
    /// Accumulated integral of y along the traversed path.
    pub i_path: S,
    /// Energy constant fixed at trajectory start.
    pub e_const: S,
}

/// `(y')^2 - 4 y^3 - 2 z y + 2 I` evaluated at a state.
pub fn energy<S: Scalar>(z: S, y: S, yp: S, i_path: S) -> S {
    yp * yp - S::from_i64(4) * y * y * y - S::from_i64(2) * z * y + S::from_i64(2) * i_path
}

impl<S: Scalar> P1State<S> {
    /// Start a trajectory at `z` with I = 0; E is computed from the data.
    pub fn start(z: S, y: S, yp: S) -> Self {
        let i_path = S::zero();
        Self { z, y, yp, i_path, e_const: energy(z, y, yp, i_path) }
    }

    /// Relative drift of the first integral at this state.
    pub fn energy_drift(&self) -> f64 {
        let e = energy(self.z, self.y, self.yp, self.i_path);
        (e - self.e_const).modulus().to_f64() / (1.0 + self.e_const.modulus().to_f64())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalState<S: Scalar> {
    pub x: S,
    pub h: S,
    pub hp: S,
}

/// Step-size and precision policy.
#[derive(Clone, Copy, Debug)]
pub struct StepControl {
    /// Target significant decimal digits for local (per-step) error.
    pub digits: u32,
    /// Fraction of the certified analyticity radius used per step.
    pub safety: f64,
    /// Taylor order per step; local error is estimated by order halving.
    pub max_order: usize,
    /// |y| (or |h|) threshold that ends the trajectory as a blow-up.
    pub blowup: f64,
    /// Cap on the step length (the radius bound can be infinite).
    pub max_step: f64,
}

impl Default for StepControl {
    fn default() -> Self {
        StepControl { digits: 26, safety: 0.25, max_order: 48, blowup: 1e6, max_step: 1.0 }
    }
}

impl StepControl {
    pub fn tol(&self) -> f64 {
        10f64.powi(-(self.digits as i32))
    }

    /// Exploratory double-precision profile.
    pub fn fast() -> Self {
        StepControl { digits: 13, max_order: 24, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrajEvent {
    ReachedEnd,
    /// |y| crossed the threshold; `underflow` marks the step-collapse case
    /// where the threshold itself was never seen.
    BlowUp { underflow: bool },
    /// Defensive cap on the step count.
    MaxSteps,
}

#[derive(Clone, Debug)]
pub struct P1Trajectory<S: Scalar> {
    /// States at accepted steps, starting state included.
    pub states: Vec<P1State<S>>,
    pub event: TrajEvent,
    /// Worst relative energy drift seen over the accepted states.
    pub max_drift: f64,
}

impl<S: Scalar> P1Trajectory<S> {
    pub fn last(&self) -> &P1State<S> {
        self.states.last().expect("trajectory holds at least the start state")
    }
}

#[derive(Clone, Debug)]
pub struct NormalTrajectory<S: Scalar> {
    pub states: Vec<NormalState<S>>,
    pub event: TrajEvent,
}

impl<S: Scalar> NormalTrajectory<S> {
    pub fn last(&self) -> &NormalState<S> {
        self.states.last().expect("trajectory holds at least the start state")
    }
}
