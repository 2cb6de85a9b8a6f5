//! High-precision Taylor-method integration of Painleve I
//!
//! ```text
//! y'' = 6 y^2 + z                                  (P1)
//! h'' + h'/x - h - h^2/2 - (392/625) x^{-4} = 0    (normal form)
//! ```
//!
//! along arbitrary polyline paths in the complex plane, at double-double
//! precision by default (f64 available for exploratory work).  Step sizes
//! are controlled by a certified lower bound on the local analyticity
//! radius, and the first integral
//!
//! ```text
//! E = (y')^2 - 4 y^3 - 2 z y + 2 I,   I = integral of y along the path,
//! ```
//!
//! is tracked online as a correctness probe.  Blow-up (|y| crossing a
//! threshold) ends a trajectory with the last regular states retained, which
//! is what downstream pole location consumes.

pub mod convert;
pub mod integrate;
pub mod io;
pub mod map;
pub mod seed;
pub mod state;
pub mod taylor;

pub use convert::{dd_from_ratio, dd_rows};
pub use integrate::{integrate_normal, integrate_path, integrate_path_with_moment};
pub use map::{MapError, VariableMap};
pub use seed::{seed_at_infinity, SeedError, SeedInfo};
pub use state::{NormalState, NormalTrajectory, P1State, P1Trajectory, StepControl, TrajEvent};
pub use taylor::{normal_taylor_coeffs, p1_taylor_coeffs, radius_bound};
