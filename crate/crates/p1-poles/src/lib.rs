//! Double poles of Painleve I solutions: detection, characterization, crossing.
//!
//! Every movable singularity of y'' = 6y^2 + z is a double pole
//!
//! ```text
//! y(z) = 1/u^2 - z~ u^2 / 10 - u^3 / 6 + c4 u^4 + ...,   u = z - z~,
//! ```
//!
//! parameterized by the location z~ and the free coefficient c4.  This crate
//! recovers (z~, c4) from the trailing states of a blown-up trajectory,
//! certifies the double-pole structure, continues solutions through poles,
//! and hunts the first pole on the real-x ray of a transseries solution.

pub mod cross;
pub mod hunt;
pub mod json;
pub mod laurent;
pub mod locate;

pub use cross::{cross_pole, CrossError};
pub use hunt::{first_real_pole, HuntError, PoleOutcome};
pub use json::{pole_from_json, pole_to_json};
pub use laurent::{laurent_from_pole, LaurentExpansion};
pub use locate::{locate_pole, LocateError, PoleRecord};
