//! Double-double ("dd") arithmetic: pairs of f64 giving ~31 significant digits,
//! plus a generic complex type and the `Scalar`/`Real` traits the integrators
//! are written against. Everything is `Copy` and allocation-free.

mod cx;
mod dd;
mod real;

pub use cx::Cx;
pub use dd::{Dd, E, EPS, FRAC_PI_2, FRAC_PI_4, LN_10, LN_2, PI, TWO_PI};
pub use real::{Real, Scalar};

/// Complex double-double, the workhorse type for pole-plane integration.
pub type CDd = Cx<Dd>;
