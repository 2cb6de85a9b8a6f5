//! Exact (rational-arithmetic) data for the Painleve I normal form
//!
//! ```text
//! h'' + h'/x - h - h^2/2 - (392/625) x^{-4} = 0.
//! ```
//!
//! Everything here is computed over `BigRational`, so results are reproducible
//! bit for bit and can be frozen as test goldens.  Floating-point consumers
//! convert at the boundary.
//!
//! Contents:
//! * [`series`]: power series in 1/x and the level-0 asymptotic series `h0`.
//! * [`table`]: the doubly indexed coefficient table `c_{k,m}` of the full
//!   exponential expansion `h ~ sum_k C^k e^{-kx} x^{-k/2} htilde_k(x)`.
//! * [`poly`] / [`ratfun`]: dense polynomials and rational functions in the
//!   matching variable `s`, with a canonical (monic denominator) form.
//! * [`gm`]: the matched-asymptotics functions `G_m(s)` summing the table
//!   along anti-diagonals.
//! * [`json`]: serialization of the table and of `G_m` to a stable schema.

pub mod gm;
pub mod json;
pub mod poly;
pub mod ratfun;
pub mod series;
pub mod table;

pub use gm::{compute_gm, GmError};
pub use poly::Poly;
pub use ratfun::RationalFnS;
pub use series::{compute_h0_series, PowerSeries1x};
pub use table::{compute_transseries_table, compute_transseries_table_with_quartic, TableError, TransseriesTable};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for an exact rational from an integer pair.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The quartic forcing coefficient 392/625 of the normal form.
pub fn quartic_coeff() -> BigRational {
    rat(392, 625)
}
