//! Closed form for the integral-operator norm bound used by the contraction
//! argument.  The kernel is majorized by (1/2)(1 - e^{-2(s-x0)}) and the
//! potential piece by 1/(4s^2) + s^{-4}, so
//!
//! ```text
//! J(x0) = (1/2)[1/(4 x0) + 1/(3 x0^3)]
//!       - (1/4)(2 x0)^{-1} CF(-1, 2 x0) - 4 (2 x0)^{-3} CF(-3, 2 x0)
//! ```
//!
//! with Gamma(a, z) = e^{-z} z^a CF(a, z).  Anything below 1 certifies the
//! fixed point; the worst case over x0 >= 9/4 is x0 = 9/4 itself, where the
//! crude bound (1/(8 x0))(1 + 1/(3 x0^2)) = 259/4374 already suffices.

use crate::gamma::gamma_cf;
use ddreal::Dd;

pub fn j_worst(x0: Dd) -> Dd {
    let two_x0 = x0.mul_pwr2(2.0);
    let direct = (x0.mul_pwr2(4.0).recip() + (x0.powi(3) * Dd::from_i64(3)).recip()).mul_pwr2(0.5);
    let e2 = two_x0.recip().mul_pwr2(0.25) * gamma_cf(Dd::from_i64(-1), two_x0);
    let e4 = two_x0.powi(-3).mul_pwr2(4.0) * gamma_cf(Dd::from_i64(-3), two_x0);
    direct - e2 - e4
}

/// The displayed bound (1/(8 x0))(1 + 1/(3 x0^2)) at x0 = 9/4.
pub fn j_bound_at_nine_fourths() -> Dd {
    Dd::from_i64(259) / Dd::from_i64(4374)
}
