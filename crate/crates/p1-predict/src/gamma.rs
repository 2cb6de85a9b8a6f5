//! Upper incomplete gamma, in the scaled form the tail integrals need.
//!
//! The raw value underflows long before the tails do (the e^{-z} factor is
//! always cancelled by an e^{+z} from the integral's change of variables),
//! so the working quantity is the continued-fraction factor
//!
//! ```text
//! Gamma(a, z) = e^{-z} z^a  cf(a, z),    cf ~ 1/z  as z -> infinity,
//! ```
//!
//! evaluated by modified Lentz iteration.  Convergence needs z not too small
//! against |a|; every call site here has z >= 2 x_0 > 4 with |a| growing at
//! most linearly in the truncation order, which the iteration cap covers.

use ddreal::Dd;

const MAX_ITER: usize = 50_000;
const TINY: f64 = 1e-290;

/// The factor cf(a, z) with Gamma(a, z) = e^{-z} z^a cf(a, z); z > 0.
pub fn gamma_cf(a: Dd, z: Dd) -> Dd {
    let b0 = z + Dd::ONE - a;
    let tiny = Dd::from_f64(TINY);
    let mut f = if b0.abs().to_f64() < TINY { tiny } else { b0 };
    let mut c = f;
    let mut d = Dd::ZERO;
    for n in 1..MAX_ITER {
        let nf = Dd::from_i64(n as i64);
        let an = -nf * (nf - a);
        let bn = b0 + nf.mul_pwr2(2.0);
        d = bn + an * d;
        if d.abs().to_f64() < TINY {
            d = tiny;
        }
        d = d.recip();
        c = bn + an / c;
        if c.abs().to_f64() < TINY {
            c = tiny;
        }
        let delta = c * d;
        f *= delta;
        if (delta - Dd::ONE).abs().to_f64() < 3e-33 {
            return f.recip();
        }
    }
    panic!("gamma_cf failed to converge: a = {}, z = {}", a.to_f64(), z.to_f64());
}

/// Scaled tail moment  int_L^inf (L/t)^{nu2/2} e^{-beta (t-L)} t^{-m} dt
/// = L^{1-m} cf(1 - nu2/2 - m, beta L).
pub fn tail_moment(l: Dd, nu2: i32, m: usize, beta: Dd) -> Dd {
    let a = Dd::from_i64(2 - nu2 as i64 - 2 * m as i64).mul_pwr2(0.5);
    l.powi(1 - m as i32) * gamma_cf(a, beta * l)
}
