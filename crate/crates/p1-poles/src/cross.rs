//! Analytic continuation through a located double pole.
//!
//! Both residues at a double pole vanish (no u^{-1} term in y, and the
//! antiderivative picks no log), so y and its path integral continue
//! single-valuedly: evaluate the Laurent series on the far side and add the
//! exact increment of the antiderivative between entry and exit.

use crate::laurent::{laurent_from_pole, LaurentExpansion};
use crate::locate::PoleRecord;
use ddreal::{CDd, Scalar};
use p1_ode::P1State;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CrossError {
    #[error("entry or exit point outside the certified Laurent disk")]
    OutsideRadius,
    #[error("entry state disagrees with the pole model by {rel:.3e}")]
    EntryMismatch { rel: f64 },
}

/// fraction of the certified radius we allow series evaluation on
const USE_FRACTION: f64 = 0.7;

fn series_for(rec: &PoleRecord, u_max: f64) -> LaurentExpansion {
    // geometric tail bound |c_k u^k| <= (k+1)/3 * (rho u)^k * rho^2 u^2;
    // grow n until it is far below working precision
    let mut n = 40usize;
    loop {
        let lx = laurent_from_pole(rec.z, rec.c4, n);
        let q = lx.rho * u_max;
        if q < 1.0 {
            let tail = (n as f64 + 2.0) / 3.0 * q.powi(n as i32 + 2) / (1.0 - q);
            if tail < 1e-34 || n >= 400 {
                return lx;
            }
        } else if n >= 400 {
            return lx;
        }
        n += 40;
    }
}

/// Continue `entry` through the pole of `rec` to the point `exit`.
///
/// The energy constant is meromorphic along the solution, so it carries
/// through unchanged; the path integral gains the antiderivative increment.
pub fn cross_pole(
    rec: &PoleRecord,
    entry: &P1State<CDd>,
    exit: CDd,
) -> Result<P1State<CDd>, CrossError> {
    let u_in = entry.z - rec.z;
    let u_out = exit - rec.z;
    let r_in = u_in.modulus().to_f64();
    let r_out = u_out.modulus().to_f64();
    let lx0 = laurent_from_pole(rec.z, rec.c4, 8);
    let r_ok = USE_FRACTION / lx0.rho;
    if r_in == 0.0 || r_out == 0.0 || r_in > r_ok || r_out > r_ok {
        return Err(CrossError::OutsideRadius);
    }
    let lx = series_for(rec, r_in.max(r_out));
    let (y_in, _) = lx.eval(u_in);
    let rel = (y_in - entry.y).modulus().to_f64() / (1.0 + entry.y.modulus().to_f64());
    if rel > 1e-8 {
        return Err(CrossError::EntryMismatch { rel });
    }
    let (y, yp) = lx.eval(u_out);
    let di = lx.antiderivative(u_out) - lx.antiderivative(u_in);
    Ok(P1State { z: exit, y, yp, i_path: entry.i_path + di, e_const: entry.e_const })
}
