//! Assembled pole prediction for one asymptotic parameter C.

use crate::brackets::{compute_c0, pole_array, x_asym, x_hi, x_lo, BracketError};
use crate::hier::Hierarchy;
use crate::rho::x_lim;
use ddreal::{CDd, Cx, Dd};
use serde::{Deserialize, Serialize};

/// Everything the location formulas say about the solution picked by C.
/// Real case: the bracket [x_lo, x_hi], the leading asymptotic x_asym, and
/// the ratio-limit root x_lim with its extrapolation diagnostics.  Complex
/// case: the pole array replaces the bracket.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolePrediction {
    pub c_re: f64,
    pub c_im: f64,
    /// Domain threshold the basis was built with.
    pub a_param: f64,
    /// Existence threshold C_0(a_param); real C above it guarantees a pole.
    pub c0: f64,
    pub guaranteed: bool,
    /// Lower bracket end; absent below C_0.
    pub x_lo: Option<f64>,
    pub x_hi: Option<f64>,
    pub x_asym: Option<f64>,
    pub x_lim: Option<f64>,
    /// rho_inf at x_lim with its extrapolation gap.
    pub rho_at_lim: Option<f64>,
    pub rho_err: Option<f64>,
    /// x_lo <= x_lim <= x_hi; a violation is reported, never fatal.
    pub x_lim_in_bracket: Option<bool>,
    /// Complex-case pole array in the normal plane, one per branch index.
    pub poles: Option<Vec<[f64; 2]>>,
}

/// Real-C prediction against a built hierarchy.
pub fn predict(c: f64, a_param: f64, hier: &Hierarchy) -> Result<PolePrediction, BracketError> {
    let c0 = compute_c0(a_param)?;
    let guaranteed = Dd::from_f64(c) > c0;
    let lo = x_lo(c).map(|v| v.to_f64());
    let hi = Some(x_hi(c).to_f64());
    let asym = x_asym(c).map(|v| v.to_f64());
    let lim = x_lim(hier, c);
    let (xl, rho_at_lim, rho_err) = match &lim {
        Some(s) if s.rho.settled => (
            Some(s.x.to_f64()),
            Some(s.rho.value.to_f64()),
            Some(s.rho.err_est),
        ),
        // unsettled extrapolation: report the diagnostics, withhold the root
        Some(s) => (None, Some(s.rho.value.to_f64()), Some(s.rho.err_est)),
        None => (None, None, None),
    };
    let x_lim_in_bracket = match (lo, hi, xl) {
        (Some(l), Some(h), Some(x)) => Some(l <= x && x <= h),
        _ => None,
    };
    Ok(PolePrediction {
        c_re: c,
        c_im: 0.0,
        a_param,
        c0: c0.to_f64(),
        guaranteed,
        x_lo: lo,
        x_hi: hi,
        x_asym: asym,
        x_lim: xl,
        rho_at_lim,
        rho_err,
        x_lim_in_bracket,
        poles: None,
    })
}

/// Complex-C prediction: the branch array for |k| <= karray.
pub fn predict_complex(
    c: (f64, f64),
    a_param: f64,
    karray: i64,
) -> Result<PolePrediction, BracketError> {
    let c0 = compute_c0(a_param)?;
    let cc: CDd = Cx::new(Dd::from_f64(c.0), Dd::from_f64(c.1));
    let poles = pole_array(cc, -karray, karray)
        .into_iter()
        .map(|w| [w.re.to_f64(), w.im.to_f64()])
        .collect();
    Ok(PolePrediction {
        c_re: c.0,
        c_im: c.1,
        a_param,
        c0: c0.to_f64(),
        guaranteed: false,
        x_lo: None,
        x_hi: None,
        x_asym: None,
        x_lim: None,
        rho_at_lim: None,
        rho_err: None,
        x_lim_in_bracket: None,
        poles: Some(poles),
    })
}

/// The transseries scale sigma = (C/12) e^{-x} x^{-1/2} matched to the
/// leading pole model 12 s/(s-1)^2; s = 1 marks the predicted pole.
pub fn s_of_x(c: f64, x: Dd) -> Dd {
    Dd::from_f64(c) / Dd::from_i64(12) * (-x).exp() / x.sqrt()
}

pub fn matched_h0(s: Dd) -> Dd {
    Dd::from_i64(12) * s / (s - Dd::ONE).sqr()
}
