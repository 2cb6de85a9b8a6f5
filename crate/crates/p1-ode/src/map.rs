//! The change of variables between P1 and its normal form:
//!
//! ```text
//! 30 x = (-24 z)^{5/4},      i sqrt(6/z) y = -1 + 4/(25 x^2) - h,
//! ```
//!
//! with the principal branch `arg(-24z) in (-pi, pi]`, under which x real
//! positive corresponds to z on the negative real axis.  The branch cut in
//! the z plane is the positive real axis (x side: the negative real axis).

use ddreal::{Cx, Real, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("the map is singular at the origin")]
    ZeroPoint,
    #[error("point lies on the branch cut")]
    BranchCut,
}

pub struct VariableMap;

impl VariableMap {
    /// `x = (-24z)^{5/4} / 30`
    pub fn x_of_z<R: Real>(z: Cx<R>) -> Result<Cx<R>, MapError> {
        Self::check_z(z)?;
        let w = -z * Cx::from_real(R::from_i64(24));
        Ok(w.powf_real(R::from_ratio(5, 4)) * Cx::from_real(R::from_ratio(1, 30)))
    }

    /// `z = -(30x)^{4/5} / 24`
    pub fn z_of_x<R: Real>(x: Cx<R>) -> Result<Cx<R>, MapError> {
        Self::check_x(x)?;
        let w = x * Cx::from_real(R::from_i64(30));
        Ok(-(w.powf_real(R::from_ratio(4, 5)) * Cx::from_real(R::from_ratio(1, 24))))
    }

    /// (z, y, y') -> (x, h, h') with the chain-rule derivative,
    /// `dz/dx = -(-24z)^{-1/4}`.
    pub fn forward<R: Real>(
        z: Cx<R>,
        y: Cx<R>,
        yp: Cx<R>,
    ) -> Result<(Cx<R>, Cx<R>, Cx<R>), MapError> {
        let x = Self::x_of_z(z)?;
        let q = Cx::i() * (Cx::from_real(R::from_i64(6)) / z).sqrt();
        let x2 = x * x;
        let h = -Cx::one() + Cx::from_real(R::from_ratio(4, 25)) / x2 - q * y;
        let w = -z * Cx::from_real(R::from_i64(24));
        let dzdx = -w.powf_real(R::from_ratio(-1, 4));
        let two_z = z.mul_pwr2(2.0);
        let hp = -Cx::from_real(R::from_ratio(8, 25)) / (x2 * x) - q * (yp - y / two_z) * dzdx;
        Ok((x, h, hp))
    }

    /// (x, h, h') -> (z, y, y'), inverse of [`Self::forward`].
    pub fn inverse<R: Real>(
        x: Cx<R>,
        h: Cx<R>,
        hp: Cx<R>,
    ) -> Result<(Cx<R>, Cx<R>, Cx<R>), MapError> {
        let z = Self::z_of_x(x)?;
        let q = Cx::i() * (Cx::from_real(R::from_i64(6)) / z).sqrt();
        let x2 = x * x;
        let f = -Cx::one() + Cx::from_real(R::from_ratio(4, 25)) / x2 - h;
        let y = f / q;
        let fp = -Cx::from_real(R::from_ratio(8, 25)) / (x2 * x) - hp;
        let w = -z * Cx::from_real(R::from_i64(24));
        let dxdz = -w.powf_real(R::from_ratio(1, 4));
        let two_z = z.mul_pwr2(2.0);
        let yp = fp * dxdz / q + f / (two_z * q);
        Ok((z, y, yp))
    }

    fn check_z<R: Real>(z: Cx<R>) -> Result<(), MapError> {
        if z.re == R::zero() && z.im == R::zero() {
            return Err(MapError::ZeroPoint);
        }
        // cut: -24z on the negative real axis, i.e. z real positive
        if z.im == R::zero() && z.re > R::zero() {
            return Err(MapError::BranchCut);
        }
        Ok(())
    }

    fn check_x<R: Real>(x: Cx<R>) -> Result<(), MapError> {
        if x.re == R::zero() && x.im == R::zero() {
            return Err(MapError::ZeroPoint);
        }
        if x.im == R::zero() && x.re < R::zero() {
            return Err(MapError::BranchCut);
        }
        Ok(())
    }
}
