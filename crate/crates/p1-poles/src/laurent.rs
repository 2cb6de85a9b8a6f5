//! Laurent data of a double pole of y'' = 6y^2 + z.
//!
//! Near a pole z~ every solution is
//!
//! ```text
//! y(z) = u^{-2} - (z~/10) u^2 - u^3/6 + c_4 u^4 + ...,   u = z - z~,
//! ```
//!
//! with c_4 free; the pair (z~, c_4) determines the solution globally.  The
//! higher coefficients follow from the recursion
//!
//! ```text
//! [(k+1)(k+2) - 12] c_{k+2} = 6 sum_{m=0}^{k} c_m c_{k-m}   (k >= 3),
//! ```
//!
//! and obey |c_k| <= (k+1) rho^{k+2} / 3 for the rho computed from the seed
//! block, which certifies convergence on |u| < 1/rho.

use ddreal::{CDd, Scalar};

#[derive(Debug, Clone)]
pub struct LaurentExpansion {
    pub z_tilde: CDd,
    pub c4: CDd,
    /// Highest regular index carried.
    pub n: usize,
    /// `coeffs[j]` is c_{j-2}; c_{-2} = 1 leads.
    pub coeffs: Vec<CDd>,
    /// Growth-certificate rate: |c_k| <= (k+1) rho^{k+2} / 3 for all k.
    pub rho: f64,
}

pub fn laurent_from_pole(z_tilde: CDd, c4: CDd, n: usize) -> LaurentExpansion {
    assert!(n >= 4, "expansion must reach the free coefficient c_4");
    let mut c = vec![CDd::zero(); n + 3];
    c[0] = CDd::one();
    c[4] = z_tilde * CDd::from_ratio(-1, 10);
    c[5] = CDd::from_ratio(-1, 6);
    c[6] = c4;
    for k in 3..=(n as i64 - 2) {
        // k = 2 is the resonant index where c_4 was injected
        let mut s = CDd::zero();
        for m in 0..=k {
            s += c[(m + 2) as usize] * c[(k - m + 2) as usize];
        }
        let denom = ((k + 1) * (k + 2) - 12) as i64;
        c[(k + 4) as usize] = s * CDd::from_ratio(6, denom);
    }
    // seed rate: smallest rho making the bound hold at i = 2, 3, 4; the
    // recursion then propagates the bound to every later index
    let mut rho = 0.0f64;
    for i in [2usize, 3, 4] {
        let a = c[i + 2].modulus().to_f64();
        rho = rho.max((3.0 * a / (i + 1) as f64).powf(1.0 / (i + 2) as f64));
    }
    // belt and suspenders: fold in any computed coefficient that pokes above
    for (j, ck) in c.iter().enumerate().skip(7) {
        let k = j - 2;
        let a = ck.modulus().to_f64();
        if a > 0.0 {
            rho = rho.max((3.0 * a / (k + 1) as f64).powf(1.0 / (k + 2) as f64));
        }
    }
    LaurentExpansion { z_tilde, c4, n, coeffs: c, rho }
}

impl LaurentExpansion {
    /// c_k for k in -2..=n.
    pub fn coeff(&self, k: i64) -> CDd {
        self.coeffs[(k + 2) as usize]
    }

    /// Certified convergence radius 1/rho.
    pub fn radius(&self) -> f64 {
        1.0 / self.rho
    }

    /// (y, y') at u = z - z~.
    pub fn eval(&self, u: CDd) -> (CDd, CDd) {
        let ui = CDd::one() / u;
        let ui2 = ui * ui;
        let mut y = ui2;
        let mut yp = -(ui2 * ui).mul_pwr2(2.0);
        let mut upow = CDd::one();
        let mut upow_prev = CDd::zero();
        for k in 0..=self.n {
            let ck = self.coeffs[k + 2];
            y += ck * upow;
            if k >= 1 {
                yp += ck * CDd::from_i64(k as i64) * upow_prev;
            }
            upow_prev = upow;
            upow *= u;
        }
        (y, yp)
    }

    /// Antiderivative F(u) = int y du with F's constant fixed so that the
    /// pole contributes -1/u; single-valued because c_{-1} = 0.
    pub fn antiderivative(&self, u: CDd) -> CDd {
        let mut f = -CDd::one() / u;
        let mut upow = CDd::one();
        for k in 0..=self.n {
            upow *= u;
            f += self.coeffs[k + 2] * upow * CDd::from_ratio(1, (k + 1) as i64);
        }
        f
    }
}
