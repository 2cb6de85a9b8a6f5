//! The doubly indexed coefficient table of the exponential-level expansion.
//!
//! Writing the solution of the normal form as
//!
//! ```text
//! h(x) ~ sum_{k>=0} C^k e^{-kx} x^{-k/2} htilde_k(x),
//! htilde_k(x) = sum_{m>=0} c_{k,m} x^{-m},
//! ```
//!
//! and matching powers of `e^{-x}` and `x` gives, at level k and order m,
//!
//! ```text
//! alpha_k c_{k,m} + beta_{k,m} c_{k,m-1} + gamma_{k,m} c_{k,m-2} = RHS_{k,m},
//! ```
//!
//! with
//!
//! ```text
//! alpha_k     = k^2 - 1,
//! beta_{k,m}  = 2k(m-1) + k(k-1),
//! gamma_{k,m} = (m-2)(m-2+k) + k^2/4,
//! RHS_{k,m}   = [htilde_0 g_k]_m + (1/2) sum_{i+j=k, i,j>=1} [g_i g_j]_m,
//! ```
//!
//! where `[..]_m` is the order-m coefficient of a product of the htilde
//! series.  For k != 1 this solves directly for c_{k,m}.  Level 1 is
//! resonant (alpha_1 = 0): the order-m equation instead determines
//! c_{1,m-1}, the order-0 equation is vacuous, and the free constant is
//! fixed by the normalization c_{1,0} = 1 (the constant multiplying the
//! whole level-1 exponential is the transseries parameter C, kept outside
//! the table).

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::quartic_coeff;
use crate::series::compute_h0_series_with_quartic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransseriesTable {
    pub k_max: usize,
    pub m_max: usize,
    /// `rows[k][m]` is `c_{k,m}`; row 0 is the level-0 series.
    pub rows: Vec<Vec<BigRational>>,
}

impl TransseriesTable {
    pub fn c(&self, k: usize, m: usize) -> BigRational {
        self.rows[k].get(m).cloned().unwrap_or_else(BigRational::zero)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    /// A resonant linear coefficient vanished at an order the normalization
    /// does not resolve.  With the table's recursion this can only happen at
    /// (k, m) = (1, 1), and only if the forcing were changed to make the
    /// level-1 consistency condition fail.
    #[error("resonant equation at level {k}, order {m} has no solution")]
    Resonance { k: usize, m: usize },
}

pub fn compute_transseries_table(k_max: usize, m_max: usize) -> TransseriesTable {
    compute_transseries_table_with_quartic(k_max, m_max, &quartic_coeff())
        .expect("standard forcing is resonance-free")
}

/// Build the table with the quartic forcing coefficient replaced by `q`.
pub fn compute_transseries_table_with_quartic(
    k_max: usize,
    m_max: usize,
    q: &BigRational,
) -> Result<TransseriesTable, TableError> {
    let half = BigRational::new(1.into(), 2.into());
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(k_max + 1);
    rows.push(compute_h0_series_with_quartic(m_max, q).coeffs);

    // order-m coefficient of htilde_0 * g_k, using row k entries < m only
    let conv0 = |rows: &Vec<Vec<BigRational>>, k: usize, m: usize| -> BigRational {
        let mut s = BigRational::zero();
        for a in 4..=m.min(m_max) {
            if rows[0][a].is_zero() {
                continue;
            }
            if let Some(c) = rows[k].get(m - a) {
                s += &rows[0][a] * c;
            }
        }
        s
    };

    if k_max >= 1 {
        // resonant level: c_{1,0} = 1, then the order-m equation
        //   2(m-1) c_{1,m-1} + gamma_{1,m} c_{1,m-2} = RHS_{1,m}
        // for m = 2..=m_max+1 fills the rest of the row
        let mut row1 = vec![BigRational::one()];
        rows.push(row1.clone());
        // consistency at order 1: every term carries a factor that vanishes,
        // so the right side must too
        if !conv0(&rows, 1, 1).is_zero() {
            return Err(TableError::Resonance { k: 1, m: 1 });
        }
        for m in 2..=m_max + 1 {
            let rhs = conv0(&rows, 1, m);
            let mm2 = BigRational::from_integer((m as i64 - 2).into());
            let gamma = &mm2 * (&mm2 + BigRational::one()) + BigRational::new(1.into(), 4.into());
            let prev = row1[m - 2].clone();
            let denom = BigRational::from_integer((2 * (m as i64 - 1)).into());
            row1.push((rhs - gamma * prev) / denom);
            rows[1] = row1.clone();
        }
    }

    for k in 2..=k_max {
        let kk = BigRational::from_integer((k as i64).into());
        let alpha = &kk * &kk - BigRational::one();
        let mut row = Vec::with_capacity(m_max + 1);
        rows.push(Vec::new());
        for m in 0..=m_max {
            let mut rhs = conv0(&rows, k, m);
            for i in 1..k {
                // [g_i g_{k-i}]_m over ordered pairs, halved
                let mut p = BigRational::zero();
                for a in 0..=m {
                    if rows[i][a].is_zero() {
                        continue;
                    }
                    p += &rows[i][a] * &rows[k - i][m - a];
                }
                rhs += &half * p;
            }
            let mm1 = BigRational::from_integer((m as i64 - 1).into());
            let mm2 = BigRational::from_integer((m as i64 - 2).into());
            let beta = BigRational::from_integer(2.into()) * &kk * &mm1 + &kk * (&kk - BigRational::one());
            let gamma = &mm2 * (&mm2 + &kk) + &kk * &kk * BigRational::new(1.into(), 4.into());
            if m >= 1 {
                rhs -= beta * &row[m - 1];
            }
            if m >= 2 {
                rhs -= gamma * &row[m - 2];
            }
            row.push(rhs / &alpha);
            rows[k] = row.clone();
        }
    }

    Ok(TransseriesTable { k_max, m_max, rows })
}
