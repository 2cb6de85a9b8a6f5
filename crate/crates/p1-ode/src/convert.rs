//! Lossless-as-possible conversion from exact rationals to double-double.
//!
//! A dd value carries ~106 bits of mantissa, so we compute the quotient
//! n/d as a ~120-bit integer first and only then scale back by the power
//! of two, keeping every retained bit exact.

use ddreal::Dd;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Round a rational to double-double with error below one ulp of the result.
pub fn dd_from_ratio(r: &BigRational) -> Dd {
    if r.is_zero() {
        return Dd::from_f64(0.0);
    }
    let neg = r.is_negative();
    let n = r.numer().abs();
    let d = r.denom().clone();
    // scale so the integer quotient has ~120 bits
    let shift = 120i64 + d.bits() as i64 - n.bits() as i64;
    let q: BigInt = if shift >= 0 {
        (n << shift as u64) / d
    } else {
        n / (d << (-shift) as u64)
    };
    let (_, digits) = q.to_u32_digits();
    let mut acc = Dd::from_f64(0.0);
    for &chunk in digits.iter().rev() {
        acc = acc.ldexp(32) + Dd::from_f64(chunk as f64);
    }
    // apply the compensating 2^{-shift} in steps ldexp can express
    let mut rem = -shift;
    while rem != 0 {
        let step = rem.clamp(-500, 500);
        acc = acc.ldexp(step as i32);
        rem -= step;
    }
    if neg {
        -acc
    } else {
        acc
    }
}

/// Convert a rational table (for instance transseries rows) to dd entries.
pub fn dd_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<Dd>> {
    rows.iter()
        .map(|row| row.iter().map(dd_from_ratio).collect())
        .collect()
}
