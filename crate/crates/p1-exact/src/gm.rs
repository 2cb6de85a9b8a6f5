//! The matched-asymptotics functions G_m(s).
//!
//! Summing the exponential expansion along anti-diagonals in the variable
//! `s = 12 e^x sqrt(x) / C` turns the doubly infinite table into a single
//! series `h(x) = sum_m x^{-m} G_m(s)` whose coefficients are rational
//! functions of s.  Substituting into the normal form and collecting powers
//! of `x^{-1}` gives, at order m,
//!
//! ```text
//! L[G_m] = s^2 G_m'' + s G_m' - (1 + G_0) G_m = RHS_m,
//! ```
//!
//! with G_0 = 12 s / (s-1)^2 and
//!
//! ```text
//! RHS_m = -( s^2 G_{m-1}'' + (2 - 2(m-1)) s G_{m-1}' )
//!         -( (s^2/4) G_{m-2}'' + (1/4 - (m-2)) s G_{m-2}' + (m-2)^2 G_{m-2} )
//!         + (1/2) sum_{i+j=m, 0<i,j<m} G_i G_j
//!         + (392/625) [m = 4].
//! ```
//!
//! Each G_m is rational with poles only at s = 0 and s = 1 (the latter is
//! the pole of the summed series in the right half plane).  The solve uses
//! the ansatz `G_m = P(s) / (s^m (s-1)^c)` with the pole-order cap c
//! starting at m+2 and growing on demand, and pins the one-dimensional
//! homogeneous freedom (the decaying kernel element `s(s+1)/(s-1)^3`) by
//! matching the 1/s coefficient of the expansion at infinity to the table:
//! `G_m = sum_k c_{k,m} (12/s)^k` for large s.

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Poly;
use crate::rat;
use crate::ratfun::RationalFnS;
use crate::table::compute_transseries_table;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GmError {
    #[error("no rational solution at order {m} within pole-order cap {cap}")]
    NoSolution { m: usize, cap: usize },
}

/// `G_0 = 12 s / (s-1)^2`
pub fn g0() -> RationalFnS {
    RationalFnS::new(
        Poly::from_i64(&[0, 12]),
        &Poly::from_i64(&[-1, 1]) * &Poly::from_i64(&[-1, 1]),
    )
}

fn apply_l(g: &RationalFnS, g0: &RationalFnS) -> RationalFnS {
    let s1 = RationalFnS::from_poly(Poly::from_i64(&[0, 1]));
    let s2 = RationalFnS::from_poly(Poly::from_i64(&[0, 0, 1]));
    let gp = g.derivative();
    let gpp = gp.derivative();
    &(&(&s2 * &gpp) + &(&s1 * &gp)) - &(&(&RationalFnS::one() + g0) * g)
}

fn rhs_at_order(gs: &[RationalFnS], m: usize) -> RationalFnS {
    let s1 = RationalFnS::from_poly(Poly::from_i64(&[0, 1]));
    let s2 = RationalFnS::from_poly(Poly::from_i64(&[0, 0, 1]));
    let mut rhs = RationalFnS::zero();

    {
        let g = &gs[m - 1];
        let gp = g.derivative();
        let gpp = gp.derivative();
        let lin = &(&s2 * &gpp) + &(&s1 * &gp).scale(&rat(2 - 2 * (m as i64 - 1), 1));
        rhs = &rhs - &lin;
    }
    if m >= 2 {
        let g = &gs[m - 2];
        let gp = g.derivative();
        let gpp = gp.derivative();
        let mm2 = m as i64 - 2;
        let part = &(&(&s2 * &gpp).scale(&rat(1, 4))
            + &(&s1 * &gp).scale(&(rat(1, 4) - rat(mm2, 1))))
            + &g.scale(&rat(mm2 * mm2, 1));
        rhs = &rhs - &part;
    }
    for i in 1..m {
        let j = m - i;
        if j < i {
            break;
        }
        let prod = &gs[i] * &gs[j];
        let w = if i == j { rat(1, 2) } else { rat(1, 1) };
        rhs = &rhs + &prod.scale(&w);
    }
    if m == 4 {
        rhs = &rhs + &RationalFnS::constant(rat(392, 625));
    }
    rhs
}

/// Exact Gaussian elimination on an augmented system; `Some` iff the system
/// has a unique solution.
fn solve_unique(mut rows: Vec<Vec<BigRational>>, nvars: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for col in 0..nvars {
        let Some(pr) = (r0..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(r0, pr);
        let inv = rows[r0][col].recip();
        for c in col..=nvars {
            rows[r0][c] = &rows[r0][c] * &inv;
        }
        for r in 0..rows.len() {
            if r == r0 || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..=nvars {
                let t = &f * &rows[r0][c];
                rows[r][c] -= t;
            }
        }
        pivots.push((r0, col));
        r0 += 1;
    }
    // every variable must be pivotal and no row may read 0 = nonzero
    if pivots.len() != nvars {
        return None;
    }
    if rows.iter().skip(r0).any(|r| !r[nvars].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); nvars];
    for (r, c) in pivots {
        x[c] = rows[r][nvars].clone();
    }
    Some(x)
}

fn solve_order(
    gs: &[RationalFnS],
    m: usize,
    c1m: &BigRational,
    extra: usize,
) -> Option<RationalFnS> {
    let g0 = &gs[0];
    let cap = m + 2 + extra;
    let den = &Poly::monomial(BigRational::one(), m) * &Poly::from_i64(&[-1, 1]).pow(cap);
    let dmax = m + cap;
    let rhs = rhs_at_order(gs, m);

    // columns of the linear map: L applied to each monomial of the ansatz
    let cols: Vec<RationalFnS> = (0..=dmax)
        .map(|i| apply_l(&RationalFnS::new(Poly::monomial(BigRational::one(), i), den.clone()), g0))
        .collect();

    // common denominator, then one linear equation per power of s
    let mut cd = rhs.den().clone();
    for c in &cols {
        let g = cd.gcd(c.den());
        let (q, r) = c.den().divrem(&g);
        debug_assert!(r.is_zero());
        cd = &cd * &q;
    }
    let lift = |f: &RationalFnS| -> Poly {
        let (q, r) = cd.divrem(f.den());
        debug_assert!(r.is_zero());
        f.num() * &q
    };
    let col_nums: Vec<Poly> = cols.iter().map(|c| lift(c)).collect();
    let rhs_num = lift(&rhs);

    let nrows = col_nums
        .iter()
        .map(|p| p.coeffs().len())
        .chain([rhs_num.coeffs().len()])
        .max()
        .unwrap();
    let nvars = dmax + 1;
    let mut rows = Vec::with_capacity(nrows + 1);
    for p in 0..nrows {
        let mut row: Vec<BigRational> = col_nums.iter().map(|c| c.coeff(p)).collect();
        row.push(rhs_num.coeff(p));
        rows.push(row);
    }
    // pin the homogeneous freedom: 1/s coefficient at infinity = 12 c_{1,m}
    let mut pin = vec![BigRational::zero(); nvars + 1];
    pin[dmax - 1] = BigRational::one();
    pin[dmax] = BigRational::from_integer((cap as i64).into());
    pin[nvars] = rat(12, 1) * c1m;
    rows.push(pin);

    let a = solve_unique(rows, nvars)?;
    let p = Poly::new(a);
    let g = RationalFnS::new(p, den);
    // candidate must actually satisfy the order-m equation
    if !(&apply_l(&g, g0) - &rhs).is_zero() {
        return None;
    }
    Some(g)
}

/// Compute `G_0 ..= G_{m_max}`.
pub fn compute_gm(m_max: usize) -> Result<Vec<RationalFnS>, GmError> {
    let table = compute_transseries_table(1, m_max.max(1));
    let mut gs = vec![g0()];
    for m in 1..=m_max {
        let c1m = table.c(1, m);
        let g = (0..=3)
            .find_map(|extra| solve_order(&gs, m, &c1m, extra))
            .ok_or(GmError::NoSolution { m, cap: m + 2 + 3 })?;
        gs.push(g);
    }
    Ok(gs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gm6() -> Vec<RationalFnS> {
        compute_gm(6).unwrap()
    }

    #[test]
    fn g0_values() {
        let g = g0();
        assert_eq!(g.eval(&rat(2, 1)), Some(rat(24, 1)));
        assert_eq!(g.eval(&rat(3, 1)), Some(rat(9, 1)));
        assert_eq!(g.eval(&rat(1, 2)), Some(rat(24, 1)));
        assert_eq!(g.eval(&rat(1, 1)), None);
        // order-0 equation: s^2 G0'' + s G0' - G0 - G0^2/2 = 0
        let s1 = RationalFnS::from_poly(Poly::from_i64(&[0, 1]));
        let s2 = RationalFnS::from_poly(Poly::from_i64(&[0, 0, 1]));
        let gp = g.derivative();
        let gpp = gp.derivative();
        let res = &(&(&s2 * &gpp) + &(&s1 * &gp)) - &(&g + &(&g * &g).scale(&rat(1, 2)));
        assert!(res.is_zero());
    }

    #[test]
    fn g1_closed_form() {
        let gs = compute_gm(1).unwrap();
        let num = Poly::new(vec![rat(2, 10), rat(-30, 10), rat(-175, 10), rat(-15, 10)]);
        let den = &Poly::monomial(rat(1, 1), 1) * &Poly::from_i64(&[-1, 1]).pow(3);
        assert_eq!(gs[1], RationalFnS::new(num, den));
    }

    #[test]
    fn g2_g3_closed_forms() {
        let gs = gm6();
        let num2 = Poly::new(
            [16, 1300, -16880, -2475, 87300, 2025]
                .iter()
                .map(|&n| rat(n, 2400))
                .collect(),
        );
        let den2 = &Poly::monomial(rat(1, 1), 2) * &Poly::from_i64(&[-1, 1]).pow(4);
        assert_eq!(gs[2], RationalFnS::new(num2, den2));

        let num3 = Poly::new(
            [
                -240i64,
                -78640,
                -2475010,
                41815850,
                -48397589,
                -88230711,
                146095539,
                3071961,
            ]
            .iter()
            .map(|&n| rat(-n, 1440000))
            .collect(),
        );
        let den3 = &Poly::monomial(rat(1, 1), 3) * &Poly::from_i64(&[-1, 1]).pow(5);
        assert_eq!(gs[3], RationalFnS::new(num3, den3));
    }

    #[test]
    fn spot_values_through_g4() {
        let gs = gm6();
        assert_eq!(gs[2].eval(&rat(2, 1)), Some(rat(10757, 75)));
        assert_eq!(gs[2].eval(&rat(3, 1)), Some(rat(3674273, 172800)));
        assert_eq!(gs[2].eval(&rat(1, 2)), Some(rat(52997, 1200)));
        assert_eq!(gs[3].eval(&rat(2, 1)), Some(rat(-808756321, 1440000)));
        assert_eq!(gs[3].eval(&rat(3, 1)), Some(rat(-22882787, 320000)));
        assert_eq!(gs[3].eval(&rat(1, 2)), Some(rat(139949083, 720000)));
        assert_eq!(gs[4].eval(&rat(2, 1)), Some(rat(285461838167, 115200000)));
        assert_eq!(gs[4].eval(&rat(3, 1)), Some(rat(64295342322991, 223948800000)));
        assert_eq!(gs[4].eval(&rat(1, 2)), Some(rat(-28781848237, 38400000)));
    }

    /// The large-s expansion of G_m must reproduce the table along its
    /// anti-diagonal: G_m = sum_k c_{k,m} (12/s)^k.  Only k = 1 was imposed
    /// in the solve, so the higher k are an independent cross-check of both
    /// constructions.
    #[test]
    fn expansion_matches_table_antidiagonals() {
        let gs = gm6();
        let t = compute_transseries_table(8, 6);
        for (m, g) in gs.iter().enumerate() {
            let e = g.expansion_at_infinity(9);
            let mut p12 = rat(1, 1);
            for k in 0..=8usize {
                assert_eq!(e[k], &p12 * t.c(k, m), "mismatch at k={k}, m={m}");
                p12 *= rat(12, 1);
            }
        }
    }

    #[test]
    fn poles_confined_to_zero_and_one() {
        let gs = gm6();
        for (m, g) in gs.iter().enumerate().skip(1) {
            let ord0 = g.pole_order(&rat(0, 1));
            let ord1 = g.pole_order(&rat(1, 1));
            assert!(ord0 <= m, "s=0 order too high at m={m}");
            assert_eq!(ord1, m + 2, "s=1 order at m={m}");
            let rebuilt = &Poly::monomial(rat(1, 1), ord0) * &Poly::from_i64(&[-1, 1]).pow(ord1);
            assert_eq!(g.den(), &rebuilt, "extra denominator factors at m={m}");
        }
    }

    #[test]
    fn decay_at_infinity_matches_level_zero() {
        let gs = gm6();
        let t = compute_transseries_table(1, 6);
        for (m, g) in gs.iter().enumerate() {
            let e = g.expansion_at_infinity(1);
            assert_eq!(e[0], t.c(0, m), "constant term at infinity, m={m}");
        }
    }
}
