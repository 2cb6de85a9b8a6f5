//! JSON serialization with a stable schema.
//!
//! Rationals are written as explicit `"p/q"` strings (always with the
//! denominator, reduced, `q > 0`) so files are exact and diffable.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Poly;
use crate::ratfun::RationalFnS;
use crate::table::TransseriesTable;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("bad rational literal {0:?}")]
    BadRational(String),
    #[error("expected kind {expected:?}, found {found:?}")]
    BadKind { expected: &'static str, found: String },
    #[error("entry rows do not match K, M")]
    BadShape,
    #[error(transparent)]
    Serde(#[from] serde_json::Error),
}

pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_from_str(s: &str) -> Result<BigRational, JsonError> {
    let bad = || JsonError::BadRational(s.to_owned());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    kind: String,
    #[serde(rename = "K")]
    k: usize,
    #[serde(rename = "M")]
    m: usize,
    entries: Vec<Vec<String>>,
}

const TABLE_KIND: &str = "transseries_table";

pub fn table_to_json(t: &TransseriesTable) -> String {
    let doc = TableDoc {
        kind: TABLE_KIND.to_owned(),
        k: t.k_max,
        m: t.m_max,
        entries: t
            .rows
            .iter()
            .map(|row| row.iter().map(rational_to_string).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("table serializes")
}

pub fn table_from_json(s: &str) -> Result<TransseriesTable, JsonError> {
    let doc: TableDoc = serde_json::from_str(s)?;
    if doc.kind != TABLE_KIND {
        return Err(JsonError::BadKind { expected: TABLE_KIND, found: doc.kind });
    }
    if doc.entries.len() != doc.k + 1 || doc.entries.iter().any(|r| r.len() != doc.m + 1) {
        return Err(JsonError::BadShape);
    }
    let rows = doc
        .entries
        .iter()
        .map(|row| row.iter().map(|s| rational_from_str(s)).collect())
        .collect::<Result<Vec<Vec<BigRational>>, _>>()?;
    Ok(TransseriesTable { k_max: doc.k, m_max: doc.m, rows })
}

#[derive(Serialize, Deserialize)]
struct GmDoc {
    m: usize,
    /// numerator coefficients, ascending powers of s
    num: Vec<String>,
    /// denominator coefficients, ascending powers of s (monic)
    den: Vec<String>,
}

pub fn gm_to_json(m: usize, g: &RationalFnS) -> String {
    let ser = |p: &Poly| p.coeffs().iter().map(rational_to_string).collect();
    let doc = GmDoc { m, num: ser(g.num()), den: ser(g.den()) };
    serde_json::to_string_pretty(&doc).expect("G_m serializes")
}

pub fn gm_from_json(s: &str) -> Result<(usize, RationalFnS), JsonError> {
    let doc: GmDoc = serde_json::from_str(s)?;
    let de = |v: &[String]| -> Result<Poly, JsonError> {
        Ok(Poly::new(v.iter().map(|s| rational_from_str(s)).collect::<Result<_, _>>()?))
    };
    Ok((doc.m, RationalFnS::new(de(&doc.num)?, de(&doc.den)?)))
}
