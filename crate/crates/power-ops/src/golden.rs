//! Frozen reference formulas. Each record lives in its own file under
//! goldens/, transcribed once and treated as read-only ground truth; the
//! engine re-derives every one of them and must reproduce it exactly.

use crate::error::{Error, Result};
use crate::poly::ratfunc::RatPoly;
use crate::textio::parse_ratpoly;

/// A single frozen formula with its provenance tag.
#[derive(Clone, Debug)]
pub struct GoldenRecord {
    pub id: &'static str,
    pub locator: String,
    pub body: String,
}

macro_rules! corpus {
    ($($id:literal),* $(,)?) => {
        &[ $( ($id, include_str!(concat!("../goldens/", $id, ".txt"))) ),* ]
    };
}

static CORPUS: &[(&str, &str)] = corpus![
    "sec2.disc",
    "prop4.f",
    "prop4.g",
    "prop4.psi3",
    "prop4.psi3_uv",
    "appA.resultant",
    "appA.q1",
    "appA.r1",
    "appA.q2",
    "appA.r2",
    "appA.k",
    "appA.l",
    "appA.m",
    "appA.n",
    "appB.v_series",
    "appB.kappa",
    "appB.lambda",
    "appB.u_prime",
    "appB.v_prime",
    "prop6.W",
    "prop6.a_prime",
    "prop6.b_prime",
    "prop6.kappa_point",
    "cor9.kappa_dual",
    "rmk17.dual_mod3",
    "sec2.w",
    "cor7.psi_h",
    "cor7.psi_c",
    "cor7.psi_i",
    "cor7.c_prime",
    "sec3.psi_alpha",
    "prop10.comm_h",
    "prop10.comm_c",
    "prop10.comm_i",
    "prop10.adem.q1q0",
    "prop10.adem.q2q0",
    "prop10.adem.q3q0",
    "prop10.cartan",
    "def12.omega",
    "rmk13.rank",
    "sec4.psiF_h",
    "sec4.psiF_c",
    "sec4.w_mod3",
];

fn parse_record(id: &'static str, raw: &str) -> Result<GoldenRecord> {
    let mut lines = raw.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::GoldenFormat(format!("{id}: empty record")))?;
    let rest = header
        .strip_prefix('#')
        .ok_or_else(|| Error::GoldenFormat(format!("{id}: header must start with '#'")))?;
    let (file_id, locator) = rest
        .split_once('|')
        .ok_or_else(|| Error::GoldenFormat(format!("{id}: header must be '# id | locator'")))?;
    if file_id.trim() != id {
        return Err(Error::GoldenFormat(format!(
            "{id}: header names '{}'",
            file_id.trim()
        )));
    }
    let body = lines.collect::<Vec<_>>().join(" ").trim().to_string();
    if body.is_empty() {
        return Err(Error::GoldenFormat(format!("{id}: record has no formula")));
    }
    Ok(GoldenRecord {
        id,
        locator: locator.trim().to_string(),
        body,
    })
}

pub fn records() -> Result<Vec<GoldenRecord>> {
    CORPUS.iter().map(|&(id, raw)| parse_record(id, raw)).collect()
}

pub fn record(id: &str) -> Result<GoldenRecord> {
    let (rid, raw) = CORPUS
        .iter()
        .find(|&&(rid, _)| rid == id)
        .ok_or_else(|| Error::UnknownRecord(id.to_string()))?;
    parse_record(rid, raw)
}

/// The record body as an exact fraction, for records that are a single
/// closed-form expression.
pub fn record_ratpoly(id: &str) -> Result<RatPoly> {
    parse_ratpoly(&record(id)?.body)
}

/// Records holding a `;`-separated sequence of expressions (matrix rows
/// in row-major order, coefficient tables).
pub fn record_ratpoly_list(id: &str) -> Result<Vec<RatPoly>> {
    record(id)?
        .body
        .split(';')
        .map(|chunk| parse_ratpoly(chunk.trim()))
        .collect()
}
