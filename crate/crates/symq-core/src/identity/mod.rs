//! The verification engine: a registry mapping every identity to exact
//! LHS/RHS builders, a truncation policy, and machine-readable reports.
//!
//! Truncation policy for "sum over all partitions": enumerate
//! `|lambda| <= D`, `l(lambda) <= n`; homogeneity of `P_lambda` makes the
//! retained coefficients exact. Products over `i >= 1` become finite with
//! `x_{n+1} = ... = 0`; products over `i < j` run over
//! `1 <= i < j <= n`. Comparison is exact coefficient equality; the two
//! identities with denominators that vanish as one-orthant series (the
//! bounded determinant form and the folded bounded sum) are compared as
//! cross-multiplied rational functions instead.

mod builders;
mod mac;
mod pleth;
mod prop;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::MPoly;

pub use builders::SeriesCtx;

/// Parameters of one verification run. `subs` carries free-form
/// annotations (seeds, derived caps, notes).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Params {
    pub n: usize,
    #[serde(rename = "D")]
    pub d: u32,
    pub k: Option<u32>,
    pub q_cap: Option<u32>,
    pub subs: BTreeMap<String, String>,
}

impl Params {
    pub fn new(n: usize, d: u32) -> Self {
        Params {
            n,
            d,
            k: None,
            q_cap: None,
            subs: BTreeMap::new(),
        }
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_q_cap(mut self, q: u32) -> Self {
        self.q_cap = Some(q);
        self
    }

    pub fn with_note(mut self, key: &str, value: &str) -> Self {
        self.subs.insert(key.into(), value.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "ERROR")]
    Error,
}

/// One differing monomial with both coefficient renderings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Mismatch {
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one identity check; serializes with stable field order for
/// golden-file diffing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub params: Params,
    pub status: Status,
    pub mismatches: Vec<Mismatch>,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Comparison mode of a case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// coefficient-wise equality of truncated series
    Series,
    /// cross-multiplied equality of exact rational functions
    Rational,
}

/// A registered identity: builders plus preset parameters.
pub struct Case {
    pub id: &'static str,
    /// What the identity states, in words; printed by `list`.
    pub anchor: &'static str,
    pub mode: Mode,
    pub runner: fn(&Params) -> Result<Vec<Mismatch>>,
    pub smoke: Vec<Params>,
    pub full: Vec<Params>,
}

/// Preset scales for [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Smoke,
    Full,
}

/// Difference of two polynomials as a mismatch list (empty iff equal).
pub fn mpoly_mismatches(lhs: &MPoly, rhs: &MPoly) -> Vec<Mismatch> {
    let diff = lhs.sub(rhs);
    let mut out = Vec::new();
    for (m, _) in diff.terms() {
        let mono = MPoly::monomial(lhs.table(), m.clone(), 1).render();
        out.push(Mismatch {
            monomial: mono,
            lhs: lhs.coeff(m).to_string(),
            rhs: rhs.coeff(m).to_string(),
        });
    }
    out
}

/// Labelled equality check used by per-partition comparisons.
pub fn labelled_mismatch(label: &str, lhs: &MPoly, rhs: &MPoly) -> Option<Mismatch> {
    if lhs == rhs {
        None
    } else {
        Some(Mismatch {
            monomial: label.to_string(),
            lhs: lhs.render(),
            rhs: rhs.render(),
        })
    }
}

/// The full identity catalogue.
pub fn registry() -> Vec<Case> {
    let mut cases = Vec::new();
    builders::register(&mut cases);
    prop::register(&mut cases);
    mac::register(&mut cases);
    pleth::register(&mut cases);
    cases.push(Case {
        id: "selftest.mutation",
        anchor: "deliberately perturbed variant of the first Hall-Littlewood sum; must FAIL (harness sensitivity check)",
        mode: Mode::Series,
        runner: builders::run_mutated_i1,
        smoke: vec![Params::new(2, 3)],
        full: vec![Params::new(2, 3)],
    });
    cases
}

/// Look up a case by id.
pub fn find_case(id: &str) -> Result<Case> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Run one identity at the given parameters.
pub fn verify(id: &str, params: &Params) -> Result<Report> {
    let case = find_case(id)?;
    Ok(run_case(&case, params))
}

fn run_case(case: &Case, params: &Params) -> Report {
    let start = Instant::now();
    let (status, mismatches, error) = match (case.runner)(params) {
        Ok(mm) if mm.is_empty() => (Status::Pass, mm, None),
        Ok(mm) => (Status::Fail, mm, None),
        Err(e) => (Status::Error, Vec::new(), Some(e.to_string())),
    };
    Report {
        id: case.id.to_string(),
        params: params.clone(),
        status,
        mismatches,
        elapsed_ms: start.elapsed().as_millis(),
        error,
    }
}

/// Simple glob matching with `*` wildcards; the empty pattern matches
/// everything.
pub fn glob_match(pattern: &str, id: &str) -> bool {
    if pattern.is_empty() {
        return true;
    }
    let pieces: Vec<&str> = pattern.split('*').collect();
    let mut rest = id;
    for (i, piece) in pieces.iter().enumerate() {
        if piece.is_empty() {
            continue;
        }
        match rest.find(piece) {
            Some(pos) => {
                // a leading literal must anchor at the start
                if i == 0 && pos != 0 {
                    return false;
                }
                rest = &rest[pos + piece.len()..];
            }
            None => return false,
        }
    }
    // a trailing literal must anchor at the end
    if !pattern.ends_with('*') && !pieces.last().unwrap().is_empty() {
        return id.ends_with(pieces.last().unwrap());
    }
    true
}

/// Run every registered case matching the filter at the preset scale.
/// The self-test case (which fails by design) only runs when the filter
/// names it explicitly.
pub fn run_suite(filter: &str, scale: Scale) -> Vec<Report> {
    let mut reports = Vec::new();
    for (case, params) in expand_suite(filter, scale) {
        reports.push(run_case(&case, &params));
    }
    reports
}

/// The (case, params) pairs a suite run would execute, in deterministic
/// order (sorted by id, preset order within an id).
pub fn expand_suite(filter: &str, scale: Scale) -> Vec<(Case, Params)> {
    let mut cases = registry();
    cases.sort_by(|a, b| a.id.cmp(b.id));
    let mut out = Vec::new();
    for case in cases {
        if case.id.starts_with("selftest.") && !filter.contains("selftest") {
            continue;
        }
        if !glob_match(filter, case.id) {
            continue;
        }
        let presets = match scale {
            Scale::Smoke => case.smoke.clone(),
            Scale::Full => case.full.clone(),
        };
        for p in presets {
            let again = find_case(case.id).unwrap();
            out.push((again, p));
        }
    }
    out
}

/// Validate a serialized report against the expected schema; used by the
/// round-trip tests and the CLI tests.
pub fn validate_report_value(v: &serde_json::Value) -> std::result::Result<(), String> {
    let obj = v.as_object().ok_or("report must be an object")?;
    for key in ["id", "params", "status", "mismatches", "elapsed_ms"] {
        if !obj.contains_key(key) {
            return Err(format!("missing field {key}"));
        }
    }
    if !obj["id"].is_string() {
        return Err("id must be a string".into());
    }
    let params = obj["params"].as_object().ok_or("params must be an object")?;
    for key in ["n", "D", "k", "q_cap", "subs"] {
        if !params.contains_key(key) {
            return Err(format!("missing params field {key}"));
        }
    }
    match obj["status"].as_str() {
        Some("PASS") | Some("FAIL") | Some("ERROR") => {}
        _ => return Err("status must be PASS, FAIL or ERROR".into()),
    }
    let mm = obj["mismatches"].as_array().ok_or("mismatches must be an array")?;
    for entry in mm {
        let e = entry.as_object().ok_or("mismatch must be an object")?;
        for key in ["monomial", "lhs", "rhs"] {
            if !e.get(key).map(|x| x.is_string()).unwrap_or(false) {
                return Err(format!("mismatch field {key} must be a string"));
            }
        }
    }
    if !obj["elapsed_ms"].is_u64() {
        return Err("elapsed_ms must be an unsigned integer".into());
    }
    // PASS iff the mismatch list is empty
    let pass = obj["status"].as_str() == Some("PASS");
    if pass != mm.is_empty() && obj["status"].as_str() != Some("ERROR") {
        return Err("status inconsistent with mismatch list".into());
    }
    Ok(())
}
