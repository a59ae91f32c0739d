//! Suite results and their JSON and plain-text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use theta_core::chartab::ClassFunction;

use crate::config::RunConfig;
use crate::Result;

pub const REPORT_VERSION: &str = "theta-verify-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    RefutedAtSmallQ,
    SkippedUnsupported,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::RefutedAtSmallQ => "refuted-at-small-q",
            Status::SkippedUnsupported => "skipped-unsupported",
        })
    }
}

/// Exact data showing where an expected identity fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A class function that should vanish, listed by class.
    ClassFunction { what: String, group: String, values: Vec<String> },
    Value { what: String, expected: String, found: String },
}

impl Witness {
    pub fn class_function(what: impl Into<String>, f: &ClassFunction) -> Self {
        Witness::ClassFunction {
            what: what.into(),
            group: f.group().label(),
            values: f.values().iter().map(|v| v.to_string()).collect(),
        }
    }
    pub fn value(what: impl Into<String>, expected: impl ToString, found: impl ToString) -> Self {
        Witness::Value { what: what.into(), expected: expected.to_string(), found: found.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub q: u32,
    pub psi_twist: bool,
    /// The groups or dual pairs involved, e.g. `Sp2(3) x O3+(3)`.
    pub groups: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub params: Params,
    pub status: Status,
    /// Number of exact identities checked.
    pub identities: u64,
    pub witnesses: Vec<Witness>,
    /// Measured quantities such as ε₀.
    pub measured: BTreeMap<String, String>,
    pub notes: Vec<String>,
    pub duration_ms: Option<u64>,
}

impl SuiteResult {
    pub fn skipped(suite: &str, params: Params, reason: impl Into<String>) -> Self {
        SuiteResult {
            suite: suite.into(),
            params,
            status: Status::SkippedUnsupported,
            identities: 0,
            witnesses: Vec::new(),
            measured: BTreeMap::new(),
            notes: vec![reason.into()],
            duration_ms: None,
        }
    }

    /// A refutation carries a witness, a verification a positive identity
    /// count, a skip the name of its missing prerequisite.
    pub fn is_well_formed(&self) -> bool {
        match self.status {
            Status::Verified => self.identities > 0 && self.witnesses.is_empty(),
            Status::RefutedAtSmallQ => !self.witnesses.is_empty(),
            Status::SkippedUnsupported => !self.notes.is_empty(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub results: Vec<SuiteResult>,
}

impl Report {
    pub fn new(config: &RunConfig, mut results: Vec<SuiteResult>) -> Self {
        results.sort_by(|a, b| (&a.suite, a.params.q).cmp(&(&b.suite, b.params.q)));
        Report { version: REPORT_VERSION.into(), config: config.clone(), results }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let twist = if r.config.psi_twist { "psi_t" } else { "psi" };
    let action = if r.config.linear_orthogonal { "linear" } else { "weil" };
    let _ = writeln!(out, "{}  qs={:?}  character={twist}  orthogonal-action={action}", r.version, r.config.qs);
    let _ = writeln!(out, "{:<26} {:>3}  {:<19} {:>10}  measured", "suite", "q", "status", "identities");
    for res in &r.results {
        let measured: Vec<String> = res.measured.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = write!(
            out,
            "{:<26} {:>3}  {:<19} {:>10}  {}",
            res.suite,
            res.params.q,
            res.status.to_string(),
            res.identities,
            measured.join(" ")
        );
        if let Some(ms) = res.duration_ms {
            let _ = write!(out, "  [{ms} ms]");
        }
        out.push('\n');
        for w in &res.witnesses {
            match w {
                Witness::Value { what, expected, found } => {
                    let _ = writeln!(out, "    witness: {what}: expected {expected}, found {found}");
                }
                Witness::ClassFunction { what, group, values } => {
                    let _ = writeln!(out, "    witness: {what} on {group}: [{}]", values.join(", "));
                }
            }
        }
        for n in &res.notes {
            let _ = writeln!(out, "    note: {n}");
        }
    }
    out
}

/// Write the JSON and text reports to whichever paths are given.
pub fn emit_report(r: &Report, json: Option<&Path>, text: Option<&Path>) -> Result<()> {
    for (path, body) in [(json, r.to_json()), (text, render_text(r))] {
        if let Some(p) = path {
            if let Some(dir) = p.parent() {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, body)?;
        }
    }
    Ok(())
}
