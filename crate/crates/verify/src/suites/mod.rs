//! The verification suites. Each runs at one q and yields a [`SuiteResult`].

mod diagram;
mod dl_identities;
mod hc;
mod labels;
mod theta;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::report::{Params, Report, Status, SuiteResult, Witness};
use crate::{Result, RunConfig, VerifyError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteId {
    TrivAverage,
    ChiAverage,
    ChiUnipotent,
    ChiTwist,
    Disjointness,
    SeriesSize,
    UnipotentTheta,
    Pan,
    FirstOccurrence,
    Howe,
    Conservation,
    CentralUnipotent,
    CuspidalUnipotentLift,
    CuspidalTheta,
    ThetaDiagram,
    HcSeries,
    HcUnipotent,
    CuspidalClassification,
}

impl SuiteId {
    pub const fn all() -> &'static [SuiteId] {
        use SuiteId::*;
        &[
            TrivAverage,
            ChiAverage,
            ChiUnipotent,
            ChiTwist,
            Disjointness,
            SeriesSize,
            UnipotentTheta,
            Pan,
            FirstOccurrence,
            Howe,
            Conservation,
            CentralUnipotent,
            CuspidalUnipotentLift,
            CuspidalTheta,
            ThetaDiagram,
            HcSeries,
            HcUnipotent,
            CuspidalClassification,
        ]
    }

    pub fn as_str(self) -> &'static str {
        use SuiteId::*;
        match self {
            TrivAverage => "triv-average",
            ChiAverage => "chi-average",
            ChiUnipotent => "chi-unipotent",
            ChiTwist => "chi-twist",
            Disjointness => "disjointness",
            SeriesSize => "series-size",
            UnipotentTheta => "unipotent-theta",
            Pan => "pan",
            FirstOccurrence => "first-occurrence",
            Howe => "howe",
            Conservation => "conservation",
            CentralUnipotent => "central-unipotent",
            CuspidalUnipotentLift => "cuspidal-unipotent-lift",
            CuspidalTheta => "cuspidal-theta",
            ThetaDiagram => "theta-diagram",
            HcSeries => "hc-series",
            HcUnipotent => "hc-unipotent",
            CuspidalClassification => "cuspidal-classification",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self> {
        SuiteId::all().iter().copied().find(|id| id.as_str() == s).ok_or_else(|| VerifyError::UnknownSuite(s.into()))
    }
}

/// Accumulates the outcome of one suite run.
#[derive(Default)]
pub(crate) struct Check {
    identities: u64,
    witnesses: Vec<Witness>,
    measured: BTreeMap<String, String>,
    notes: Vec<String>,
    groups: Vec<String>,
}

impl Check {
    /// Count an identity if it holds, record the witness otherwise.
    pub fn expect(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> bool {
        if ok {
            self.identities += 1;
        } else {
            self.witnesses.push(witness());
        }
        ok
    }
    pub fn expect_eq<T: PartialEq + fmt::Display>(&mut self, what: impl fmt::Display, expected: T, found: T) -> bool {
        let ok = expected == found;
        self.expect(ok, || Witness::value(what.to_string(), expected, found))
    }
    pub fn measure(&mut self, key: &str, value: impl fmt::Display) {
        self.measured.insert(key.into(), value.to_string());
    }
    pub fn note(&mut self, n: impl Into<String>) {
        let n = n.into();
        if !self.notes.contains(&n) {
            self.notes.push(n);
        }
    }
    pub fn group(&mut self, g: impl Into<String>) {
        let g = g.into();
        if !self.groups.contains(&g) {
            self.groups.push(g);
        }
    }
}

fn dispatch(ctx: &Context, id: SuiteId, q: u32, c: &mut Check) -> Result<()> {
    use SuiteId::*;
    match id {
        TrivAverage => dl_identities::triv_average(ctx, q, c),
        ChiAverage => dl_identities::chi_average(ctx, q, c),
        ChiUnipotent => dl_identities::chi_unipotent(ctx, q, c),
        ChiTwist => dl_identities::chi_twist(ctx, q, c),
        Disjointness => dl_identities::disjointness(ctx, q, c),
        SeriesSize => dl_identities::series_size(ctx, q, c),
        UnipotentTheta => theta::unipotent_theta(ctx, q, c),
        Pan => theta::pan(ctx, q, c),
        FirstOccurrence => theta::first_occurrence(ctx, q, c),
        Howe => theta::howe(ctx, q, c),
        Conservation => theta::conservation(ctx, q, c),
        CentralUnipotent => theta::central_unipotent(ctx, q, c),
        CuspidalUnipotentLift => diagram::cuspidal_unipotent_lift(ctx, q, c),
        CuspidalTheta => diagram::cuspidal_theta(ctx, q, c),
        ThetaDiagram => diagram::theta_diagram(ctx, q, c),
        HcSeries => hc::hc_series(ctx, q, c),
        HcUnipotent => hc::hc_unipotent(ctx, q, c),
        CuspidalClassification => diagram::cuspidal_classification(ctx, q, c),
    }
}

/// Run one suite at one q. Errors, including budget overruns, become a
/// skipped result naming the missing prerequisite.
pub fn run_suite(ctx: &Context, id: SuiteId, q: u32) -> SuiteResult {
    let start = Instant::now();
    let mut c = Check::default();
    let outcome = dispatch(ctx, id, q, &mut c);
    let params = Params { q, psi_twist: ctx.config().psi_twist, groups: c.groups.clone() };
    let mut res = match outcome {
        Err(e) => {
            let mut r = SuiteResult::skipped(id.as_str(), params, format!("prerequisite unavailable: {e}"));
            r.measured = c.measured;
            r
        }
        Ok(()) => {
            let status = if !c.witnesses.is_empty() {
                Status::RefutedAtSmallQ
            } else if c.identities > 0 {
                Status::Verified
            } else {
                Status::SkippedUnsupported
            };
            if status == Status::SkippedUnsupported && c.notes.is_empty() {
                c.notes.push("no applicable identity within the configured budgets".into());
            }
            SuiteResult {
                suite: id.as_str().into(),
                params,
                status,
                identities: c.identities,
                witnesses: c.witnesses,
                measured: c.measured,
                notes: c.notes,
                duration_ms: None,
            }
        }
    };
    if ctx.config().timings {
        res.duration_ms = Some(start.elapsed().as_millis() as u64);
    }
    res
}

/// Every selected suite at every configured q. Suites run on plain worker
/// threads; the data-parallel kernels inside them use the rayon pool.
pub fn run_all(cfg: &RunConfig) -> Result<Report> {
    let ctx = Context::new(cfg.clone())?;
    let jobs: Vec<(SuiteId, u32)> =
        cfg.suites.iter().flat_map(|&id| cfg.qs.iter().map(move |&q| (id, q))).collect();
    let workers = if theta_core::par::is_parallel() {
        std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len().max(1))
    } else {
        1
    };
    let next = AtomicUsize::new(0);
    let results: Vec<SuiteResult> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                s.spawn(|| {
                    let mut out = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(&(id, q)) = jobs.get(i) else { break };
                        out.push(run_suite(&ctx, id, q));
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite worker panicked")).collect()
    });
    Ok(Report::new(cfg, results))
}
