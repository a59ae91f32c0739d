//! One PASS/FAIL line per acceptance criterion. Time budgets and the list of
//! criteria that cannot be met as literally stated are pinned below.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use theta_core::algebra::{AddChar, Field, FqMatrix};
use theta_core::dl::{bipartitions, weyl_classes};
use theta_core::groups::{GroupTable, Sign};
use theta_core::weil::{bruhat, weil_operator, DenseOp, QuadGaussOp};
use theta_verify::context::{odd_o, odd_so, sp};
use theta_verify::{run_all, run_suite, Context, RunConfig, Status, SuiteId, SuiteResult};

/// Criteria expected to fail as stated, with the reason recorded in the
/// project notes:
/// 1: |O_5(3)| = 103680, so Σd² over its table is 103680; 51840 is |SO_5(3)|.
/// 7, 9: at q = 3 the Weil representation acts on O(V) through sgn^n times the
///   linear action, which swaps π' and π'⊗sgn at odd n in the diagram and in the
///   Harish-Chandra containments. Both hold with the linear action (lines 7*, 9*).
const KNOWN_UNATTAINABLE: &[u32] = &[1, 7, 9];

const SECOND: Duration = Duration::from_secs(1);
const MINUTE: Duration = Duration::from_secs(60);

fn budget(criterion: u32) -> Duration {
    match criterion {
        1 => 30 * MINUTE,
        2 => 10 * SECOND,
        3 | 8 | 9 => 45 * MINUTE,
        4 | 6 => MINUTE,
        5 => 20 * MINUTE,
        7 => 30 * MINUTE,
        10 => 10 * SECOND,
        11 => SECOND,
        _ => 60 * MINUTE,
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn line(s: &str) {
    let mut err = std::io::stderr();
    let _ = writeln!(err, "{s}");
}

fn run(failures: &mut BTreeSet<u32>, criterion: u32, label: &str, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let o = f();
    let took = start.elapsed();
    let in_time = took <= budget(criterion);
    let pass = o.pass && in_time;
    let verdict = if pass { "PASS" } else { "FAIL" };
    let late = if in_time { String::new() } else { format!(" over budget {:?}", budget(criterion)) };
    line(&format!("criterion {criterion:>2} {verdict}  {label}: {} [{took:.2?}{late}]", o.detail));
    if !pass {
        failures.insert(criterion);
    }
}

fn context(cache: &std::path::Path) -> Context {
    Context::new(RunConfig { cache_dir: Some(cache.to_path_buf()), ..RunConfig::default() }).unwrap()
}

fn summary(r: &SuiteResult) -> String {
    let mut s = format!("{} q={} {}", r.suite, r.params.q, r.status);
    if let Some(w) = r.witnesses.first() {
        s += &format!(" ({} witnesses, first: {w:?})", r.witnesses.len());
    }
    s
}

fn suites_with(ctx: &Context, ids: &[SuiteId], qs: &[u32], ok: impl Fn(&SuiteResult) -> bool) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for &id in ids {
        for &q in qs {
            let r = run_suite(ctx, id, q);
            pass &= r.is_well_formed() && ok(&r);
            parts.push(summary(&r));
        }
    }
    outcome(pass, parts.join("; "))
}

fn sorted_degrees(ctx: &Context, d: &theta_core::groups::GroupDescriptor) -> Vec<u64> {
    let mut v = ctx.table(d).unwrap().degrees();
    v.sort();
    v
}

fn dense(w: &FqMatrix, f: &Field, psi: AddChar) -> DenseOp {
    let bf = bruhat(w, f).unwrap();
    let n = w.rows() / 2;
    DenseOp::levi(&bf.a1, f)
        .mul(&DenseOp::lower_unipotent(&bf.c1, f, psi))
        .mul(&DenseOp::partial_fourier(n, bf.r, f, psi))
        .mul(&DenseOp::levi(&bf.a3, f))
        .mul(&DenseOp::lower_unipotent(&bf.c3, f, psi))
}

fn weil_soundness(ctx: &Context) -> Outcome {
    let psi = AddChar::standard();
    let mut traces = 0;
    let groups: Vec<(Field, Arc<GroupTable>)> = [3u32, 5]
        .iter()
        .map(|&q| (Field::prime(q as u8).unwrap(), ctx.group(&sp(1, q)).unwrap()))
        .collect();
    for (f, g) in &groups {
        for pos in 0..g.order() as u32 {
            let m = g.element(pos);
            if weil_operator(&m, f, psi).unwrap().trace(f) != dense(&m, f, psi).trace() {
                return outcome(false, format!("trace mismatch at element {pos} of {}", g.label()));
            }
            traces += 1;
        }
    }
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let mut pairs = 0;
    for _ in 0..200 {
        let k = (0..groups.len()).new_tree(&mut runner).unwrap().current();
        let (f, g) = &groups[k];
        let o = g.order() as u32;
        let (a, b) = (0..o, 0..o).new_tree(&mut runner).unwrap().current();
        let (wa, wb): (QuadGaussOp, QuadGaussOp) =
            (weil_operator(&g.element(a), f, psi).unwrap(), weil_operator(&g.element(b), f, psi).unwrap());
        let prod = wa.compose(&wb, f).unwrap();
        let direct = weil_operator(&g.element(g.mul(a, b)), f, psi).unwrap();
        if prod != direct || prod.to_dense(f) != wa.to_dense(f).mul(&wb.to_dense(f)) {
            return outcome(false, format!("ω(g)ω(h) ≠ ω(gh) for elements {a}, {b} of {}", g.label()));
        }
        pairs += 1;
    }
    outcome(true, format!("{traces} traces equal the dense model; {pairs} random products are exact"))
}

fn integrality(ctx: &Context) -> Outcome {
    let mut checked = 0;
    for n in 1..=2 {
        for np in 0..=2 {
            for eps in Sign::both() {
                let (sd, od) = (sp(n, 3), odd_o(np, eps, 3));
                let mm = match ctx.decomposition(&sd, &od) {
                    Ok(mm) => mm,
                    Err(e) => return outcome(false, format!("{} x {}: {e}", sd.label(), od.label())),
                };
                let expected = 3u128.pow((n * (2 * np + 1)) as u32);
                if mm.total_dim != expected || mm.check_dimension().is_err() {
                    return outcome(false, format!("{} x {}: dimension bookkeeping", sd.label(), od.label()));
                }
                checked += 1;
            }
        }
    }
    outcome(true, format!("{checked} dual pairs with Σ m·d·d' = 3^(n(2n'+1))"))
}

fn verified(r: &SuiteResult) -> bool {
    r.status == Status::Verified
}

fn decided(r: &SuiteResult) -> bool {
    r.status != Status::SkippedUnsupported
}

fn report_bytes(cache: &std::path::Path) -> Vec<u8> {
    let cfg = RunConfig { cache_dir: Some(cache.to_path_buf()), ..RunConfig::default() };
    run_all(&cfg).unwrap().to_json().into_bytes()
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    let ctx = context(dir.path());
    let mut linear_cfg = ctx.config().clone();
    linear_cfg.linear_orthogonal = true;
    let linear = Context::new(linear_cfg).unwrap();
    let mut failures = BTreeSet::new();

    run(&mut failures, 1, "character tables", || {
        let a = sorted_degrees(&ctx, &sp(1, 3));
        let b = sorted_degrees(&ctx, &odd_so(1, Sign::Plus, 3));
        let sum: u64 = ctx.table(&odd_o(2, Sign::Plus, 3)).unwrap().degrees().iter().map(|d| d * d).sum();
        let so5: u64 = ctx.table(&odd_so(2, Sign::Plus, 3)).unwrap().degrees().iter().map(|d| d * d).sum();
        outcome(
            a == [1, 1, 1, 2, 2, 2, 3] && b == [1, 1, 2, 3, 3] && sum == 51840,
            format!("Sp2(3) {a:?}, SO3(3) {b:?}, Σd² over O5(3) = {sum} (SO5(3): {so5})"),
        )
    });
    run(&mut failures, 2, "Weil model soundness", || weil_soundness(&ctx));
    run(&mut failures, 3, "decomposition integrality", || integrality(&ctx));
    run(&mut failures, 4, "Pan's formula", || suites_with(&ctx, &[SuiteId::Pan], &[3, 5], decided));
    run(&mut failures, 5, "conservation", || suites_with(&ctx, &[SuiteId::Conservation], &[3], verified));
    run(&mut failures, 6, "Howe completeness", || {
        suites_with(&ctx, &[SuiteId::Howe], &[3], |r| {
            verified(r) && r.measured.get("covered_Sp2(3)").map(String::as_str) == Some("7/7")
        })
    });
    let diagram = |r: &SuiteResult| {
        verified(r) && r.measured.get("first_occurrences").map(String::as_str) == Some("0,0,1,1,2,2")
    };
    run(&mut failures, 7, "lifting diagram", || suites_with(&ctx, &[SuiteId::ThetaDiagram], &[3], diagram));
    run(&mut failures, 8, "cuspidal unipotent lift", || {
        suites_with(&ctx, &[SuiteId::CuspidalUnipotentLift], &[3], decided)
    });
    let hc = [SuiteId::HcSeries, SuiteId::HcUnipotent];
    run(&mut failures, 9, "Harish-Chandra compatibility", || suites_with(&ctx, &hc, &[3], verified));
    run(&mut failures, 10, "rank-1 Deligne-Lusztig identities", || {
        let ids = [SuiteId::TrivAverage, SuiteId::ChiAverage, SuiteId::ChiUnipotent, SuiteId::ChiTwist];
        let direct = run_suite(&ctx, SuiteId::ChiUnipotent, 3);
        let o = suites_with(&ctx, &ids, &[3, 5], verified);
        outcome(o.pass && direct.notes.is_empty(), o.detail)
    });
    run(&mut failures, 11, "combinatorial layer", || {
        let counts: Vec<(usize, usize)> = (0..=6).map(|n| (weyl_classes(n).len(), bipartitions(n).len())).collect();
        let o = suites_with(&ctx, &[SuiteId::SeriesSize], &[3], |r| {
            verified(r) && r.measured.get("principal_unipotent_series_Sp2(3)").map(String::as_str) == Some("2")
        });
        outcome(o.pass && counts.iter().all(|(a, b)| a == b) && bipartitions(1).len() == 2, format!("{counts:?}; {}", o.detail))
    });
    run(&mut failures, 12, "determinism", || {
        let (c1, c2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
        let (a, b) = (report_bytes(c1.path()), report_bytes(c2.path()));
        let warm = report_bytes(c1.path());
        outcome(a == b && a == warm, format!("cold runs identical: {}, warm run identical: {}", a == b, a == warm))
    });

    // the same two criteria with O(V) acting linearly on the model
    let mut informational = BTreeSet::new();
    run(&mut informational, 7, "lifting diagram, linear O action (7*)", || {
        suites_with(&linear, &[SuiteId::ThetaDiagram], &[3], diagram)
    });
    run(&mut informational, 9, "Harish-Chandra compatibility, linear O action (9*)", || {
        suites_with(&linear, &hc, &[3], verified)
    });

    let known: BTreeSet<u32> = KNOWN_UNATTAINABLE.iter().copied().collect();
    assert_eq!(failures, known, "failing criteria differ from the documented list");
    assert!(informational.is_empty(), "criteria 7 and 9 fail even with the linear orthogonal action");
}
