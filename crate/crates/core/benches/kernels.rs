use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use theta_core::algebra::{AddChar, FieldSpec};
use theta_core::chartab::character_table;
use theta_core::groups::{build_group, DualPairEmbedding, GroupDescriptor, GroupTable, Sign, DEFAULT_BUDGET};
use theta_core::par;
use theta_core::weil::pair_character;

fn group(d: GroupDescriptor) -> Arc<GroupTable> {
    Arc::new(build_group(&d, DEFAULT_BUDGET).unwrap())
}

fn modes() -> Vec<(&'static str, bool)> {
    let mut m = vec![("sequential", true)];
    if par::is_parallel() {
        m.push(("parallel", false));
    }
    m
}

fn run<R>(seq: bool, f: impl FnOnce() -> R) -> R {
    if seq {
        par::sequential(f)
    } else {
        f()
    }
}

fn bench_tables(c: &mut Criterion) {
    let mut grp = c.benchmark_group("character_table");
    grp.sample_size(10);
    for (name, d) in [
        ("Sp4(3)", GroupDescriptor::sp(2, FieldSpec { p: 3, k: 1 })),
        ("SO5(3)", GroupDescriptor::special_orthogonal(5, Sign::Plus, FieldSpec { p: 3, k: 1 })),
    ] {
        let g = group(d);
        for (mode, seq) in modes() {
            grp.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                b.iter(|| run(seq, || black_box(character_table(g.clone()).unwrap())))
            });
        }
    }
    grp.finish();
}

fn bench_pair_character(c: &mut Criterion) {
    let mut grp = c.benchmark_group("pair_character");
    grp.sample_size(10);
    for (p, np) in [(3u8, 1u32), (5, 1), (3, 2)] {
        let f = FieldSpec { p, k: 1 };
        let sp = group(GroupDescriptor::sp(1, f));
        let so = group(GroupDescriptor::orthogonal(2 * np + 1, Sign::Plus, f));
        let emb = DualPairEmbedding::new(sp.space().unwrap(), so.space().unwrap(), sp.field()).unwrap();
        let label = format!("Sp2({p})xO{}({p})", 2 * np + 1);
        for (mode, seq) in modes() {
            grp.bench_function(BenchmarkId::new(mode, &label), |b| {
                b.iter(|| run(seq, || black_box(pair_character(&emb, &sp, &so, AddChar::standard()).unwrap())))
            });
        }
    }
    grp.finish();
}

criterion_group!(benches, bench_tables, bench_pair_character);
criterion_main!(benches);
