//! Parallel vs sequential runs of the exhaustive checks.
//!
//! Every benchmark runs twice: on the rayon pool, and inside
//! `par::sequential`, which forces the plain-iterator fallback. Build with
//! `--no-default-features` to drop rayon entirely.

use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use orthodual::lattice::Catalog;
use orthodual::morphism::enumerate_homs;
use orthodual::qlogic::{consequence_top, parse, soundness_sweep, SweepConfig};
use orthodual::spectral::{realization_map, representation_iso};
use orthodual::{build_dual_space, par, Limits};

fn modes<F: Fn()>(c: &mut Criterion, group: &str, input: &str, f: F) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_with_input(BenchmarkId::new("parallel", input), &(), |b, _| b.iter(&f));
    g.bench_with_input(BenchmarkId::new("sequential", input), &(), |b, _| {
        b.iter(|| par::sequential(&f))
    });
    g.finish();
}

fn representation(c: &mut Criterion) {
    for cat in [Catalog::Boolean(5), Catalog::Mo(8)] {
        let l = cat.build(64).unwrap();
        modes(c, "representation_iso", &cat.to_string(), || {
            black_box(representation_iso(&l).unwrap());
        });
    }
}

fn realization(c: &mut Criterion) {
    let x = build_dual_space(&Catalog::Boolean(5).build(64).unwrap()).unwrap().into_space();
    modes(c, "realization_map", "boolean(5)", || {
        black_box(realization_map(&x).unwrap());
    });
}

fn homs(c: &mut Criterion) {
    let l = Arc::new(Catalog::Boolean(3).build(64).unwrap());
    let l2 = Arc::new(Catalog::Mo(6).build(64).unwrap());
    modes(c, "enumerate_homs", "boolean(3)->mo(6)", || {
        black_box(enumerate_homs(&l, &l2, &Limits::default()).unwrap());
    });
}

fn consequence(c: &mut Criterion) {
    let a = parse("p1 & (p2 | p3)").unwrap();
    let b = parse("(p1 & p2) | (p1 & p3)").unwrap();
    let x = build_dual_space(&Catalog::Boolean(4).build(64).unwrap()).unwrap().into_space();
    modes(c, "consequence_top", "distributivity/boolean(4)", || {
        black_box(consequence_top(&a, &b, std::slice::from_ref(&x), &Limits::default(), 0));
    });
}

fn sweep(c: &mut Criterion) {
    let family: Vec<_> = Catalog::orthomodular_up_to(8)
        .into_iter()
        .map(|c| c.build(64).unwrap())
        .collect();
    let cfg = SweepConfig {
        trials: 1000,
        ..SweepConfig::default()
    };
    modes(c, "soundness_sweep", "1000 trials", || {
        black_box(soundness_sweep(&family, &cfg).unwrap());
    });
}

criterion_group!(benches, representation, realization, homs, consequence, sweep);
criterion_main!(benches);
