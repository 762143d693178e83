use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use standpoint::model::{Concept, Formula, StandpointExpr, StandpointKb, TBoxAxiom};
use standpoint::normalizer::normalize_kb;
use standpoint::oracle::{equisatisfiability_batch, find_standpoint_model_with, SearchLimits};
use standpoint::par::Parallelism;
use standpoint::random::{random_kbs, Fragment, NAMESPACE};
use standpoint::translator::{translate_kb_with, TranslateOptions};

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("parallel", Parallelism::Parallel),
];

fn limits(mode: Parallelism) -> SearchLimits {
    SearchLimits {
        parallelism: mode,
        ..SearchLimits::default()
    }
}

fn batch(c: &mut Criterion) {
    let kbs = random_kbs(1, 64, &Fragment::default());
    let mut group = c.benchmark_group("equisatisfiability_batch");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| b.iter(|| equisatisfiability_batch(&kbs, 3, &limits(mode))));
    }
    group.finish();
}

/// Conflicting diamonds force the grid search past its first cells.
fn conflicting(k: usize) -> StandpointKb {
    let mut kb = StandpointKb::new("http://example.org/random");
    let a = |l: &str| Concept::named(NAMESPACE, l);
    let s = StandpointExpr::name("s");
    for i in 0..k {
        let name = format!("A{i}");
        kb.formulas.push(Formula::diamond(
            s.clone(),
            Formula::atom(TBoxAxiom::sub(a(&name), Concept::Bottom)),
        ));
        kb.formulas.push(Formula::diamond(
            s.clone(),
            Formula::atom(TBoxAxiom::sub(Concept::Top, a(&name))),
        ));
    }
    kb
}

fn grid(c: &mut Criterion) {
    let kb = normalize_kb(&conflicting(2)).unwrap();
    let mut group = c.benchmark_group("standpoint_grid");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "n<=4,m<=4"), &kb, |b, kb| {
            b.iter(|| find_standpoint_model_with(kb, 4, 4, &limits(mode)).unwrap())
        });
    }
    group.finish();
}

fn translation(c: &mut Criterion) {
    let fragment = Fragment {
        max_formulas: 8,
        max_precisifications: 8,
        ..Fragment::default()
    };
    let kbs: Vec<_> = random_kbs(2, 32, &fragment)
        .iter()
        .map(|kb| normalize_kb(kb).unwrap())
        .collect();
    let mut group = c.benchmark_group("translate");
    for (name, mode) in MODES {
        let opts = TranslateOptions {
            precisifications: Some(16),
            parallelism: mode,
            ..TranslateOptions::default()
        };
        group.bench_function(name, |b| {
            b.iter(|| kbs.iter().map(|kb| translate_kb_with(kb, &opts).unwrap().axioms.len()).sum::<usize>())
        });
    }
    group.finish();
}

criterion_group!(benches, batch, grid, translation);
criterion_main!(benches);
