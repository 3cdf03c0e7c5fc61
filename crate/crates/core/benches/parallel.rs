//! Parallel-versus-sequential comparison on the engine's real fan-out
//! points: jacobian minors across variable subsets, a square-free audit
//! across a corpus, and instance verification across a catalog slice.
//!
//! The `map_ordered` arms go through [`keller_core::par`], which is
//! rayon-backed under the default `parallel` feature and a plain loop
//! without it; build with `--no-default-features` to watch the two arms
//! coincide. Results are order-preserving in both builds, so the arms are
//! checked for agreement once at setup.

use std::path::Path;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use keller_core::{
    irreducible_corpus, is_squarefree, jacobian_minor, load_instance, par, parse_poly,
    verify_theorem2, Endo, EngineOptions, Instance, Poly, VarIndex, Verdict,
};

fn p(n: usize, s: &str) -> Poly {
    parse_poly(s, n).unwrap()
}

/// A pair of fairly dense quartics in four variables plus every size-2
/// variable subset — the fan-out shape `dgcd` works through.
fn minor_workload() -> (Vec<Poly>, Vec<Vec<VarIndex>>) {
    let f = vec![
        p(4, "x1^2*x2 + x3*x4^2 + x1*x2*x3*x4 + x2^3 - 3*x4 + 1"),
        p(4, "x1*x3^2 - x2^2*x4 + x1^2*x4^2 + x3^3 + 2*x2 - 5"),
    ];
    let mut subsets = Vec::new();
    for i in 1..=4usize {
        for j in i + 1..=4 {
            subsets.push(vec![VarIndex::new(i).unwrap(), VarIndex::new(j).unwrap()]);
        }
    }
    (f, subsets)
}

fn bench_minor_fanout(c: &mut Criterion) {
    let (f, subsets) = minor_workload();
    let sequential = |subs: &[Vec<VarIndex>]| -> Vec<Poly> {
        subs.iter().map(|vars| jacobian_minor(&f, vars).unwrap()).collect()
    };
    assert_eq!(
        sequential(&subsets),
        par::map_ordered(&subsets, |vars| jacobian_minor(&f, vars).unwrap())
    );
    let mut group = c.benchmark_group("minor_fanout");
    group.bench_function("sequential", |b| b.iter(|| black_box(sequential(&subsets))));
    group.bench_function("map_ordered", |b| {
        b.iter(|| black_box(par::map_ordered(&subsets, |vars| jacobian_minor(&f, vars).unwrap())))
    });
    group.finish();
}

fn bench_corpus_audit(c: &mut Criterion) {
    let phi = Endo::new(vec![
        p(3, "x1"),
        p(3, "x2 + x1^2"),
        p(3, "x3 + x2^2"),
    ])
    .unwrap();
    let corpus = irreducible_corpus(3, 45).unwrap();
    let audit_one = |w: &Poly| is_squarefree(&phi.apply(w).unwrap()).unwrap();
    let sequential = |ws: &[Poly]| -> Vec<bool> { ws.iter().map(audit_one).collect() };
    assert_eq!(sequential(&corpus), par::map_ordered(&corpus, audit_one));
    let mut group = c.benchmark_group("corpus_audit");
    group.bench_function("sequential", |b| b.iter(|| black_box(sequential(&corpus))));
    group.bench_function("map_ordered", |b| {
        b.iter(|| black_box(par::map_ordered(&corpus, audit_one)))
    });
    group.finish();
}

fn bench_instance_batch(c: &mut Criterion) {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog/instances");
    let names = [
        "e1.inst",
        "t2_shear_sq.inst",
        "t2_sym_minus.inst",
        "t2_prod_pair_y.inst",
        "t2_n3_chain.inst",
        "t2_n3_cycle_x1.inst",
    ];
    let instances: Vec<Instance> = names
        .iter()
        .map(|name| load_instance(&dir.join(name)).unwrap())
        .collect();
    let opts = EngineOptions::default();
    let verify_one = |inst: &Instance| -> Verdict {
        verify_theorem2(
            inst.polys(),
            inst.modulus().unwrap(),
            inst.cap().unwrap_or(6),
            &opts,
        )
        .unwrap()
        .verdict
    };
    let sequential = |batch: &[Instance]| -> Vec<Verdict> { batch.iter().map(verify_one).collect() };
    assert_eq!(sequential(&instances), par::map_ordered(&instances, verify_one));
    let mut group = c.benchmark_group("instance_batch");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| black_box(sequential(&instances))));
    group.bench_function("map_ordered", |b| {
        b.iter(|| black_box(par::map_ordered(&instances, verify_one)))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_minor_fanout,
    bench_corpus_audit,
    bench_instance_batch
);
criterion_main!(benches);
