use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mconvex::chordal::clique_separator_graph;
use mconvex::poset::rooted_poset;
use mconvex::solver::{extend, solve_with, SolveOptions};
use mconvex_bench::{ktree, random_chordal};

fn bench_csg(c: &mut Criterion) {
    let mut group = c.benchmark_group("clique_separator_graph");
    for n in [50, 100, 200] {
        let g = random_chordal(n, 0.5, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| clique_separator_graph(g).unwrap())
        });
    }
    group.finish();
}

fn bench_rooted_poset(c: &mut Criterion) {
    let mut group = c.benchmark_group("rooted_poset");
    for n in [50, 100] {
        let ext = extend(&ktree(n, 3, 11)).unwrap();
        let k = ext.cliques()[0].clone();
        group.bench_with_input(BenchmarkId::from_parameter(n), &(ext, k), |b, (ext, k)| {
            b.iter(|| rooted_poset(ext, k).unwrap())
        });
    }
    group.finish();
}

fn bench_solve(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for n in [30, 60, 100] {
        let g = random_chordal(n, 0.5, 42);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| solve_with(g, SolveOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_csg, bench_rooted_poset, bench_solve);
criterion_main!(benches);
