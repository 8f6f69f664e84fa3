use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use localcross::bipartite::BipartiteInstance;
use localcross::drawing::circular_crossings_per_edge;
use localcross::graph::Graph;
use localcross::one_sided::solve_one_sided;
use localcross::outer::solve_outer;
use localcross::two_sided::solve_two_sided;
use localcross::SolverConfig;
use localcross_bench::{caterpillar, chorded_cycle};

fn bench_one_sided(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("one_sided");
    for n in [50usize, 100] {
        // Paths sweep cleanly under the ascending fixed order: a long YES.
        let g = Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap();
        let inst = BipartiteInstance::from_graph(g).unwrap();
        group.bench_with_input(BenchmarkId::new("path_k2", n), &inst, |b, inst| {
            b.iter(|| solve_one_sided(black_box(inst), 2, &cfg).unwrap().is_some())
        });
        // The same-size caterpillar is a NO: the sweep runs to exhaustion.
        let g = caterpillar(n / 2, 1);
        let inst = BipartiteInstance::from_graph(g).unwrap();
        group.bench_with_input(BenchmarkId::new("caterpillar_no_k2", n), &inst, |b, inst| {
            b.iter(|| solve_one_sided(black_box(inst), 2, &cfg).unwrap().is_none())
        });
    }
    group.finish();
}

fn bench_two_sided(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("two_sided");
    group.sample_size(10);
    for spine in [4usize, 6] {
        let g = caterpillar(spine, 2);
        let n = g.vertex_count();
        group.bench_with_input(BenchmarkId::new("caterpillar_k1", n), &g, |b, g| {
            b.iter(|| solve_two_sided(black_box(g), 1, &cfg).unwrap().is_some())
        });
    }
    group.finish();
}

fn bench_outer(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("outer");
    group.sample_size(20);
    for n in [10usize, 12] {
        let g = chorded_cycle(n, 3);
        group.bench_with_input(BenchmarkId::new("chorded_cycle_k1", n), &g, |b, g| {
            b.iter(|| solve_outer(black_box(g), 1, &cfg).unwrap().is_some())
        });
    }
    group.finish();
}

fn bench_crossing_count(c: &mut Criterion) {
    let n = 30;
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    let d = localcross::drawing::CircularDrawing { cycle: (0..n).collect() };
    c.bench_function("crossings_per_edge_k30", |b| {
        b.iter(|| circular_crossings_per_edge(black_box(&g), black_box(&d)).unwrap())
    });
}

criterion_group!(benches, bench_one_sided, bench_two_sided, bench_outer, bench_crossing_count);
criterion_main!(benches);
