use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use cliquelab::constructions::{search_path_bounded_bipartite, SearchStrategy};
use cliquelab::counters::{
    count_cliques, count_complete_bipartite, count_subgraph, path_multiplicity,
};
use cliquelab::covers::count_z;
use cliquelab::named::{complete_bipartite, cycle};
use cliquelab_bench::{clique_union, gnp};

fn cliques(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_cliques");
    for n in [50, 100, 200] {
        let g = gnp(n, 0.2);
        for r in [3, 4] {
            group.bench_with_input(BenchmarkId::new(format!("K{r}"), n), &g, |b, g| {
                b.iter(|| count_cliques(black_box(g), r).unwrap())
            });
        }
    }
    group.finish();
}

fn subgraphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("subgraph");
    let g = gnp(40, 0.3);
    let c4 = cycle(4);
    let k23 = complete_bipartite(2, 3);
    group.bench_function("generic C4", |b| {
        b.iter(|| count_subgraph(black_box(&c4), &g).unwrap())
    });
    group.bench_function("specialized K2,2", |b| {
        b.iter(|| count_complete_bipartite(black_box(&g), 2, 2).unwrap())
    });
    group.bench_function("generic K2,3", |b| {
        b.iter(|| count_subgraph(black_box(&k23), &g).unwrap())
    });
    group.bench_function("specialized K2,3", |b| {
        b.iter(|| count_complete_bipartite(black_box(&g), 2, 3).unwrap())
    });
    group.finish();
}

fn multiplicity(c: &mut Criterion) {
    let mut group = c.benchmark_group("path_multiplicity");
    for side in [16, 32] {
        let b = search_path_bounded_bipartite(side, side, 2, side * side, 1, SearchStrategy::Sweep)
            .unwrap()
            .graph;
        group.bench_with_input(BenchmarkId::from_parameter(side), &b, |bench, b| {
            bench.iter(|| path_multiplicity(black_box(b), 4).unwrap())
        });
    }
    group.finish();
}

fn covering_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_z");
    let cu = clique_union(12, 4, 6.0);
    for (name, f) in [("C4", cycle(4)), ("K2,3", complete_bipartite(2, 3))] {
        group.bench_function(name, |b| b.iter(|| count_z(black_box(&f), &cu).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, cliques, subgraphs, multiplicity, covering_pairs);
criterion_main!(benches);
