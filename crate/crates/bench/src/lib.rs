//! Deterministic inputs shared by the benchmarks.

use cliquelab::constructions::{rng_from_seed, sample_random_clique_graph, RandomCliqueParams};
use cliquelab::verify::random_graph;
use cliquelab::{CliqueUnion, Graph};

pub const SEED: u64 = 0xbe4c;

pub fn gnp(n: usize, p: f64) -> Graph {
    random_graph(&mut rng_from_seed(SEED ^ n as u64), n, p)
}

pub fn clique_union(n: usize, m: usize, u: f64) -> CliqueUnion {
    sample_random_clique_graph(&RandomCliqueParams::new(n, m, u, SEED)).expect("valid parameters")
}
