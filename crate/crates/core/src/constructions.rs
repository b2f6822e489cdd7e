//! Graph constructions: random clique unions, disjoint cliques, clique
//! graphs of bipartite graphs, degree pruning, the pattern-free deletion
//! construction and a greedy search for bipartite graphs with few short
//! paths between `V`-vertices.

use std::collections::{HashMap, HashSet};

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};

use crate::bounds::{is_2_balanced, turan_exponent, Rational};
use crate::counters::{
    binomial, count_cliques, count_complete_bipartite, count_subgraph, for_each_embedding,
};
use crate::counters::{pair_path_counts, path_multiplicity};
use crate::covers::z_pairs;
use crate::error::{input, Error, Result};
use crate::graph::{BipartiteGraph, CliqueUnion, Graph};

/// Above this many candidate cliques the sampler stops flipping one coin
/// per subset and draws the clique count first.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 20;
/// Below this inclusion probability the clique count is drawn as Poisson.
pub const POISSON_CUTOFF: f64 = 1.0 / (1u64 << 40) as f64;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomCliqueParams {
    pub n: usize,
    pub m: usize,
    /// Expected number of cliques.
    pub u: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RandomCliqueSample {
    pub union: CliqueUnion,
    /// Inclusion probability `u / C(n, m)` after clamping.
    pub p: f64,
    /// Set when `u >= C(n, m)` and `p` was clamped to 1.
    pub saturated: bool,
    /// Whether every subset got its own coin flip.
    pub exhaustive: bool,
}

impl RandomCliqueParams {
    pub fn new(n: usize, m: usize, u: f64, seed: u64) -> Self {
        RandomCliqueParams { n, m, u, seed }
    }

    fn validate(&self) -> Result<()> {
        if self.m < 2 || self.m > self.n {
            return input(format!(
                "need 2 <= m <= n, got m = {}, n = {}",
                self.m, self.n
            ));
        }
        if !(self.u.is_finite() && self.u >= 0.0) {
            return input(format!("need u >= 0, got {}", self.u));
        }
        Ok(())
    }
}

/// Samples the random clique graph: each `m`-subset of `[n]` is kept
/// independently with probability `u / C(n, m)`.
pub fn sample_random_clique_graph(p: &RandomCliqueParams) -> Result<CliqueUnion> {
    Ok(sample_random_cliques(p)?.union)
}

/// [`sample_random_clique_graph`] with the sampling details.
pub fn sample_random_cliques(params: &RandomCliqueParams) -> Result<RandomCliqueSample> {
    params.validate()?;
    let RandomCliqueParams { n, m, u, seed } = *params;
    let mut rng = rng_from_seed(seed);
    let total = binomial(n as u128, m as u128).ok();
    let total_f = total.map_or(f64::INFINITY, |t| t as f64);
    let saturated = u >= total_f;
    let p = (u / total_f).clamp(0.0, 1.0);
    let done = |cliques, exhaustive| {
        Ok(RandomCliqueSample {
            union: CliqueUnion::new(n, m, cliques)?,
            p,
            saturated,
            exhaustive,
        })
    };
    if u == 0.0 {
        return done(Vec::new(), false);
    }
    if let Some(total) = total.filter(|&t| t <= EXHAUSTIVE_LIMIT) {
        let mut cliques = Vec::new();
        let mut subset: Vec<usize> = (0..m).collect();
        for _ in 0..total {
            if rng.random_bool(p) {
                cliques.push(subset.clone());
            }
            next_subset(&mut subset, n);
        }
        return done(cliques, true);
    }
    let k = match total.and_then(|t| u64::try_from(t).ok()) {
        Some(t) if p >= POISSON_CUTOFF => Binomial::new(t, p)
            .map_err(|e| Error::Input(e.to_string()))?
            .sample(&mut rng),
        _ => Poisson::new(u)
            .map_err(|e| Error::Input(e.to_string()))?
            .sample(&mut rng) as u64,
    } as usize;
    let mut seen = HashSet::with_capacity(k);
    let mut cliques = Vec::with_capacity(k);
    let mut tries = 0usize;
    while cliques.len() < k {
        tries += 1;
        if tries > 100 * k {
            return input(format!(
                "could not draw {k} distinct {m}-subsets of {n} within {} tries",
                100 * k
            ));
        }
        let mut c = sample(&mut rng, n, m).into_vec();
        c.sort_unstable();
        if seen.insert(c.clone()) {
            cliques.push(c);
        }
    }
    cliques.sort();
    done(cliques, false)
}

/// Advances a sorted `m`-subset of `[n]` to its lexicographic successor;
/// wraps to nothing meaningful after the last one.
fn next_subset(s: &mut [usize], n: usize) {
    let m = s.len();
    let mut i = m;
    while i > 0 {
        i -= 1;
        if s[i] < n - m + i {
            s[i] += 1;
            for j in i + 1..m {
                s[j] = s[j - 1] + 1;
            }
            return;
        }
    }
}

/// `num` vertex-disjoint copies of `K_size`.
pub fn disjoint_cliques(num: usize, size: usize) -> Graph {
    let edges = (0..num).flat_map(|b| {
        let base = b * size;
        (0..size).flat_map(move |i| (i + 1..size).map(move |j| (base + i, base + j)))
    });
    Graph::from_edges(num * size, edges).expect("blocks are disjoint")
}

/// `K(B)`: the graph on `V` joining two vertices with a common neighbor.
pub fn clique_graph(b: &BipartiteGraph) -> Graph {
    let edges = (0..b.u_size()).flat_map(|u| {
        let nb = b.u_neighbors(u);
        nb.iter()
            .enumerate()
            .flat_map(move |(i, &x)| nb[i + 1..].iter().map(move |&y| (x, y)))
    });
    Graph::from_edges_dedup(b.v_size(), edges).expect("neighbors are in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruneParams {
    pub degree_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PruneReport {
    pub graph: BipartiteGraph,
    /// Original indices of the surviving `U`-vertices.
    pub kept: Vec<usize>,
    pub edges_before: usize,
    pub edges_after: usize,
    /// `edges_after > edges_before / 2`.
    pub majority: bool,
}

/// Drops the `U`-vertices of degree above the cap.
pub fn prune_high_degree(b: &BipartiteGraph, p: &PruneParams) -> Result<PruneReport> {
    if p.degree_cap < 1 {
        return input("degree cap must be at least 1");
    }
    let kept: Vec<usize> = (0..b.u_size())
        .filter(|&u| b.u_degree(u) <= p.degree_cap)
        .collect();
    let graph = b.restrict_u(&kept);
    let (edges_before, edges_after) = (b.edge_count(), graph.edge_count());
    Ok(PruneReport {
        graph,
        kept,
        edges_before,
        edges_after,
        majority: 2 * edges_after > edges_before,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FFreeReport {
    pub m: usize,
    /// `2 (n/m)^{2 - (v(F)-2)/(e(F)-1)}`.
    pub u: f64,
    pub alpha: f64,
    pub saturated: bool,
    /// Cliques sampled before deletion.
    pub initial: usize,
    /// `(copy, covering)` pairs found.
    pub z: u128,
    pub deleted: usize,
    pub final_cliques: usize,
}

/// Samples `G_{alpha u, r, n}` and deletes one clique from every
/// `(copy, covering)` pair so that no copy of `f` survives.
pub fn build_f_free_clique_graph(
    n: usize,
    r: usize,
    f: &Graph,
    alpha: f64,
    seed: u64,
) -> Result<(CliqueUnion, FFreeReport)> {
    if f.edge_count() < 2 {
        return input("pattern needs at least 2 edges");
    }
    if r < 2 || r >= f.n() {
        return input(format!("need 2 <= r < v(F) = {}, got {r}", f.n()));
    }
    let balance = is_2_balanced(f)?;
    if !balance.balanced {
        return input(format!(
            "pattern is not 2-balanced (witness {:?})",
            balance.witness
        ));
    }
    if !(alpha.is_finite() && alpha >= 0.0) {
        return input(format!("need alpha >= 0, got {alpha}"));
    }
    let m = r;
    let exponent = turan_exponent(f.n(), f.edge_count());
    let exponent = *exponent.numer() as f64 / *exponent.denom() as f64;
    let u = 2.0 * (n as f64 / m as f64).powf(exponent);
    let sample = sample_random_cliques(&RandomCliqueParams::new(n, m, alpha * u, seed))?;
    let cu = sample.union;
    let found = z_pairs(f, &cu)?;
    let mut uses: HashMap<usize, usize> = HashMap::new();
    for pair in &found.pairs {
        for &c in &pair.cliques {
            *uses.entry(c).or_default() += 1;
        }
    }
    let mut deleted: HashSet<usize> = HashSet::new();
    for pair in &found.pairs {
        if pair.cliques.iter().any(|c| deleted.contains(c)) {
            continue;
        }
        // The clique shared by the most pairs, lowest index on ties.
        let pick = *pair
            .cliques
            .iter()
            .max_by_key(|&&c| (uses[&c], std::cmp::Reverse(c)))
            .expect("non-empty");
        deleted.insert(pick);
    }
    let mut gone: Vec<usize> = deleted.into_iter().collect();
    gone.sort_unstable();
    let result = cu.without(&gone);
    let g = result.union_graph();
    if count_subgraph(f, &g)? != 0 {
        let mut witness = None;
        for_each_embedding(f, &g, |map| {
            witness.get_or_insert_with(|| map.to_vec());
        });
        return Err(Error::Internal(format!(
            "pattern survived deletion; embedding {witness:?}"
        )));
    }
    let report = FFreeReport {
        m,
        u,
        alpha,
        saturated: sample.saturated,
        initial: cu.len(),
        z: found.z,
        deleted: gone.len(),
        final_cliques: result.len(),
    };
    Ok((result, report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStrategy {
    /// Propose uniformly random `U`-`V` pairs up to the given budget.
    Random { budget: usize },
    /// Try every pair once in a random order; the result is maximal.
    Sweep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub graph: BipartiteGraph,
    pub target: usize,
    pub proposals: usize,
    pub reached_target: bool,
    /// Realized path multiplicity (paths of length 2 and 4).
    pub multiplicity: usize,
}

/// Whether adding `(u, v)` kept every `V`-pair within `ell` short paths.
/// Only pairs with a path through the new edge can have changed, and each
/// such path has `v` as an endpoint or as its middle vertex.
fn still_bounded(b: &BipartiteGraph, v: usize, ell: usize) -> bool {
    let mut sources = vec![v];
    for &u in b.v_neighbors(v) {
        sources.extend_from_slice(b.u_neighbors(u));
    }
    sources.sort_unstable();
    sources.dedup();
    sources
        .into_iter()
        .all(|s| pair_path_counts(b, s, 4).into_iter().all(|c| c <= ell))
}

/// Greedy randomized search for a bipartite graph with at most `ell` paths
/// of length at most 4 between any two `V`-vertices.
pub fn search_path_bounded_bipartite(
    m: usize,
    n: usize,
    ell: usize,
    edge_target: usize,
    seed: u64,
    strategy: SearchStrategy,
) -> Result<SearchReport> {
    if ell < 1 {
        return input("need ell >= 1");
    }
    let mut rng = rng_from_seed(seed);
    let mut b = BipartiteGraph::new(m, n);
    let mut proposals = 0;
    let try_edge = |b: &mut BipartiteGraph, u: usize, v: usize| {
        if b.add_edge(u, v) && !still_bounded(b, v, ell) {
            b.remove_edge(u, v);
        }
    };
    if m > 0 && n > 0 {
        match strategy {
            SearchStrategy::Random { budget } => {
                while proposals < budget && b.edge_count() < edge_target {
                    proposals += 1;
                    let (u, v) = (rng.random_range(0..m), rng.random_range(0..n));
                    try_edge(&mut b, u, v);
                }
            }
            SearchStrategy::Sweep => {
                let mut pairs: Vec<(usize, usize)> =
                    (0..m).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
                pairs.shuffle(&mut rng);
                for (u, v) in pairs {
                    if b.edge_count() >= edge_target {
                        break;
                    }
                    proposals += 1;
                    try_edge(&mut b, u, v);
                }
            }
        }
    }
    let multiplicity = path_multiplicity(&b, 4)?;
    if multiplicity > ell {
        return Err(Error::Internal(format!(
            "search produced multiplicity {multiplicity} > {ell}"
        )));
    }
    Ok(SearchReport {
        reached_target: b.edge_count() >= edge_target,
        graph: b,
        target: edge_target,
        proposals,
        multiplicity,
    })
}

/// `4 ell^{1/4} n^{3/4} m^{1/2} + 10m + 10n`, the edge ceiling for
/// bipartite graphs with at most `ell` short paths between `V`-pairs.
pub fn path_bounded_edge_ceiling(m: usize, n: usize, ell: usize) -> f64 {
    let (m, n, ell) = (m as f64, n as f64, ell as f64);
    4.0 * ell.powf(0.25) * n.powf(0.75) * m.sqrt() + 10.0 * m + 10.0 * n
}

/// Exact form of `e < 4 ell^{1/4} n^{3/4} m^{1/2} + 10m + 10n`: with
/// `x = e - 10m - 10n`, either `x < 0` or `x^4 < 256 ell n^3 m^2`.
pub fn below_edge_ceiling(e: usize, m: usize, n: usize, ell: usize) -> bool {
    let x = e as i128 - 10 * (m + n) as i128;
    if x < 0 {
        return true;
    }
    let x = x as u128;
    let lhs = x.checked_pow(4);
    let rhs = 256u128
        .checked_mul(ell as u128)
        .and_then(|v| v.checked_mul((n as u128).pow(3)))
        .and_then(|v| v.checked_mul((m as u128).pow(2)));
    match (lhs, rhs) {
        (Some(l), Some(r)) => l < r,
        _ => (e as f64) < path_bounded_edge_ceiling(m, n, ell),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma37Params {
    pub n: usize,
    pub r: usize,
    pub eps: Rational,
    pub ell: usize,
    pub t: usize,
    /// Edge target is `2 c n^{3/2 - eps}`.
    pub c: f64,
    /// Degree cap is `D ell n^eps`.
    pub d: f64,
    pub seed: u64,
    /// Proposal budget; `None` tries every pair once.
    pub budget: Option<usize>,
}

pub const DEFAULT_C: f64 = 1.0;
pub const DEFAULT_D: f64 = 4.0;

impl Lemma37Params {
    pub fn new(n: usize, r: usize, eps: Rational, ell: usize, t: usize, seed: u64) -> Self {
        Lemma37Params {
            n,
            r,
            eps,
            ell,
            t,
            c: DEFAULT_C,
            d: DEFAULT_D,
            seed,
            budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lemma37Report {
    pub graph: Graph,
    pub bipartite: BipartiteGraph,
    pub u_size: usize,
    pub edge_target: usize,
    pub search_edges: usize,
    pub reached_target: bool,
    pub degree_cap: usize,
    pub pruned_edges: usize,
    pub majority: bool,
    /// Realized maximum `U`-degree after pruning.
    pub max_degree: usize,
    pub multiplicity: usize,
    pub cliques: u128,
    pub k2t: u128,
    /// `ell^{2t} d^{2+t} |U'|` with realized `d` and multiplicity bound.
    pub k2t_cap: f64,
}

/// Search, prune, then take the clique graph.
pub fn lemma37_construction(p: &Lemma37Params) -> Result<Lemma37Report> {
    let Lemma37Params {
        n,
        r,
        eps,
        ell,
        t,
        c,
        d,
        seed,
        budget,
    } = *p;
    if r < 3 {
        return input("need r >= 3");
    }
    if !(ell >= 2 && t > ell && t > r - 2) {
        return input(format!(
            "need ell >= 2 and t > max(ell, r - 2), got ell = {ell}, t = {t}, r = {r}"
        ));
    }
    let eps_max = Rational::new(r as i64 - 2, 2 * t as i64);
    if eps < Rational::new(0, 1) || eps > eps_max {
        return input(format!(
            "need 0 <= eps <= (r-2)/(2t) = {eps_max}, got {eps}"
        ));
    }
    if !(c > 0.0 && d > 0.0) {
        return input("constants c and D must be positive");
    }
    let eps_f = *eps.numer() as f64 / *eps.denom() as f64;
    let nf = n as f64;
    let u_size = nf.powf(1.5 - 2.0 * eps_f).ceil() as usize;
    let edge_target = (2.0 * c * nf.powf(1.5 - eps_f)).ceil() as usize;
    let strategy = budget.map_or(SearchStrategy::Sweep, |budget| SearchStrategy::Random {
        budget,
    });
    let search = search_path_bounded_bipartite(u_size, n, ell, edge_target, seed, strategy)?;
    let degree_cap = (d * ell as f64 * nf.powf(eps_f)).ceil().max(1.0) as usize;
    let pruned = prune_high_degree(&search.graph, &PruneParams { degree_cap })?;
    let graph = clique_graph(&pruned.graph);
    let max_degree = pruned.graph.max_u_degree();
    let multiplicity = path_multiplicity(&pruned.graph, 4)?;
    let cliques = count_cliques(&graph, r)?;
    let k2t = count_complete_bipartite(&graph, 2, t)?;
    let k2t_cap = (ell as f64).powi(2 * t as i32)
        * (max_degree as f64).powi(2 + t as i32)
        * pruned.graph.u_size() as f64;
    Ok(Lemma37Report {
        graph,
        u_size,
        edge_target,
        search_edges: search.graph.edge_count(),
        reached_target: search.reached_target,
        degree_cap,
        pruned_edges: pruned.edges_after,
        majority: pruned.majority,
        max_degree,
        multiplicity,
        cliques,
        k2t,
        k2t_cap,
        bipartite: pruned.graph,
    })
}

/// Exact check of `N(K_{2,t}, K(B)) <= ell^{2t} d^{2+t} |U|` with `d` the
/// maximum `U`-degree.
pub fn k2t_within_cap(b: &BipartiteGraph, ell: usize, t: usize) -> Result<(u128, u128, bool)> {
    let count = count_complete_bipartite(&clique_graph(b), 2, t)?;
    let cap = (ell as u128)
        .checked_pow(2 * t as u32)
        .and_then(|x| x.checked_mul((b.max_u_degree() as u128).checked_pow(2 + t as u32)?))
        .and_then(|x| x.checked_mul(b.u_size() as u128))
        .unwrap_or(u128::MAX);
    Ok((count, cap, count <= cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counters::count_cliques;
    use crate::named::{cycle, named_graph};

    #[test]
    fn subsets_enumerate_in_order() {
        let mut s = vec![0, 1];
        let mut seen = vec![s.clone()];
        for _ in 1..6 {
            next_subset(&mut s, 4);
            seen.push(s.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn saturated_and_empty_samples() {
        for seed in 0..200 {
            let s = sample_random_cliques(&RandomCliqueParams::new(4, 4, 1.0, seed)).unwrap();
            assert_eq!(s.union.cliques(), &[vec![0, 1, 2, 3]]);
            assert!(s.saturated && s.p == 1.0);
        }
        assert!(
            sample_random_clique_graph(&RandomCliqueParams::new(10, 3, 0.0, 7))
                .unwrap()
                .is_empty()
        );
        assert!(sample_random_clique_graph(&RandomCliqueParams::new(3, 4, 1.0, 7)).is_err());
        assert!(sample_random_clique_graph(&RandomCliqueParams::new(5, 1, 1.0, 7)).is_err());
        assert!(sample_random_clique_graph(&RandomCliqueParams::new(5, 2, -1.0, 7)).is_err());
    }

    #[test]
    fn sampler_is_deterministic() {
        for p in [
            RandomCliqueParams::new(12, 3, 5.0, 99),
            RandomCliqueParams::new(60, 6, 5.0, 99),
        ] {
            assert_eq!(
                sample_random_clique_graph(&p).unwrap(),
                sample_random_clique_graph(&p).unwrap()
            );
        }
    }

    #[test]
    fn sampler_mean_matches_u() {
        let trials = 10_000;
        for (n, m) in [(20, 4), (40, 6)] {
            let total: usize = (0..trials)
                .map(|seed| {
                    sample_random_clique_graph(&RandomCliqueParams::new(n, m, 8.0, seed))
                        .unwrap()
                        .len()
                })
                .sum();
            let mean = total as f64 / trials as f64;
            let standard_error = (8.0 / trials as f64).sqrt();
            assert!((mean - 8.0).abs() < 4.0 * standard_error, "{n} {m}: {mean}");
        }
    }

    #[test]
    fn disjoint_clique_examples() {
        assert_eq!(count_cliques(&disjoint_cliques(3, 4), 3).unwrap(), 12);
        assert_eq!(count_cliques(&disjoint_cliques(1, 5), 5).unwrap(), 1);
        let matching = disjoint_cliques(5, 2);
        assert_eq!((matching.n(), matching.edge_count()), (10, 5));
        assert_eq!(count_cliques(&matching, 3).unwrap(), 0);
    }

    fn bip_c8() -> BipartiteGraph {
        BipartiteGraph::from_edges(
            4,
            4,
            [
                (0, 0),
                (0, 1),
                (1, 1),
                (1, 2),
                (2, 2),
                (2, 3),
                (3, 3),
                (3, 0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn clique_graph_examples() {
        assert_eq!(
            clique_graph(&BipartiteGraph::complete(1, 3)),
            Graph::complete(3)
        );
        assert_eq!(clique_graph(&bip_c8()), cycle(4));
        assert_eq!(clique_graph(&BipartiteGraph::new(3, 5)), Graph::empty(5));
    }

    #[test]
    fn prune_examples() {
        let k23 = BipartiteGraph::complete(2, 3);
        let r = prune_high_degree(&k23, &PruneParams { degree_cap: 3 }).unwrap();
        assert_eq!(r.graph, k23);
        let r = prune_high_degree(&k23, &PruneParams { degree_cap: 2 }).unwrap();
        assert_eq!((r.graph.u_size(), r.edges_after), (0, 0));
        assert!(!r.majority);
        let b = BipartiteGraph::from_edges(2, 6, (0..5).map(|v| (0, v)).chain([(1, 5)])).unwrap();
        let r = prune_high_degree(&b, &PruneParams { degree_cap: 2 }).unwrap();
        assert_eq!((r.kept.clone(), r.edges_after), (vec![1], 1));
        assert!(prune_high_degree(&b, &PruneParams { degree_cap: 0 }).is_err());
    }

    #[test]
    fn f_free_examples() {
        let c4 = cycle(4);
        let (cu, report) = build_f_free_clique_graph(10, 3, &c4, 0.0, 1).unwrap();
        assert!(cu.is_empty());
        assert_eq!(report.final_cliques, 0);
        let mut positive = 0;
        for seed in 0..30 {
            let (cu, report) = build_f_free_clique_graph(30, 3, &c4, 0.1, seed).unwrap();
            assert_eq!(count_subgraph(&c4, &cu.union_graph()).unwrap(), 0);
            assert_eq!(report.final_cliques, cu.len());
            positive += usize::from(report.final_cliques > 0);
        }
        assert!(positive >= 15);
        let two_k2 = named_graph("2K2").unwrap().graph;
        assert!(build_f_free_clique_graph(10, 3, &two_k2, 0.1, 1).is_ok());
        let k4_pendant =
            Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        assert!(build_f_free_clique_graph(10, 3, &k4_pendant, 0.1, 1).is_err());
    }

    #[test]
    fn search_examples() {
        let r =
            search_path_bounded_bipartite(4, 4, 1, 4, 3, SearchStrategy::Random { budget: 1000 })
                .unwrap();
        assert!(r.multiplicity <= 1);
        let r = search_path_bounded_bipartite(1, 5, 1, 5, 3, SearchStrategy::Sweep).unwrap();
        assert_eq!(r.graph, BipartiteGraph::complete(1, 5));
        assert_eq!(r.multiplicity, 1);
        assert!(r.reached_target);
        let target = (4.0 * 2f64.powf(0.25) * 16f64.powf(0.75) * 4.0).ceil() as usize;
        let r = search_path_bounded_bipartite(16, 16, 2, target, 5, SearchStrategy::Sweep).unwrap();
        assert!(r.multiplicity <= 2);
        assert!(below_edge_ceiling(r.graph.edge_count(), 16, 16, 2));
        assert!(search_path_bounded_bipartite(3, 3, 0, 3, 5, SearchStrategy::Sweep).is_err());
    }

    #[test]
    fn ceiling_exact_matches_float() {
        for e in 0..200 {
            for (m, n, ell) in [(4, 4, 1), (16, 16, 2), (32, 20, 3)] {
                let f = (e as f64) < path_bounded_edge_ceiling(m, n, ell);
                assert_eq!(below_edge_ceiling(e, m, n, ell), f, "{e} {m} {n} {ell}");
            }
        }
    }

    #[test]
    fn sparse_clique_pipeline_examples() {
        let r = lemma37_construction(&Lemma37Params::new(16, 3, Rational::new(0, 1), 2, 3, 11))
            .unwrap();
        assert!(r.multiplicity <= 2);
        assert!((r.k2t as f64) <= r.k2t_cap);
        let r =
            lemma37_construction(&Lemma37Params::new(9, 3, Rational::new(0, 1), 2, 3, 4)).unwrap();
        assert_eq!(
            r.cliques,
            count_subgraph(&Graph::complete(3), &r.graph).unwrap()
        );
        assert!(
            lemma37_construction(&Lemma37Params::new(9, 3, Rational::new(1, 2), 2, 3, 4)).is_err()
        );
        let mut p = Lemma37Params::new(9, 3, Rational::new(0, 1), 2, 3, 4);
        p.budget = Some(0);
        let r = lemma37_construction(&p).unwrap();
        assert_eq!((r.graph.edge_count(), r.cliques, r.k2t), (0, 0, 0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(40))]

            #[test]
            fn search_output_is_bounded(m in 1usize..12, n in 2usize..12, ell in 1usize..4, seed: u64) {
                let r = search_path_bounded_bipartite(m, n, ell, m * n, seed, SearchStrategy::Sweep).unwrap();
                prop_assert!(path_multiplicity(&r.graph, 4).unwrap() <= ell);
                prop_assert!(below_edge_ceiling(r.graph.edge_count(), m, n, ell));
                if ell >= 2 {
                    for t in ell + 1..ell + 3 {
                        prop_assert!(k2t_within_cap(&r.graph, ell, t).unwrap().2);
                    }
                }
            }

            #[test]
            fn clique_graph_is_union_of_neighborhoods(edges in proptest::collection::vec((0usize..5, 0usize..7), 0..20)) {
                let mut b = BipartiteGraph::new(5, 7);
                for (u, v) in edges {
                    b.add_edge(u, v);
                }
                let k = clique_graph(&b);
                for x in 0..7 {
                    for y in x + 1..7 {
                        let shared = (0..5).any(|u| b.has_edge(u, x) && b.has_edge(u, y));
                        prop_assert_eq!(k.has_edge(x, y), shared);
                    }
                }
            }
        }
    }
}
