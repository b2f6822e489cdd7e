//! Minimum-degree subhypergraph extraction by peeling, and greedy tree
//! counting.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::bounds::Rational;
use crate::counters::{count_embeddings, count_subgraph, list_cliques};
use crate::error::{input, Error, Result};
use crate::graph::{Graph, Hypergraph};

/// Relative slack for the floating-point threshold comparison.
pub const RELATIVE_EPSILON: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ExtractionResult {
    pub kept_vertices: Vec<usize>,
    /// Indices of the hyperedges lying inside the kept set.
    pub kept_edges: Vec<usize>,
    pub min_degree: usize,
    /// `2^{-b} (v(H')/n)^{1/b} e(H) / v(H')`.
    pub guarantee: f64,
    /// Vertices in the order they were peeled.
    pub removed: Vec<usize>,
}

/// `2^{-b} (kept/n)^{1/b} e / kept`.
pub fn degree_threshold(b: f64, kept: usize, n: usize, e: usize) -> f64 {
    let kept = kept as f64;
    2f64.powf(-b) * (kept / n as f64).powf(1.0 / b) * e as f64 / kept
}

/// Exact test of `deg >= 2^{-p/q} (kept/n)^{q/p} e / kept`, by raising both
/// sides to the power `pq`.
pub fn meets_threshold_exact(deg: usize, kept: usize, n: usize, e: usize, b: Rational) -> bool {
    let (p, q) = (*b.numer() as u32, *b.denom() as u32);
    if deg == 0 {
        return e == 0;
    }
    let big = |x: usize| BigInt::from(x);
    let lhs = Pow::pow(big(deg) * big(kept), p * q)
        * Pow::pow(BigInt::from(2), p * p)
        * Pow::pow(big(n), q * q);
    let rhs = Pow::pow(big(kept), q * q) * Pow::pow(big(e), p * q);
    lhs >= rhs
}

fn check_b(h: &Hypergraph, b: f64) -> Result<()> {
    if h.edge_count() == 0 {
        return input("hypergraph has no edges");
    }
    if !(b.is_finite() && b >= 1.0) {
        return input(format!("need b >= 1, got {b}"));
    }
    Ok(())
}

/// Peels vertices whose degree in the current induced subhypergraph falls
/// below `2^{-b} (n_cur/n)^{1/b} e(H)/n_cur`, smallest id first, until none
/// does.
pub fn extract_min_degree(h: &Hypergraph, b: f64) -> Result<ExtractionResult> {
    check_b(h, b)?;
    let (n, e) = (h.n(), h.edge_count());
    peel(h, b, |deg, kept| {
        (deg as f64) < degree_threshold(b, kept, n, e) * (1.0 - RELATIVE_EPSILON)
    })
}

/// [`extract_min_degree`] with a rational `b` and exact comparisons.
pub fn extract_min_degree_exact(h: &Hypergraph, b: Rational) -> Result<ExtractionResult> {
    if b < Rational::one() || *b.numer() > 64 || *b.denom() > 64 {
        return input(format!("need rational 1 <= b with small terms, got {b}"));
    }
    let bf = *b.numer() as f64 / *b.denom() as f64;
    check_b(h, bf)?;
    let (n, e) = (h.n(), h.edge_count());
    peel(h, bf, |deg, kept| {
        !meets_threshold_exact(deg, kept, n, e, b)
    })
}

fn peel(
    h: &Hypergraph,
    b: f64,
    violates: impl Fn(usize, usize) -> bool,
) -> Result<ExtractionResult> {
    let n = h.n();
    let mut alive = vec![true; n];
    let mut edge_alive = vec![true; h.edge_count()];
    let mut degree: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut kept = n;
    let mut removed = Vec::new();
    while kept > 0 {
        let Some(v) = (0..n).find(|&v| alive[v] && violates(degree[v], kept)) else {
            break;
        };
        alive[v] = false;
        kept -= 1;
        removed.push(v);
        for &ei in h.incident(v) {
            if edge_alive[ei] {
                edge_alive[ei] = false;
                for &w in &h.edges()[ei] {
                    degree[w] -= 1;
                }
            }
        }
    }
    if kept == 0 {
        return Err(Error::Internal(format!(
            "peeling emptied the hypergraph (b = {b}, order {removed:?})"
        )));
    }
    let kept_vertices: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let kept_edges: Vec<usize> = (0..h.edge_count()).filter(|&i| edge_alive[i]).collect();
    let min_degree = kept_vertices.iter().map(|&v| degree[v]).min().unwrap_or(0);
    let guarantee = degree_threshold(b, kept, n, h.edge_count());
    Ok(ExtractionResult {
        kept_vertices,
        kept_edges,
        min_degree,
        guarantee,
        removed,
    })
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// `v (delta - t)^{t-1}`, saturating at zero when `delta < t`.
fn greedy_runs_floor(v: usize, delta: usize, t: usize) -> Result<u128> {
    let base = delta.saturating_sub(t) as u128;
    let mut num = v as u128;
    for _ in 1..t {
        num = num
            .checked_mul(base)
            .ok_or_else(|| Error::Capability("tree bound exceeds 128 bits".into()))?;
    }
    Ok(num)
}

/// `ceil(v (delta - t)^{t-1} / t!)` with `t = v(T)`; zero when `delta <= t`.
pub fn tree_count_bound(v: usize, delta: usize, t: usize) -> Result<u128> {
    if delta <= t {
        return Ok(0);
    }
    Ok(greedy_runs_floor(v, delta, t)?.div_ceil(factorial(t)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCountReport {
    pub bound: u128,
    /// Runs of the greedy procedure: root image, then a fresh neighbor of
    /// the parent's image for each later tree vertex.
    pub greedy_ways: u128,
    /// `v(G) (delta - v(T))^{v(T)-1}`, the guaranteed number of runs.
    pub greedy_floor: u128,
    pub exact: u128,
    pub certified: bool,
}

/// Greedy lower bound on copies of the tree `t` in `g`, certified against
/// the exact count.
pub fn greedy_tree_count(g: &Graph, t: &Graph, delta: usize) -> Result<TreeCountReport> {
    if !t.is_tree() {
        return input("pattern is not a tree");
    }
    if delta < 2 * t.n() {
        return input(format!("need delta >= 2 v(T) = {}, got {delta}", 2 * t.n()));
    }
    if g.min_degree() < delta {
        return input(format!(
            "graph has minimum degree {} < delta = {delta}",
            g.min_degree()
        ));
    }
    let bound = tree_count_bound(g.n(), delta, t.n())?;
    let greedy_floor = greedy_runs_floor(g.n(), delta, t.n())?;
    let greedy_ways = count_embeddings(t, g)?;
    let exact = count_subgraph(t, g)?;
    Ok(TreeCountReport {
        bound,
        greedy_ways,
        greedy_floor,
        exact,
        certified: exact >= bound && greedy_ways >= greedy_floor,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Prop15Report {
    pub r: usize,
    /// `(v(T)-1)/(v(T)-r)`.
    pub b: Rational,
    pub cliques: usize,
    pub kept_vertices: usize,
    /// Guaranteed minimum clique-degree after extraction.
    pub guarantee: f64,
    /// Realized minimum clique-degree after extraction.
    pub clique_degree: usize,
    /// `floor(clique_degree^{1/(r-1)})`, a lower bound on graph degree
    /// inside the kept set.
    pub degree_bound: usize,
    pub tree_bound: u128,
    pub exact: u128,
    pub certified: bool,
}

/// Largest `d` with `d^k <= x`.
fn integer_root(x: usize, k: usize) -> usize {
    let fits = |d: usize| {
        (d as u128)
            .checked_pow(k as u32)
            .is_some_and(|p| p <= x as u128)
    };
    let mut d = (x as f64).powf(1.0 / k as f64).round() as usize + 1;
    while d > 0 && !fits(d) {
        d -= 1;
    }
    while fits(d + 1) {
        d += 1;
    }
    d
}

/// Tree supersaturation pipeline: clique hypergraph, extraction, degree
/// conversion and the greedy tree bound on the extracted vertex set.
pub fn prop15_pipeline(g: &Graph, t: &Graph, r: usize) -> Result<Prop15Report> {
    if !t.is_tree() {
        return input("pattern is not a tree");
    }
    if r < 2 || r >= t.n() {
        return input(format!("need 2 <= r < v(T) = {}, got {r}", t.n()));
    }
    let b = Rational::new(t.n() as i64 - 1, (t.n() - r) as i64);
    let exact = count_subgraph(t, g)?;
    let cliques = list_cliques(g, r);
    let empty = Prop15Report {
        r,
        b,
        cliques: cliques.len(),
        kept_vertices: 0,
        guarantee: 0.0,
        clique_degree: 0,
        degree_bound: 0,
        tree_bound: 0,
        exact,
        certified: true,
    };
    if cliques.is_empty() {
        return Ok(empty);
    }
    let h = Hypergraph::new(g.n(), cliques)?;
    let ext = extract_min_degree_exact(&h, b)?;
    let degree_bound = integer_root(ext.min_degree, r - 1);
    let tree_bound = tree_count_bound(ext.kept_vertices.len(), degree_bound, t.n())?;
    Ok(Prop15Report {
        kept_vertices: ext.kept_vertices.len(),
        guarantee: ext.guarantee,
        clique_degree: ext.min_degree,
        degree_bound,
        tree_bound,
        certified: tree_bound <= exact,
        ..empty
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{clique, path, star};

    fn hyper(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    fn graph_hyper(g: &Graph) -> Hypergraph {
        Hypergraph::new(g.n(), g.edges().map(|(a, b)| vec![a, b]).collect()).unwrap()
    }

    #[test]
    fn single_edge_kept() {
        let r = extract_min_degree(&hyper(3, &[&[0, 1, 2]]), 1.0).unwrap();
        assert_eq!(r.kept_vertices, vec![0, 1, 2]);
        assert_eq!(r.min_degree, 1);
        assert!((r.guarantee - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn star_sheds_isolated_vertices() {
        let mut edges: Vec<Vec<usize>> = (1..=5).map(|l| vec![0, l]).collect();
        edges.sort();
        let h = Hypergraph::new(10, edges).unwrap();
        let r = extract_min_degree(&h, 1.0).unwrap();
        assert!(r.min_degree >= 1);
        assert!(r.kept_vertices.iter().all(|&v| v <= 5));
        assert_eq!(r.removed, vec![6, 7, 8, 9]);
        let exact = extract_min_degree_exact(&h, Rational::one()).unwrap();
        assert_eq!(exact.kept_vertices, r.kept_vertices);
    }

    #[test]
    fn k6_kept_whole() {
        let r = extract_min_degree(&graph_hyper(&clique(6)), 2.0).unwrap();
        assert_eq!(r.kept_vertices.len(), 6);
        assert_eq!(r.min_degree, 5);
    }

    #[test]
    fn exact_threshold_agrees_with_float() {
        for (deg, kept, n, e) in [(1, 3, 3, 1), (0, 2, 5, 3), (5, 6, 6, 15), (2, 4, 12, 9)] {
            for b in [
                Rational::one(),
                Rational::new(3, 2),
                Rational::new(2, 1),
                Rational::new(3, 1),
            ] {
                let bf = *b.numer() as f64 / *b.denom() as f64;
                let float = deg as f64 >= degree_threshold(bf, kept, n, e);
                assert_eq!(
                    meets_threshold_exact(deg, kept, n, e, b),
                    float,
                    "{deg} {kept} {n} {e} {b}"
                );
            }
        }
    }

    #[test]
    fn tree_count_examples() {
        let r = greedy_tree_count(&clique(9), &path(2), 8).unwrap();
        assert_eq!(r.bound, 38);
        assert_eq!(r.exact, 252);
        assert!(r.certified);
        let r = greedy_tree_count(&clique(7), &path(1), 6).unwrap();
        assert_eq!((r.bound, r.exact), (14, 21));
        // Boundary: delta = 2 v(T).
        let r = greedy_tree_count(&clique(7), &path(2), 6).unwrap();
        assert!(r.bound > 0 && r.certified);
        assert!(greedy_tree_count(&clique(9), &path(2), 5).is_err());
        assert!(greedy_tree_count(&clique(5), &path(2), 6).is_err());
    }

    #[test]
    fn pipeline_examples() {
        let blocks = crate::constructions::disjoint_cliques(4, 6);
        let r = prop15_pipeline(&blocks, &path(3), 3).unwrap();
        assert!(r.certified && r.tree_bound <= r.exact);
        assert_eq!(r.cliques, 80);

        let bip = crate::named::complete_bipartite(4, 4);
        let r = prop15_pipeline(&bip, &path(3), 3).unwrap();
        assert_eq!(r.tree_bound, 0);

        let r = prop15_pipeline(&clique(10), &star(4), 3).unwrap();
        assert_eq!(r.exact, 10 * 126);
        assert!(r.tree_bound <= r.exact);
        assert!(prop15_pipeline(&clique(10), &clique(3), 2).is_err());
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_root(10, 2), 3);
        assert_eq!(integer_root(9, 2), 3);
        assert_eq!(integer_root(36, 1), 36);
        assert_eq!(integer_root(0, 2), 0);
        assert_eq!(integer_root(26, 3), 2);
        assert_eq!(integer_root(27, 3), 3);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_hyper() -> impl Strategy<Value = Hypergraph> {
            (2usize..=12).prop_flat_map(|n| {
                proptest::collection::vec(
                    (2usize..=4).prop_flat_map(move |k| {
                        proptest::sample::subsequence((0..n).collect::<Vec<_>>(), k.min(n))
                    }),
                    1..30,
                )
                .prop_map(move |edges| Hypergraph::new(n, edges).unwrap())
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(200))]

            #[test]
            fn extraction_meets_guarantee(h in arb_hyper(), bi in 0usize..4) {
                let b = [Rational::one(), Rational::new(3, 2), Rational::new(2, 1), Rational::new(3, 1)][bi];
                let r = extract_min_degree_exact(&h, b).unwrap();
                prop_assert!(!r.kept_vertices.is_empty());
                prop_assert!(meets_threshold_exact(r.min_degree, r.kept_vertices.len(), h.n(), h.edge_count(), b));
                let again = extract_min_degree_exact(&h, b).unwrap();
                prop_assert_eq!(again, r);
            }
        }
    }
}
