//! Exact subgraph counting.
//!
//! Counts are numbers of subgraphs (unlabeled copies), never induced
//! copies. All arithmetic is checked `u128`; overflow is reported as
//! [`Error::Capability`].

use std::time::Instant;

use rayon::prelude::*;

use crate::error::{capability, input, Error, Result};
use crate::graph::{intersect_sorted, BipartiteGraph, Graph};
use crate::named::{NamedGraph, PatternKind};

/// Largest pattern accepted by the generic embedding counter.
pub const MAX_PATTERN_VERTICES: usize = 10;

/// Edge count above which clique counting fans out over root vertices.
const PARALLEL_EDGE_THRESHOLD: usize = 20_000;

#[derive(Clone, Debug, PartialEq)]
pub struct CountReport {
    pub pattern: String,
    pub count: u128,
    pub elapsed: f64,
}

fn overflow() -> Error {
    Error::Capability("count exceeds 128 bits".into())
}

/// `C(n, k)` with overflow checking.
pub fn binomial(n: u128, k: u128) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication.
        acc = acc.checked_mul(n - i).ok_or_else(overflow)? / (i + 1);
    }
    Ok(acc)
}

/// Forward adjacency along the degeneracy order: each vertex keeps the
/// neighbors that come later, sorted by vertex id.
fn forward_adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let order = g.degeneracy_order();
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| pos[w] > pos[v])
                .collect()
        })
        .collect()
}

fn extend_cliques(forward: &[Vec<usize>], cands: &[usize], remaining: usize) -> Option<u128> {
    if remaining == 1 {
        return Some(cands.len() as u128);
    }
    let mut total: u128 = 0;
    for &v in cands {
        let next = intersect_sorted(cands, &forward[v]);
        if next.len() + 1 < remaining {
            continue;
        }
        total = total.checked_add(extend_cliques(forward, &next, remaining - 1)?)?;
    }
    Some(total)
}

/// Number of `r`-vertex complete subgraphs. `r = 0` counts the empty
/// clique once.
pub fn count_cliques(g: &Graph, r: usize) -> Result<u128> {
    match r {
        0 => return Ok(1),
        1 => return Ok(g.n() as u128),
        2 => return Ok(g.edge_count() as u128),
        _ => {}
    }
    let forward = forward_adjacency(g);
    let root = |v: usize| extend_cliques(&forward, &forward[v], r - 1);
    let total = if g.edge_count() >= PARALLEL_EDGE_THRESHOLD {
        (0..g.n())
            .into_par_iter()
            .map(root)
            .try_reduce(|| 0, u128::checked_add)
    } else {
        (0..g.n()).try_fold(0u128, |acc, v| acc.checked_add(root(v)?))
    };
    total.ok_or_else(overflow)
}

/// Every `r`-clique as an ascending vertex list.
pub fn list_cliques(g: &Graph, r: usize) -> Vec<Vec<usize>> {
    fn walk(
        forward: &[Vec<usize>],
        cands: &[usize],
        stack: &mut Vec<usize>,
        r: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if stack.len() == r {
            let mut c = stack.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        for &v in cands {
            stack.push(v);
            let next = intersect_sorted(cands, &forward[v]);
            walk(forward, &next, stack, r, out);
            stack.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        out.push(Vec::new());
        return out;
    }
    let forward = forward_adjacency(g);
    let mut stack = Vec::with_capacity(r);
    for v in 0..g.n() {
        stack.push(v);
        walk(&forward, &forward[v], &mut stack, r, &mut out);
        stack.pop();
    }
    out.sort();
    out
}

/// Placement plan for embedding a pattern: vertex order plus, for each
/// position, the earlier positions it must be adjacent to.
struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
    degree: Vec<usize>,
}

impl Plan {
    fn new(f: &Graph) -> Plan {
        let k = f.n();
        let mut placed = vec![false; k];
        let mut order = Vec::with_capacity(k);
        while order.len() < k {
            // Most already-placed neighbors first, then highest degree.
            let next = (0..k)
                .filter(|&x| !placed[x])
                .max_by_key(|&x| {
                    let linked = f.neighbors(x).iter().filter(|&&y| placed[y]).count();
                    (linked, f.degree(x), std::cmp::Reverse(x))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
        let mut position = vec![0; k];
        for (i, &x) in order.iter().enumerate() {
            position[x] = i;
        }
        let back = order
            .iter()
            .map(|&x| {
                let mut b: Vec<usize> = f
                    .neighbors(x)
                    .iter()
                    .map(|&y| position[y])
                    .filter(|&p| p < position[x])
                    .collect();
                b.sort_unstable();
                b
            })
            .collect();
        let degree = order.iter().map(|&x| f.degree(x)).collect();
        Plan {
            order,
            back,
            degree,
        }
    }
}

struct Embedder<'a, V: FnMut(&[usize])> {
    plan: &'a Plan,
    g: &'a Graph,
    image: Vec<usize>,
    used: Vec<bool>,
    visit: V,
}

impl<V: FnMut(&[usize])> Embedder<'_, V> {
    fn search(&mut self, depth: usize) {
        if depth == self.plan.order.len() {
            // Report the map indexed by pattern vertex.
            let mut map = vec![0; depth];
            for (i, &x) in self.plan.order.iter().enumerate() {
                map[x] = self.image[i];
            }
            (self.visit)(&map);
            return;
        }
        let plan = self.plan;
        let back = &plan.back[depth];
        let cands: Vec<usize> = match back.first() {
            Some(&anchor) => self.g.neighbors(self.image[anchor]).to_vec(),
            None => (0..self.g.n()).collect(),
        };
        for c in cands {
            if self.used[c] || self.g.degree(c) < plan.degree[depth] {
                continue;
            }
            if back
                .iter()
                .skip(1)
                .any(|&p| !self.g.has_edge(self.image[p], c))
            {
                continue;
            }
            self.used[c] = true;
            self.image[depth] = c;
            self.search(depth + 1);
            self.used[c] = false;
        }
    }
}

/// Calls `visit` with every injective adjacency-preserving map from the
/// vertices of `f` into `g` (indexed by pattern vertex).
pub fn for_each_embedding(f: &Graph, g: &Graph, visit: impl FnMut(&[usize])) {
    if f.n() > g.n() {
        return;
    }
    let plan = Plan::new(f);
    let mut e = Embedder {
        image: vec![0; f.n()],
        used: vec![false; g.n()],
        plan: &plan,
        g,
        visit,
    };
    e.search(0);
}

/// Number of labeled embeddings (injective homomorphisms) of `f` in `g`.
pub fn count_embeddings(f: &Graph, g: &Graph) -> Result<u128> {
    if f.n() > MAX_PATTERN_VERTICES {
        return capability(format!(
            "pattern has {} vertices; limit is {MAX_PATTERN_VERTICES}",
            f.n()
        ));
    }
    let mut count: u128 = 0;
    let mut overflowed = false;
    for_each_embedding(f, g, |_| match count.checked_add(1) {
        Some(c) => count = c,
        None => overflowed = true,
    });
    if overflowed {
        return Err(overflow());
    }
    Ok(count)
}

/// `|Aut(f)|`: embeddings of `f` into itself are exactly its automorphisms.
pub fn automorphism_count(f: &Graph) -> Result<u128> {
    count_embeddings(f, f)
}

/// Number of subgraphs of `g` isomorphic to `f`.
pub fn count_subgraph(f: &Graph, g: &Graph) -> Result<u128> {
    let labeled = count_embeddings(f, g)?;
    let aut = automorphism_count(f)?;
    debug_assert_eq!(labeled % aut, 0);
    Ok(labeled / aut)
}

/// Number of copies of `K_{s,t}` in `g`.
pub fn count_complete_bipartite(g: &Graph, s: usize, t: usize) -> Result<u128> {
    if s == 0 || t == 0 {
        return input("K_{s,t} needs s, t >= 1");
    }
    let (s, t) = (s.min(t), s.max(t));
    let mut total: u128 = 0;
    let mut chosen = Vec::with_capacity(s);
    for v in 0..g.n() {
        chosen.push(v);
        let common = g.neighbors(v).to_vec();
        grow_side(g, &mut chosen, common, s, t, &mut total)?;
        chosen.pop();
    }
    if s == t {
        total /= 2;
    }
    Ok(total)
}

fn grow_side(
    g: &Graph,
    chosen: &mut Vec<usize>,
    common: Vec<usize>,
    s: usize,
    t: usize,
    total: &mut u128,
) -> Result<()> {
    if common.len() < t {
        return Ok(());
    }
    if chosen.len() == s {
        *total = total
            .checked_add(binomial(common.len() as u128, t as u128)?)
            .ok_or_else(overflow)?;
        return Ok(());
    }
    // A further side vertex must neighbor some common neighbor.
    let last = *chosen.last().unwrap();
    let mut cands: Vec<usize> = common
        .iter()
        .flat_map(|&w| g.neighbors(w).iter().copied())
        .filter(|&x| x > last)
        .collect();
    cands.sort_unstable();
    cands.dedup();
    for x in cands {
        let next = intersect_sorted(&common, g.neighbors(x));
        chosen.push(x);
        grow_side(g, chosen, next, s, t, total)?;
        chosen.pop();
    }
    Ok(())
}

/// Number of paths with `len` edges (as subgraphs).
pub fn count_paths(g: &Graph, len: usize) -> Result<u128> {
    fn walk(g: &Graph, v: usize, left: usize, used: &mut [bool]) -> Option<u128> {
        if left == 0 {
            return Some(1);
        }
        let mut total: u128 = 0;
        for &w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                let sub = walk(g, w, left - 1, used);
                used[w] = false;
                total = total.checked_add(sub?)?;
            }
        }
        Some(total)
    }
    if len == 0 {
        return Ok(g.n() as u128);
    }
    let mut used = vec![false; g.n()];
    let mut sequences: u128 = 0;
    for v in 0..g.n() {
        used[v] = true;
        let sub = walk(g, v, len, &mut used);
        used[v] = false;
        sequences = sequences
            .checked_add(sub.ok_or_else(overflow)?)
            .ok_or_else(overflow)?;
    }
    Ok(sequences / 2)
}

/// Number of `K_r` containing the edge `edge`.
pub fn edge_clique_degree(g: &Graph, edge: (usize, usize), r: usize) -> Result<u128> {
    if r < 3 {
        return input("edge clique degree needs r >= 3");
    }
    let (u, v) = edge;
    if !g.has_edge(u, v) {
        return input(format!("{u}-{v} is not an edge"));
    }
    let common = g.common_neighborhood(&[u, v])?;
    count_cliques(&g.induced(&common), r - 2)
}

/// Number of paths of length 2 (and, when `max_len == 4`, length 4) from
/// `source` to every other `V`-vertex, indexed by `V`-vertex.
pub fn pair_path_counts(b: &BipartiteGraph, source: usize, max_len: usize) -> Vec<usize> {
    let mut counts = vec![0; b.v_size()];
    for &u1 in b.v_neighbors(source) {
        for &w in b.u_neighbors(u1) {
            if w == source {
                continue;
            }
            counts[w] += 1;
            if max_len < 4 {
                continue;
            }
            for &u2 in b.v_neighbors(w) {
                if u2 == u1 {
                    continue;
                }
                for &target in b.u_neighbors(u2) {
                    if target != source && target != w {
                        counts[target] += 1;
                    }
                }
            }
        }
    }
    counts[source] = 0;
    counts
}

/// Largest number of distinct paths of length at most `max_len` joining
/// two `V`-vertices.
pub fn path_multiplicity(b: &BipartiteGraph, max_len: usize) -> Result<usize> {
    if max_len != 2 && max_len != 4 {
        return input(format!("path length bound must be 2 or 4, got {max_len}"));
    }
    Ok((0..b.v_size())
        .map(|v| {
            pair_path_counts(b, v, max_len)
                .into_iter()
                .skip(v + 1)
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0))
}

/// Labeled 4-edge paths `v0 u1 v1 u2 v2` on distinct vertices whose
/// `U`-vertices have degree at least `min_udeg`.
pub fn count_labeled_p4(b: &BipartiteGraph, min_udeg: usize) -> u128 {
    let mut total: u128 = 0;
    for middle in 0..b.v_size() {
        let hubs: Vec<usize> = b
            .v_neighbors(middle)
            .iter()
            .copied()
            .filter(|&u| b.u_degree(u) >= min_udeg)
            .collect();
        for &u1 in &hubs {
            for &u2 in &hubs {
                if u1 == u2 {
                    continue;
                }
                let (d1, d2) = (b.u_degree(u1) - 1, b.u_degree(u2) - 1);
                // Endpoints must differ: drop the shared neighbors other
                // than the middle vertex.
                let shared = intersect_sorted(b.u_neighbors(u1), b.u_neighbors(u2)).len() - 1;
                total += (d1 * d2 - shared) as u128;
            }
        }
    }
    total
}

/// Counts `pattern` in `g`, choosing a specialised counter when the
/// pattern shape allows it.
pub fn count_pattern(pattern: &NamedGraph, g: &Graph) -> Result<CountReport> {
    let start = Instant::now();
    let count = match pattern.kind {
        PatternKind::Clique(r) => count_cliques(g, r)?,
        PatternKind::CompleteBipartite { s, t } => count_complete_bipartite(g, s, t)?,
        PatternKind::Cycle(4) => count_complete_bipartite(g, 2, 2)?,
        PatternKind::Path(len) => count_paths(g, len)?,
        _ => count_subgraph(&pattern.graph, g)?,
    };
    Ok(CountReport {
        pattern: pattern.spec.clone(),
        count,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{clique, complete_bipartite, cycle, named_graph, path, star};
    use crate::CliqueUnion;

    /// Brute force over vertex subsets: checks every `r`-set for completeness.
    fn cliques_oracle(g: &Graph, r: usize) -> u128 {
        let n = g.n();
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == r)
            .filter(|&m| {
                let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                vs.iter()
                    .enumerate()
                    .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
            })
            .count() as u128
    }

    fn permutations(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(k - 1) {
            for pos in 0..k {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }

    /// Brute-force automorphisms by filtering all vertex permutations.
    fn automorphisms_oracle(f: &Graph) -> u128 {
        permutations(f.n())
            .iter()
            .filter(|p| f.edges().all(|(a, b)| f.has_edge(p[a], p[b])))
            .count() as u128
    }

    /// Brute force over edge subsets of `g` with the pattern's edge count:
    /// a subset is a copy iff some vertex bijection maps it onto `f`.
    fn subgraph_oracle(f: &Graph, g: &Graph) -> u128 {
        assert!(
            f.min_degree() > 0,
            "oracle supports patterns without isolated vertices"
        );
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let perms = permutations(f.n());
        let mut count = 0;
        for mask in 0u64..1 << edges.len() {
            if mask.count_ones() as usize != f.edge_count() {
                continue;
            }
            let chosen: Vec<(usize, usize)> = (0..edges.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| edges[i])
                .collect();
            let mut vs: Vec<usize> = chosen.iter().flat_map(|&(a, b)| [a, b]).collect();
            vs.sort_unstable();
            vs.dedup();
            if vs.len() != f.n() {
                continue;
            }
            let idx = |v: usize| vs.binary_search(&v).unwrap();
            let h =
                Graph::from_edges(vs.len(), chosen.iter().map(|&(a, b)| (idx(a), idx(b)))).unwrap();
            if perms
                .iter()
                .any(|p| f.edges().all(|(a, b)| h.has_edge(p[a], p[b])))
            {
                count += 1;
            }
        }
        count
    }

    fn union(n: usize, cliques: Vec<Vec<usize>>) -> Graph {
        let m = cliques.first().map_or(2, Vec::len);
        CliqueUnion::new(n, m, cliques).unwrap().union_graph()
    }

    #[test]
    fn clique_examples() {
        assert_eq!(count_cliques(&clique(5), 3).unwrap(), 10);
        assert_eq!(count_cliques(&cycle(4), 3).unwrap(), 0);
        let g = union(4, vec![vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(cliques_oracle(&g, 3), 2);
        assert_eq!(count_cliques(&g, 3).unwrap(), 2);
        assert_eq!(count_cliques(&g, 0).unwrap(), 1);
        assert_eq!(list_cliques(&g, 3), vec![vec![0, 1, 2], vec![1, 2, 3]]);
    }

    #[test]
    fn subgraph_examples() {
        assert_eq!(
            count_subgraph(&complete_bipartite(2, 2), &clique(4)).unwrap(),
            3
        );
        assert_eq!(count_subgraph(&path(2), &clique(3)).unwrap(), 3);
        let g = union(4, vec![vec![0, 1, 2], vec![0, 1, 3]]);
        assert_eq!(subgraph_oracle(&cycle(4), &g), 1);
        assert_eq!(count_subgraph(&cycle(4), &g).unwrap(), 1);
        assert!(matches!(
            count_subgraph(&path(10), &clique(12)),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn automorphisms_match_permutation_filter() {
        for spec in [
            "K4",
            "C5",
            "P3",
            "K2,3",
            "T:0,0,0,1",
            "2K2",
            "E:5:0-1,1-2,2-0,2-3",
        ] {
            let f = named_graph(spec).unwrap().graph;
            assert_eq!(
                automorphism_count(&f).unwrap(),
                automorphisms_oracle(&f),
                "{spec}"
            );
        }
    }

    #[test]
    fn complete_bipartite_examples() {
        // C(5,4) four-sets, each holding 3 four-cycles.
        assert_eq!(count_complete_bipartite(&clique(5), 2, 2).unwrap(), 15);
        assert_eq!(
            count_subgraph(&complete_bipartite(2, 2), &clique(5)).unwrap(),
            15
        );
        assert_eq!(count_complete_bipartite(&star(4), 2, 2).unwrap(), 0);
        assert_eq!(
            count_complete_bipartite(&complete_bipartite(2, 3), 2, 3).unwrap(),
            1
        );
        assert_eq!(count_complete_bipartite(&clique(5), 1, 2).unwrap(), 30);
        assert!(count_complete_bipartite(&clique(5), 0, 2).is_err());
    }

    #[test]
    fn paths_match_oracle() {
        let g = union(6, vec![vec![0, 1, 2], vec![2, 3, 4], vec![1, 4, 5]]);
        for len in 1..=4 {
            assert_eq!(
                count_paths(&g, len).unwrap(),
                subgraph_oracle(&path(len), &g),
                "P{len}"
            );
        }
    }

    #[test]
    fn edge_clique_degree_examples() {
        let k5 = clique(5);
        assert_eq!(edge_clique_degree(&k5, (0, 1), 3).unwrap(), 3);
        assert_eq!(edge_clique_degree(&k5, (2, 4), 4).unwrap(), 3);
        assert_eq!(edge_clique_degree(&cycle(4), (0, 1), 3).unwrap(), 0);
        assert!(edge_clique_degree(&cycle(4), (0, 2), 3).is_err());
        assert!(edge_clique_degree(&k5, (0, 1), 2).is_err());
    }

    fn bip_c8() -> BipartiteGraph {
        // v0 u0 v1 u1 v2 u2 v3 u3 (v0)
        BipartiteGraph::from_edges(4, 4, (0..4).flat_map(|i| [(i, i), (i, (i + 1) % 4)])).unwrap()
    }

    /// Enumerates vertex sequences v0 u1 v1 u2 v2 on distinct vertices.
    fn labeled_p4_oracle(b: &BipartiteGraph, thr: usize) -> u128 {
        let mut count = 0;
        for v0 in 0..b.v_size() {
            for u1 in 0..b.u_size() {
                for v1 in 0..b.v_size() {
                    for u2 in 0..b.u_size() {
                        for v2 in 0..b.v_size() {
                            let distinct = v0 != v1 && v1 != v2 && v0 != v2 && u1 != u2;
                            let edges = b.has_edge(u1, v0)
                                && b.has_edge(u1, v1)
                                && b.has_edge(u2, v1)
                                && b.has_edge(u2, v2);
                            let deg = b.u_degree(u1) >= thr && b.u_degree(u2) >= thr;
                            if distinct && edges && deg {
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
        count
    }

    /// Counts simple paths between two V-vertices by brute-force DFS in the
    /// underlying graph.
    fn multiplicity_oracle(b: &BipartiteGraph) -> usize {
        let g = b.to_graph();
        let m = b.u_size();
        let mut best = 0;
        for a in 0..b.v_size() {
            for z in a + 1..b.v_size() {
                let (src, dst) = (m + a, m + z);
                let mut count = 0;
                let mut stack = vec![vec![src]];
                while let Some(walk) = stack.pop() {
                    let last = *walk.last().unwrap();
                    if last == dst {
                        count += 1;
                        continue;
                    }
                    if walk.len() == 5 {
                        continue;
                    }
                    for &w in g.neighbors(last) {
                        if !walk.contains(&w) {
                            let mut next = walk.clone();
                            next.push(w);
                            stack.push(next);
                        }
                    }
                }
                best = best.max(count);
            }
        }
        best
    }

    #[test]
    fn path_multiplicity_examples() {
        assert_eq!(multiplicity_oracle(&bip_c8()), 2);
        assert_eq!(path_multiplicity(&bip_c8(), 4).unwrap(), 2);
        assert_eq!(path_multiplicity(&bip_c8(), 2).unwrap(), 1);
        assert_eq!(
            path_multiplicity(&BipartiteGraph::complete(1, 3), 4).unwrap(),
            1
        );
        assert_eq!(
            path_multiplicity(&BipartiteGraph::complete(2, 2), 4).unwrap(),
            2
        );
        assert!(path_multiplicity(&bip_c8(), 3).is_err());
    }

    #[test]
    fn labeled_p4_examples() {
        assert_eq!(labeled_p4_oracle(&bip_c8(), 0), 8);
        assert_eq!(count_labeled_p4(&bip_c8(), 0), 8);
        assert_eq!(count_labeled_p4(&BipartiteGraph::complete(1, 2), 0), 0);
        // |U| = 3: every U-vertex has degree 2, below the threshold.
        assert_eq!(count_labeled_p4(&BipartiteGraph::complete(3, 2), 3), 0);
        let k23 = BipartiteGraph::complete(2, 3);
        assert_eq!(count_labeled_p4(&k23, 3), 12);
        assert_eq!(count_labeled_p4(&k23, 3), labeled_p4_oracle(&k23, 3));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
            (1..=max_n).prop_flat_map(|n| {
                proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
                    Graph::from_edges(n, pairs.zip(bits).filter(|(_, keep)| *keep).map(|(e, _)| e))
                        .unwrap()
                })
            })
        }

        fn arb_bipartite(max_side: usize) -> impl Strategy<Value = BipartiteGraph> {
            (1..=max_side, 1..=max_side).prop_flat_map(|(m, n)| {
                proptest::collection::vec(any::<bool>(), m * n).prop_map(move |bits| {
                    let pairs = (0..m).flat_map(|u| (0..n).map(move |v| (u, v)));
                    BipartiteGraph::from_edges(
                        m,
                        n,
                        pairs.zip(bits).filter(|(_, k)| *k).map(|(e, _)| e),
                    )
                    .unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn cliques_agree_with_oracles(g in arb_graph(9), r in 1usize..6) {
                let fast = count_cliques(&g, r).unwrap();
                prop_assert_eq!(fast, cliques_oracle(&g, r));
                prop_assert_eq!(fast, count_subgraph(&clique(r), &g).unwrap());
            }

            #[test]
            fn complete_bipartite_agrees(g in arb_graph(8), s in 1usize..3, t in 1usize..4) {
                prop_assert_eq!(
                    count_complete_bipartite(&g, s, t).unwrap(),
                    count_subgraph(&complete_bipartite(s, t), &g).unwrap()
                );
            }

            #[test]
            fn common_neighborhood_is_antitone(g in arb_graph(9), a in 0usize..9, b in 0usize..9) {
                prop_assume!(a < g.n() && b < g.n() && a != b);
                let small = g.common_neighborhood(&[a]).unwrap();
                let big = g.common_neighborhood(&[a, b]).unwrap();
                prop_assert!(big.iter().all(|v| small.contains(v)));
            }

            #[test]
            fn bipartite_path_counts_agree(b in arb_bipartite(4)) {
                prop_assert_eq!(path_multiplicity(&b, 4).unwrap(), multiplicity_oracle(&b));
                prop_assert_eq!(count_labeled_p4(&b, 0), labeled_p4_oracle(&b, 0));
                prop_assert_eq!(count_labeled_p4(&b, 2), labeled_p4_oracle(&b, 2));
            }

            #[test]
            fn edge_expansion_double_counts(g in arb_graph(8), t in 2usize..4) {
                let lhs = 2 * count_complete_bipartite(&g, 2, t).unwrap();
                let rhs: u128 = g
                    .edges()
                    .map(|(u, v)| {
                        let c = g.common_neighborhood(&[u, v]).unwrap().len() as u128;
                        binomial(c, t as u128).unwrap()
                    })
                    .sum();
                prop_assert!(lhs >= rhs);
            }
        }
    }
}
