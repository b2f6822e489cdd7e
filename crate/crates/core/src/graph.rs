//! Graph, bipartite graph, hypergraph and clique-union containers.
//!
//! Vertices are dense indices `0..n`. Every container validates its
//! invariants on construction and is immutable afterwards, except for the
//! explicit edge insertion/removal on [`BipartiteGraph`] that the search
//! procedures use while building.

use std::collections::HashSet;

use crate::error::{input, Error, Result};

/// Intersection of two ascending slices.
pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&w| w != v).collect())
            .collect();
        Graph {
            n,
            adj,
            edge_count: n * n.saturating_sub(1) / 2,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, out-of-range
    /// endpoints and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, edges, false)
    }

    /// Like [`Graph::from_edges`] but silently merges repeated edges.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, edges, true)
    }

    fn build<I>(n: usize, edges: I, dedup: bool) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge {u}-{v} out of range for {n} vertices"));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if !dedup && list.len() != before {
                return input(format!("repeated edge at vertex {v}"));
            }
            edge_count += list.len();
        }
        let g = Graph {
            n,
            adj,
            edge_count: edge_count / 2,
        };
        debug_assert!(g.check_invariants().is_ok());
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Vertices outside `set` adjacent to every member of `set`.
    pub fn common_neighborhood(&self, set: &[usize]) -> Result<Vec<usize>> {
        if set.is_empty() {
            return input("common neighborhood of an empty set");
        }
        if let Some(&bad) = set.iter().find(|&&v| v >= self.n) {
            return input(format!("vertex {bad} out of range for {} vertices", self.n));
        }
        let mut common = self.adj[set[0]].clone();
        for &s in &set[1..] {
            if common.is_empty() {
                break;
            }
            common = intersect_sorted(&common, &self.adj[s]);
        }
        // Members of a set are never their own neighbors, but a set may
        // contain two adjacent vertices.
        common.retain(|w| !set.contains(w));
        Ok(common)
    }

    /// Induced subgraph on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut edge_count = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                    edge_count += 1;
                }
            }
            adj[i].sort_unstable();
        }
        Graph {
            n: vertices.len(),
            adj,
            edge_count: edge_count / 2,
        }
    }

    /// Smallest-last vertex ordering (degeneracy order).
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.n;
        let mut degree: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let max_deg = degree.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_deg + 1];
        for v in 0..n {
            buckets[degree[v]].push(v);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut low = 0;
        while order.len() < n {
            low = low.min(max_deg);
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop().unwrap();
            if removed[v] || degree[v] != low {
                continue;
            }
            removed[v] = true;
            order.push(v);
            for &w in &self.adj[v] {
                if !removed[w] {
                    degree[w] -= 1;
                    buckets[degree[w]].push(w);
                    low = low.min(degree[w]);
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count + 1 == self.n && self.is_connected()
    }

    /// Verifies symmetry, absence of loops and repeats, and the cached
    /// edge count.
    pub fn check_invariants(&self) -> Result<()> {
        let mut degree_sum = 0;
        for (v, list) in self.adj.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Internal(format!(
                    "adjacency of {v} not strictly sorted"
                )));
            }
            for &w in list {
                if w == v || w >= self.n {
                    return Err(Error::Internal(format!("bad neighbor {w} of {v}")));
                }
                if self.adj[w].binary_search(&v).is_err() {
                    return Err(Error::Internal(format!("asymmetric edge {v}-{w}")));
                }
            }
            degree_sum += list.len();
        }
        if degree_sum != 2 * self.edge_count {
            return Err(Error::Internal("edge count disagrees with degrees".into()));
        }
        Ok(())
    }
}

/// Bipartite graph with ordered bipartition `(U, V)`; edges always join a
/// `U`-index to a `V`-index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    adj_u: Vec<Vec<usize>>,
    adj_v: Vec<Vec<usize>>,
    edge_count: usize,
}

impl BipartiteGraph {
    pub fn new(u_size: usize, v_size: usize) -> Self {
        BipartiteGraph {
            adj_u: vec![Vec::new(); u_size],
            adj_v: vec![Vec::new(); v_size],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(u_size: usize, v_size: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut b = Self::new(u_size, v_size);
        for (u, v) in edges {
            if u >= u_size || v >= v_size {
                return input(format!(
                    "edge {u}-{v} out of range for parts {u_size}x{v_size}"
                ));
            }
            if !b.add_edge(u, v) {
                return input(format!("repeated edge {u}-{v}"));
            }
        }
        Ok(b)
    }

    pub fn complete(u_size: usize, v_size: usize) -> Self {
        let edges = (0..u_size).flat_map(|u| (0..v_size).map(move |v| (u, v)));
        Self::from_edges(u_size, v_size, edges).expect("complete bipartite graph is valid")
    }

    pub fn u_size(&self) -> usize {
        self.adj_u.len()
    }

    pub fn v_size(&self) -> usize {
        self.adj_v.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn u_neighbors(&self, u: usize) -> &[usize] {
        &self.adj_u[u]
    }

    pub fn v_neighbors(&self, v: usize) -> &[usize] {
        &self.adj_v[v]
    }

    pub fn u_degree(&self, u: usize) -> usize {
        self.adj_u[u].len()
    }

    pub fn max_u_degree(&self) -> usize {
        self.adj_u.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.u_size() && self.adj_u[u].binary_search(&v).is_ok()
    }

    /// Inserts `u-v`; returns false if it was already present.
    ///
    /// Panics if either endpoint is out of range.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(
            u < self.u_size() && v < self.v_size(),
            "edge {u}-{v} out of range"
        );
        match self.adj_u[u].binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.adj_u[u].insert(pos, v);
                let pos_v = self.adj_v[v].binary_search(&u).unwrap_err();
                self.adj_v[v].insert(pos_v, u);
                self.edge_count += 1;
                true
            }
        }
    }

    /// Removes `u-v`; returns false if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        match self.adj_u.get(u).map(|l| l.binary_search(&v)) {
            Some(Ok(pos)) => {
                self.adj_u[u].remove(pos);
                let pos_v = self.adj_v[v]
                    .binary_search(&u)
                    .expect("symmetric adjacency");
                self.adj_v[v].remove(pos_v);
                self.edge_count -= 1;
                true
            }
            _ => false,
        }
    }

    /// Edges `(u, v)` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj_u
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }

    /// Keeps only the listed `U`-vertices, renumbered in the given order.
    pub fn restrict_u(&self, keep: &[usize]) -> BipartiteGraph {
        let mut b = BipartiteGraph::new(keep.len(), self.v_size());
        for (i, &u) in keep.iter().enumerate() {
            for &v in &self.adj_u[u] {
                b.add_edge(i, v);
            }
        }
        b
    }

    /// The underlying graph on `u_size + v_size` vertices, `U` first.
    pub fn to_graph(&self) -> Graph {
        let m = self.u_size();
        Graph::from_edges(m + self.v_size(), self.edges().map(|(u, v)| (u, m + v)))
            .expect("bipartite edges are simple")
    }
}

/// Hypergraph with non-empty hyperedges and a per-vertex incidence index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut incidence = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.is_empty() {
                return input(format!("hyperedge {i} is empty"));
            }
            e.sort_unstable();
            e.dedup();
            if let Some(&bad) = e.iter().find(|&&v| v >= n) {
                return input(format!("hyperedge {i} has vertex {bad} >= {n}"));
            }
            for &v in &e {
                incidence[v].push(i);
            }
            normalized.push(e);
        }
        Ok(Hypergraph {
            n,
            edges: normalized,
            incidence,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Indices of hyperedges containing `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }
}

/// A vertex count with an ordered list of distinct `m`-subsets; the graph
/// it describes is the union of the complete graphs on those subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueUnion {
    n: usize,
    m: usize,
    cliques: Vec<Vec<usize>>,
}

impl CliqueUnion {
    pub fn new(n: usize, m: usize, cliques: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(cliques.len());
        let mut normalized = Vec::with_capacity(cliques.len());
        for (i, mut c) in cliques.into_iter().enumerate() {
            c.sort_unstable();
            c.dedup();
            if c.len() != m {
                return input(format!(
                    "clique {i} has {} distinct vertices, expected {m}",
                    c.len()
                ));
            }
            if let Some(&bad) = c.iter().find(|&&v| v >= n) {
                return input(format!("clique {i} has vertex {bad} >= {n}"));
            }
            if !seen.insert(c.clone()) {
                return input(format!("clique {i} repeats an earlier clique"));
            }
            normalized.push(c);
        }
        Ok(CliqueUnion {
            n,
            m,
            cliques: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Graph whose edges are all pairs inside some listed clique.
    pub fn union_graph(&self) -> Graph {
        let edges = self.cliques.iter().flat_map(|c| {
            c.iter()
                .enumerate()
                .flat_map(move |(i, &a)| c[i + 1..].iter().map(move |&b| (a, b)))
        });
        Graph::from_edges_dedup(self.n, edges).expect("clique vertices validated")
    }

    /// The union with the cliques at `removed` dropped, order preserved.
    pub fn without(&self, removed: &[usize]) -> CliqueUnion {
        let removed: HashSet<usize> = removed.iter().copied().collect();
        let cliques = self
            .cliques
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, c)| c.clone())
            .collect();
        CliqueUnion {
            n: self.n,
            m: self.m,
            cliques,
        }
    }

    /// Union with one more clique appended.
    pub fn with_clique(&self, clique: Vec<usize>) -> Result<CliqueUnion> {
        let mut cliques = self.cliques.clone();
        cliques.push(clique);
        CliqueUnion::new(self.n, self.m, cliques)
    }
}
