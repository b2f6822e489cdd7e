//! Coverings of embedded pattern copies by cliques, valid families and
//! their weights, and the pair count `Z(F, G)`.
//!
//! Vertex subsets of a pattern are `u32` bitmasks; edge subsets are `u32`
//! bitmasks over the pattern's edges in [`Graph::edges`] order.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::bounds::is_2_balanced;
use crate::counters::for_each_embedding;
use crate::error::{capability, input, Error, Result};
use crate::graph::{CliqueUnion, Graph};

/// Largest pattern accepted by the family and covering enumerators.
pub const MAX_COVER_VERTICES: usize = 6;
/// Largest number of candidate sets for which families are materialized.
pub const MAX_MATERIALIZED_CANDIDATES: usize = 22;
/// Cap on explicitly listed `(copy, covering)` pairs.
pub const MAX_Z_PAIRS: usize = 2_000_000;

fn guard(f: &Graph) -> Result<()> {
    if f.n() > MAX_COVER_VERTICES {
        return capability(format!(
            "pattern has {} vertices; limit is {MAX_COVER_VERTICES}",
            f.n()
        ));
    }
    if f.edge_count() == 0 {
        return input("pattern needs at least one edge");
    }
    Ok(())
}

fn edge_mask_of(edges: &[(usize, usize)], vertex_mask: u32) -> u32 {
    edges
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| vertex_mask >> a & 1 == 1 && vertex_mask >> b & 1 == 1)
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

fn mask_to_set(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// A family of vertex subsets of the pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValidFamily {
    /// Sorted sets, each sorted.
    pub sets: Vec<Vec<usize>>,
}

impl ValidFamily {
    fn from_masks(masks: &[u32]) -> Self {
        let mut sets: Vec<Vec<usize>> = masks.iter().map(|&m| mask_to_set(m)).collect();
        sets.sort();
        ValidFamily { sets }
    }

    /// The family of edges of `f`.
    pub fn edge_family(f: &Graph) -> Self {
        ValidFamily {
            sets: f.edges().map(|(a, b)| vec![a, b]).collect(),
        }
    }

    /// `|A|` for the family `A`.
    pub fn size(&self) -> usize {
        self.sets.len()
    }

    /// Sum of the set sizes.
    pub fn total(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    /// `(size, total)`: the weight is `u^size (m/n)^total`.
    pub fn exponents(&self) -> (usize, usize) {
        (self.size(), self.total())
    }

    pub fn weight(&self, p: &WeightParams) -> BigRational {
        p.weight(self.size(), self.total())
    }

    /// Whether the sets are distinct, each holds an edge of `f`, and their
    /// pairs cover every edge of `f`.
    pub fn is_valid_for(&self, f: &Graph) -> bool {
        let distinct: HashSet<&Vec<usize>> = self.sets.iter().collect();
        if distinct.len() != self.sets.len() {
            return false;
        }
        let edges: Vec<(usize, usize)> = f.edges().collect();
        let mut covered = 0u32;
        for set in &self.sets {
            if set.iter().any(|&v| v >= f.n()) {
                return false;
            }
            let m = edge_mask_of(&edges, set.iter().fold(0, |acc, &v| acc | 1 << v));
            if m == 0 {
                return false;
            }
            covered |= m;
        }
        covered.count_ones() as usize == edges.len()
    }
}

/// Parameters of the weight `u^a (m/n)^b`, held exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightParams {
    pub u: BigRational,
    pub m: u64,
    pub n: u64,
}

impl WeightParams {
    /// `u` is converted from its exact binary value.
    pub fn new(u: f64, m: u64, n: u64) -> Result<Self> {
        if !(u.is_finite() && u > 0.0) {
            return input(format!("u must be positive, got {u}"));
        }
        if m == 0 || n == 0 {
            return input("m and n must be positive");
        }
        let u = BigRational::from_float(u).expect("finite");
        Ok(WeightParams { u, m, n })
    }

    pub fn ratio(&self) -> BigRational {
        BigRational::new(BigInt::from(self.m), BigInt::from(self.n))
    }

    pub fn weight(&self, a: usize, b: usize) -> BigRational {
        self.u.pow(a as i32) * self.ratio().pow(b as i32)
    }

    pub fn ln_weight(&self, a: usize, b: usize) -> f64 {
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        a as f64 * u.ln() + b as f64 * (self.m as f64 / self.n as f64).ln()
    }

    /// Checks `m <= n`, `u m^2 < n^2` and `u (m/n)^{(2e-v)/(e-1)} > 1`.
    pub fn check_regime(&self, v: usize, e: usize) -> Result<()> {
        if self.m > self.n {
            return input(format!("need m <= n, got m = {}, n = {}", self.m, self.n));
        }
        let ratio = self.ratio();
        if &self.u * ratio.pow(2) >= BigRational::one() {
            return input("need u m^2 < n^2");
        }
        let (p, q) = (2 * e as i32 - v as i32, e as i32 - 1);
        if self.u.pow(q) * ratio.pow(p) <= BigRational::one() {
            return input(format!("need u (m/n)^(2-({v}-2)/({e}-1)) > 1"));
        }
        Ok(())
    }
}

/// Subsets of `V(f)` that contain an edge, as `(vertex mask, edge mask)`.
fn candidates(f: &Graph) -> Vec<(u32, u32)> {
    let edges: Vec<(usize, usize)> = f.edges().collect();
    (1u32..1 << f.n())
        .filter_map(|vm| {
            let em = edge_mask_of(&edges, vm);
            (em != 0).then_some((vm, em))
        })
        .collect()
}

/// Calls `visit` with the vertex masks of every valid family of `f`.
pub fn for_each_valid_family(f: &Graph, mut visit: impl FnMut(&[u32])) -> Result<()> {
    guard(f)?;
    let cands = candidates(f);
    if cands.len() > 30 {
        return capability(format!(
            "{} candidate sets is too many to enumerate families",
            cands.len()
        ));
    }
    let full = (1u32 << f.edge_count()) - 1;
    // reach[i]: edges coverable by candidates i..
    let mut reach = vec![0u32; cands.len() + 1];
    for i in (0..cands.len()).rev() {
        reach[i] = reach[i + 1] | cands[i].1;
    }
    let mut chosen = Vec::new();
    walk(&cands, &reach, full, 0, 0, &mut chosen, &mut visit);
    Ok(())
}

fn walk(
    cands: &[(u32, u32)],
    reach: &[u32],
    full: u32,
    i: usize,
    covered: u32,
    chosen: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]),
) {
    if covered | reach[i] != full {
        return;
    }
    if i == cands.len() {
        visit(chosen);
        return;
    }
    chosen.push(cands[i].0);
    walk(
        cands,
        reach,
        full,
        i + 1,
        covered | cands[i].1,
        chosen,
        visit,
    );
    chosen.pop();
    walk(cands, reach, full, i + 1, covered, chosen, visit);
}

/// All valid families of `f`, sorted.
pub fn enumerate_valid_families(f: &Graph) -> Result<Vec<ValidFamily>> {
    guard(f)?;
    let count = candidates(f).len();
    if count > MAX_MATERIALIZED_CANDIDATES {
        return capability(format!(
            "{count} candidate sets; materializing families is limited to {MAX_MATERIALIZED_CANDIDATES}"
        ));
    }
    let mut out = Vec::new();
    for_each_valid_family(f, |masks| out.push(ValidFamily::from_masks(masks)))?;
    out.sort();
    Ok(out)
}

/// Number of valid families of `f` for each exponent pair `(|A|, sum |A|)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCatalog {
    pub vertices: usize,
    pub edges: usize,
    pub counts: BTreeMap<(usize, usize), u128>,
}

impl FamilyCatalog {
    /// Counts families by inclusion-exclusion over the uncovered edge set,
    /// so patterns with too many candidates to enumerate are still handled.
    pub fn new(f: &Graph) -> Result<Self> {
        guard(f)?;
        let (v, e) = (f.n(), f.edge_count());
        let cands = candidates(f);
        let mut memo: HashMap<Vec<usize>, Vec<Vec<i128>>> = HashMap::new();
        let mut total: BTreeMap<(usize, usize), i128> = BTreeMap::new();
        for s in 0u32..1 << e {
            let mut by_size = vec![0usize; v + 1];
            for &(vm, em) in &cands {
                if em & s == 0 {
                    by_size[vm.count_ones() as usize] += 1;
                }
            }
            let poly = memo
                .entry(by_size.clone())
                .or_insert_with(|| size_polynomial(&by_size));
            let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            for (a, row) in poly.iter().enumerate() {
                for (b, &c) in row.iter().enumerate() {
                    if c != 0 {
                        *total.entry((a, b)).or_default() += sign * c;
                    }
                }
            }
        }
        let mut counts = BTreeMap::new();
        for (k, c) in total {
            if c < 0 {
                return Err(Error::Internal(format!(
                    "negative family count {c} at {k:?}"
                )));
            }
            if c > 0 {
                counts.insert(k, c as u128);
            }
        }
        Ok(FamilyCatalog {
            vertices: v,
            edges: e,
            counts,
        })
    }

    pub fn total(&self) -> u128 {
        self.counts.values().sum()
    }
}

/// Coefficients of `prod_s (1 + x y^s)^{c_s}`, indexed `[a][b]`.
fn size_polynomial(by_size: &[usize]) -> Vec<Vec<i128>> {
    let max_a: usize = by_size.iter().sum();
    let max_b: usize = by_size.iter().enumerate().map(|(s, &c)| s * c).sum();
    let mut poly = vec![vec![0i128; max_b + 1]; max_a + 1];
    poly[0][0] = 1;
    for (s, &c) in by_size.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut next = vec![vec![0i128; max_b + 1]; max_a + 1];
        let mut choose = 1i128;
        for j in 0..=c {
            if j > 0 {
                choose = choose * (c - j + 1) as i128 / j as i128;
            }
            for a in 0..=max_a - j {
                for b in 0..=max_b.saturating_sub(s * j) {
                    let x = poly[a][b];
                    if x != 0 {
                        next[a + j][b + s * j] += choose * x;
                    }
                }
            }
        }
        poly = next;
    }
    poly
}

/// Outcome of the weight maximization over valid families.
#[derive(Clone, Debug, PartialEq)]
pub struct Maximizer {
    /// The maximizing family when it is unique and can be materialized.
    pub family: Option<ValidFamily>,
    pub weight: BigRational,
    pub ln_weight: f64,
    /// Every exponent pair whose weight equals the maximum.
    pub tied_pairs: Vec<(usize, usize)>,
    /// Number of valid families attaining the maximum.
    pub maximizers: u128,
    /// Whether the edge family is the unique maximizer.
    pub is_edge_family: bool,
}

/// Weight maximizer without any regime check.
pub fn weight_maximizer(f: &Graph, catalog: &FamilyCatalog, p: &WeightParams) -> Result<Maximizer> {
    let mut best: Option<BigRational> = None;
    let mut tied = Vec::new();
    for &(a, b) in catalog.counts.keys() {
        let w = p.weight(a, b);
        match &best {
            Some(cur) if w < *cur => {}
            Some(cur) if w == *cur => tied.push((a, b)),
            _ => {
                best = Some(w);
                tied = vec![(a, b)];
            }
        }
    }
    let Some(weight) = best else {
        return Err(Error::Internal("pattern has no valid family".into()));
    };
    let maximizers: u128 = tied.iter().map(|k| catalog.counts[k]).sum();
    let e = catalog.edges;
    let is_edge_family = maximizers == 1 && tied[0] == (e, 2 * e);
    let family = if is_edge_family {
        Some(ValidFamily::edge_family(f))
    } else if maximizers == 1 && candidates(f).len() <= MAX_MATERIALIZED_CANDIDATES {
        let want = tied[0];
        let mut found = None;
        for_each_valid_family(f, |masks| {
            let total: u32 = masks.iter().map(|m| m.count_ones()).sum();
            if (masks.len(), total as usize) == want {
                found = Some(ValidFamily::from_masks(masks));
            }
        })?;
        found
    } else {
        None
    };
    let ln_weight = p.ln_weight(tied[0].0, tied[0].1);
    Ok(Maximizer {
        family,
        weight,
        ln_weight,
        tied_pairs: tied,
        maximizers,
        is_edge_family,
    })
}

/// Maximizes `u^|A| (m/n)^{sum |A|}` over the valid families of `f`,
/// after checking that `f` is 2-balanced with at least two edges and that
/// `(u, m, n)` lies in the regime where the edge family should win.
pub fn max_weight_family(f: &Graph, p: &WeightParams) -> Result<Maximizer> {
    guard(f)?;
    if f.edge_count() < 2 {
        return input("pattern needs at least 2 edges");
    }
    if !is_2_balanced(f)?.balanced {
        return input("pattern is not 2-balanced");
    }
    p.check_regime(f.n(), f.edge_count())?;
    weight_maximizer(f, &FamilyCatalog::new(f)?, p)
}

/// A copy of the pattern inside the union graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCopy {
    /// Image of pattern vertex `i` under one representative embedding.
    pub image: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// One `(copy, covering)` pair: clique indices sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPair {
    pub copy: usize,
    pub cliques: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZCount {
    pub z: u128,
    /// Copies of the pattern in the union graph.
    pub copies: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZPairs {
    pub z: u128,
    pub copies: Vec<PatternCopy>,
    pub pairs: Vec<ZPair>,
}

/// Copies of `f` in `g`, one representative embedding per edge set.
fn pattern_copies(f: &Graph, g: &Graph) -> Vec<PatternCopy> {
    let f_edges: Vec<(usize, usize)> = f.edges().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for_each_embedding(f, g, |map| {
        let mut edges: Vec<(usize, usize)> = f_edges
            .iter()
            .map(|&(a, b)| (map[a].min(map[b]), map[a].max(map[b])))
            .collect();
        edges.sort_unstable();
        if seen.insert(edges.clone()) {
            out.push(PatternCopy {
                image: map.to_vec(),
                edges,
            });
        }
    });
    out
}

/// Cliques meeting a copy in at least one of its edges, grouped by trace:
/// `(edge mask covered, clique indices)`.
fn trace_groups(
    f_edges: &[(usize, usize)],
    copy: &PatternCopy,
    incidence: &[Vec<usize>],
    cu: &CliqueUnion,
) -> Vec<(u32, Vec<usize>)> {
    let mut relevant: Vec<usize> = Vec::new();
    for &(a, b) in &copy.edges {
        relevant.extend(crate::graph::intersect_sorted(&incidence[a], &incidence[b]));
    }
    relevant.sort_unstable();
    relevant.dedup();
    let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for ci in relevant {
        let clique = &cu.cliques()[ci];
        let trace = copy
            .image
            .iter()
            .enumerate()
            .filter(|(_, x)| clique.binary_search(x).is_ok())
            .fold(0u32, |acc, (i, _)| acc | 1 << i);
        groups.entry(trace).or_default().push(ci);
    }
    groups
        .into_iter()
        .map(|(trace, idx)| (edge_mask_of(f_edges, trace), idx))
        .collect()
}

fn clique_incidence(cu: &CliqueUnion) -> Vec<Vec<usize>> {
    let mut inc = vec![Vec::new(); cu.n()];
    for (i, c) in cu.cliques().iter().enumerate() {
        for &v in c {
            inc[v].push(i);
        }
    }
    inc
}

/// `Z(F, G)`: the number of pairs of a copy of `f` and a covering of it by
/// cliques of `cu` with pairwise distinct traces, each holding an edge.
pub fn count_z(f: &Graph, cu: &CliqueUnion) -> Result<ZCount> {
    guard(f)?;
    let f_edges: Vec<(usize, usize)> = f.edges().collect();
    let full = (1u32 << f_edges.len()) - 1;
    let incidence = clique_incidence(cu);
    let copies = pattern_copies(f, &cu.union_graph());
    let mut z: u128 = 0;
    for copy in &copies {
        let mut dp: HashMap<u32, u128> = HashMap::from([(0, 1)]);
        for (mask, members) in trace_groups(&f_edges, copy, &incidence, cu) {
            let c = members.len() as u128;
            let snapshot: Vec<(u32, u128)> = dp.iter().map(|(&k, &v)| (k, v)).collect();
            for (state, ways) in snapshot {
                let add = ways.checked_mul(c).ok_or_else(overflow)?;
                let slot = dp.entry(state | mask).or_default();
                *slot = slot.checked_add(add).ok_or_else(overflow)?;
            }
        }
        z = z
            .checked_add(dp.get(&full).copied().unwrap_or(0))
            .ok_or_else(overflow)?;
    }
    Ok(ZCount {
        z,
        copies: copies.len(),
    })
}

fn overflow() -> Error {
    Error::Capability("Z exceeds 128 bits".into())
}

/// Lists every pair counted by [`count_z`].
pub fn z_pairs(f: &Graph, cu: &CliqueUnion) -> Result<ZPairs> {
    guard(f)?;
    let f_edges: Vec<(usize, usize)> = f.edges().collect();
    let full = (1u32 << f_edges.len()) - 1;
    let incidence = clique_incidence(cu);
    let copies = pattern_copies(f, &cu.union_graph());
    let mut pairs = Vec::new();
    for (ci, copy) in copies.iter().enumerate() {
        let groups = trace_groups(&f_edges, copy, &incidence, cu);
        let mut chosen = Vec::new();
        list_coverings(&groups, full, 0, 0, &mut chosen, &mut |cliques| {
            if pairs.len() >= MAX_Z_PAIRS {
                return false;
            }
            let mut cliques = cliques.to_vec();
            cliques.sort_unstable();
            pairs.push(ZPair { copy: ci, cliques });
            true
        });
        if pairs.len() >= MAX_Z_PAIRS {
            return capability(format!("more than {MAX_Z_PAIRS} pairs"));
        }
    }
    Ok(ZPairs {
        z: pairs.len() as u128,
        copies,
        pairs,
    })
}

fn list_coverings(
    groups: &[(u32, Vec<usize>)],
    full: u32,
    i: usize,
    covered: u32,
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if i == groups.len() {
        return covered != full || emit(chosen);
    }
    if !list_coverings(groups, full, i + 1, covered, chosen, emit) {
        return false;
    }
    let (mask, members) = &groups[i];
    for &c in members {
        chosen.push(c);
        let ok = list_coverings(groups, full, i + 1, covered | mask, chosen, emit);
        chosen.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Whether every weight in `catalog` is attained by a family whose sets
/// pairwise share at most one vertex; used to test the structure claim
/// on maximizers directly.
pub fn maximizers_pairwise_sparse(f: &Graph, p: &WeightParams) -> Result<bool> {
    let catalog = FamilyCatalog::new(f)?;
    let best = weight_maximizer(f, &catalog, p)?;
    let mut ok = true;
    for_each_valid_family(f, |masks| {
        let total: u32 = masks.iter().map(|m| m.count_ones()).sum();
        if !best.tied_pairs.contains(&(masks.len(), total as usize)) {
            return;
        }
        for (i, a) in masks.iter().enumerate() {
            for b in &masks[i + 1..] {
                if (a & b).count_ones() > 1 {
                    ok = false;
                }
            }
        }
    })?;
    Ok(ok)
}

impl Maximizer {
    /// Nearest float to the exact weight; falls back to `exp(ln_weight)`
    /// when the conversion under- or overflows.
    pub fn weight_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.weight
            .to_f64()
            .filter(|w| w.is_normal())
            .unwrap_or_else(|| self.ln_weight.exp())
    }
}
