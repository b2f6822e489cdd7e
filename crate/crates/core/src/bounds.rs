//! Closed-form bound evaluators and the 2-balancedness predicate.
//!
//! Exponents are exact rationals; magnitudes are carried as natural
//! logarithms so that large `n` never overflows. Constants hidden in the
//! asymptotic statements are taken to be 1.

use std::fmt;

use num_integer::binomial as ibinomial;
use num_rational::Ratio;
use num_traits::One;

use crate::counters::binomial;
use crate::error::{capability, input, Error, Result};
use crate::graph::Graph;

pub type Rational = Ratio<i64>;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn int(n: usize) -> i64 {
    n as i64
}

fn choose2(r: i64) -> i64 {
    r * (r - 1) / 2
}

fn to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Exponents of `k` and `n` in a bound of the form `k^a n^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentProfile {
    pub k_exponent: Rational,
    pub n_exponent: Rational,
    pub description: String,
}

impl ExponentProfile {
    fn new(k_exponent: Rational, n_exponent: Rational, description: impl Into<String>) -> Self {
        ExponentProfile {
            k_exponent,
            n_exponent,
            description: description.into(),
        }
    }

    pub fn ln_value(&self, k: f64, n: f64) -> f64 {
        to_f64(self.k_exponent) * k.ln() + to_f64(self.n_exponent) * n.ln()
    }
}

impl fmt::Display for ExponentProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k^({}) n^({})", self.k_exponent, self.n_exponent)
    }
}

/// An evaluated bound: named exact exponents plus `ln` of the value.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundValue {
    pub formula: String,
    /// `(variable, exponent)` pairs, e.g. `("k", 2/5)`.
    pub exponents: Vec<(String, Rational)>,
    pub ln_value: f64,
    /// Set when the formula is conjectural or has an `o(1)` term replaced
    /// by a caller-supplied epsilon.
    pub heuristic: bool,
    pub note: String,
}

impl BoundValue {
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        input(format!("{name} must be positive and finite, got {x}"))
    }
}

/// Outcome of the 2-balancedness scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoBalance {
    pub balanced: bool,
    /// `(e(F)-1)/(v(F)-2)`, absent when `v(F) <= 2`.
    pub density: Option<Rational>,
    /// Vertex set of a densest violating subgraph, when one exists.
    pub witness: Option<Vec<usize>>,
    pub witness_density: Option<Rational>,
}

/// Largest pattern accepted by [`is_2_balanced`].
pub const MAX_BALANCE_VERTICES: usize = 8;

/// Whether every subgraph on at least 3 vertices is no denser, in the
/// `(e-1)/(v-2)` sense, than `f` itself. Only induced subgraphs need to be
/// scanned: dropping edges from a fixed vertex set lowers the density.
pub fn is_2_balanced(f: &Graph) -> Result<TwoBalance> {
    let v = f.n();
    if f.edge_count() == 0 {
        return input("2-balancedness needs at least one edge");
    }
    if v > MAX_BALANCE_VERTICES {
        return capability(format!(
            "2-balancedness scan limited to {MAX_BALANCE_VERTICES} vertices"
        ));
    }
    if v <= 2 {
        return Ok(TwoBalance {
            balanced: true,
            density: None,
            witness: None,
            witness_density: None,
        });
    }
    let density = rat(int(f.edge_count()) - 1, int(v) - 2);
    let mut worst: Option<(Rational, Vec<usize>)> = None;
    for mask in 0u32..1 << v {
        let size = mask.count_ones() as usize;
        if size < 3 || size == v {
            continue;
        }
        let verts: Vec<usize> = (0..v).filter(|&i| mask >> i & 1 == 1).collect();
        let edges = f.induced(&verts).edge_count();
        let d = rat(int(edges) - 1, int(size) - 2);
        if d > density && worst.as_ref().is_none_or(|(w, _)| d > *w) {
            worst = Some((d, verts));
        }
    }
    Ok(match worst {
        None => TwoBalance {
            balanced: true,
            density: Some(density),
            witness: None,
            witness_density: None,
        },
        Some((d, verts)) => TwoBalance {
            balanced: false,
            density: Some(density),
            witness: Some(verts),
            witness_density: Some(d),
        },
    })
}

fn pattern_gate(f: &Graph, r: usize) -> Result<()> {
    if f.edge_count() < 2 {
        return input("pattern needs at least 2 edges");
    }
    if r < 2 || r >= f.n() {
        return input(format!("need 2 <= r < v(F) = {}, got r = {r}", f.n()));
    }
    Ok(())
}

/// `(v(F)-2) / ((r-2)(e(F)-1) + v(F)-2)`.
pub fn beta_exponent(f: &Graph, r: usize) -> Result<Rational> {
    pattern_gate(f, r)?;
    Ok(beta_from_counts(f.n(), f.edge_count(), r))
}

pub(crate) fn beta_from_counts(v: usize, e: usize, r: usize) -> Rational {
    let (v, e, r) = (int(v), int(e), int(r));
    rat(v - 2, (r - 2) * (e - 1) + v - 2)
}

/// Whether the random-clique bound has a larger exponent than the
/// `G(n,p)` baseline, decided by comparing `beta` with `1/C(r,2)`.
pub fn random_cliques_beat_gnp(v: usize, e: usize, r: usize) -> bool {
    beta_from_counts(v, e, r) > rat(1, choose2(int(r)))
}

/// The same comparison decided by `(r+1)/2 > (e-1)/(v-2)`; valid for
/// `r, v >= 3`.
pub fn density_criterion(v: usize, e: usize, r: usize) -> bool {
    rat(int(r) + 1, 2) > rat(int(e) - 1, int(v) - 2)
}

/// `2 - (v(F)-2)/(e(F)-1)`, the exponent of the clique Turán lower bound
/// for a 2-balanced pattern.
pub fn thm14_exponent(f: &Graph, r: usize) -> Result<Rational> {
    pattern_gate(f, r)?;
    let bal = is_2_balanced(f)?;
    if !bal.balanced {
        return input(format!(
            "pattern is not 2-balanced (witness {:?})",
            bal.witness
        ));
    }
    Ok(turan_exponent(f.n(), f.edge_count()))
}

pub(crate) fn turan_exponent(v: usize, e: usize) -> Rational {
    rat(2, 1) - rat(int(v) - 2, int(e) - 1)
}

/// The two branches of the `K_{2,t}` supersaturation lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Thm11Branch {
    /// `k^{t/(r-2)} n^{3/2}`
    Sparse,
    /// `k^{2t^2/D} n^{((3t-2)(r-2)+2t)/D}` with `D = (2t-1)(r-2)+t`
    Dense,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Thm11Lower {
    pub branch: Thm11Branch,
    pub ln_value: f64,
    pub sparse: ExponentProfile,
    pub dense: ExponentProfile,
    pub ln_sparse: f64,
    pub ln_dense: f64,
    /// `ln` of the crossover `k* = n^{(r-2)/(2t)}`.
    pub ln_crossover_k: f64,
    /// `|value_sparse / value_dense - 1|` evaluated at `k*`.
    pub crossover_gap: f64,
}

fn thm11_gate(r: i64, t: i64) -> Result<()> {
    if t < 2 {
        return input(format!("need t >= 2, got {t}"));
    }
    if !(2 < r && r < 2 + t) {
        return input(format!("need 2 < r < 2 + t, got r = {r}, t = {t}"));
    }
    Ok(())
}

/// Both branch exponent profiles for `(r, t)`.
pub fn thm11_exponents(r: usize, t: usize) -> Result<(ExponentProfile, ExponentProfile)> {
    let (r, t) = (int(r), int(t));
    thm11_gate(r, t)?;
    let d = (2 * t - 1) * (r - 2) + t;
    let sparse = ExponentProfile::new(rat(t, r - 2), rat(3, 2), "k^{t/(r-2)} n^{3/2}");
    let dense = ExponentProfile::new(
        rat(2 * t * t, d),
        rat((3 * t - 2) * (r - 2) + 2 * t, d),
        "k^{2t^2/((2t-1)(r-2)+t)} n^{((3t-2)(r-2)+2t)/((2t-1)(r-2)+t)}",
    );
    Ok((sparse, dense))
}

/// Exact check that both branches have the same `n`-exponent once
/// `k = n^{(r-2)/(2t)}` is substituted.
pub fn thm11_crossover_exact(r: usize, t: usize) -> Result<bool> {
    let (sparse, dense) = thm11_exponents(r, t)?;
    let c = rat(int(r) - 2, 2 * int(t));
    Ok(sparse.k_exponent * c + sparse.n_exponent == dense.k_exponent * c + dense.n_exponent)
}

/// Tolerance for the built-in crossover agreement check.
pub const CROSSOVER_TOLERANCE: f64 = 1e-9;

/// Minimum of the two branches at `(k, n)`, together with the crossover
/// diagnostics.
pub fn thm11_lower(k: f64, n: f64, r: usize, t: usize) -> Result<Thm11Lower> {
    if !(k >= 1.0 && k.is_finite()) {
        return input(format!("need k >= 1, got {k}"));
    }
    positive("n", n)?;
    let (sparse, dense) = thm11_exponents(r, t)?;
    let (ln_sparse, ln_dense) = (sparse.ln_value(k, n), dense.ln_value(k, n));
    let ln_crossover_k = (int(r) - 2) as f64 / (2 * int(t)) as f64 * n.ln();
    let k_star = ln_crossover_k.exp();
    let gap = (sparse.ln_value(k_star, n) - dense.ln_value(k_star, n))
        .exp_m1()
        .abs();
    if gap > CROSSOVER_TOLERANCE {
        return Err(Error::Internal(format!(
            "branches differ by {gap:e} at the crossover"
        )));
    }
    let (branch, ln_value) = if ln_sparse <= ln_dense {
        (Thm11Branch::Sparse, ln_sparse)
    } else {
        (Thm11Branch::Dense, ln_dense)
    };
    Ok(Thm11Lower {
        branch,
        ln_value,
        sparse,
        dense,
        ln_sparse,
        ln_dense,
        ln_crossover_k,
        crossover_gap: gap,
    })
}

/// `x (x-1) ... (x-k+1) / k!` for real `x`.
pub fn real_binomial(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x - i as f64) / (i + 1) as f64)
}

/// Tolerance of the bisection in [`kruskal_katona_bound`].
pub const KK_TOLERANCE: f64 = 1e-9;

/// Lovász form of Kruskal–Katona: with `x >= r` solving `C(x, r) = N`,
/// a graph with `N` copies of `K_r` has at least `C(x, s)` copies of
/// `K_s`. When `N = C(m, r)` for an integer `m` the result is exact.
pub fn kruskal_katona_bound(big_n: u128, r: usize, s: usize) -> Result<f64> {
    if r == 0 {
        return input("need r >= 1");
    }
    if s > r {
        return input(format!("need s <= r, got s = {s}, r = {r}"));
    }
    if big_n == 0 {
        return input("need N >= 1");
    }
    if let Some(m) = integral_root(big_n, r) {
        return Ok(binomial(m, s as u128)? as f64);
    }
    let target = big_n as f64;
    let (mut lo, mut hi) = (r as f64, 2.0 * r as f64);
    while real_binomial(hi, r) < target {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > KK_TOLERANCE * lo.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if real_binomial(mid, r) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(real_binomial(0.5 * (lo + hi), s))
}

/// Integer `m >= r` with `C(m, r) = N`, if any.
fn integral_root(big_n: u128, r: usize) -> Option<u128> {
    let r = r as u128;
    let at_least = |m: u128| binomial(m, r).map_or(true, |c| c >= big_n);
    let (mut lo, mut hi) = (r, r.max(1));
    while !at_least(hi) {
        lo = hi;
        hi = hi.checked_mul(2)?;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if at_least(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (binomial(lo, r).ok() == Some(big_n)).then_some(lo)
}

/// `k^{st} n^s`: complete bipartite supersaturation from edge density.
pub fn eskst_bound(k: f64, n: f64, s: usize, t: usize) -> Result<BoundValue> {
    positive("k", k)?;
    positive("n", n)?;
    if s == 0 || s > t {
        return input(format!("need 1 <= s <= t, got s = {s}, t = {t}"));
    }
    let (ke, ne) = (rat(int(s * t), 1), rat(int(s), 1));
    Ok(BoundValue {
        formula: format!("N(K_{{{s},{t}}}) >= k^(st) n^s"),
        exponents: vec![("k".into(), ke), ("n".into(), ne)],
        ln_value: to_f64(ke) * k.ln() + to_f64(ne) * n.ln(),
        heuristic: false,
        note: format!("for e(G) = k n^(2-1/{s})"),
    })
}

fn clique_count_gate(big_n: f64, n: f64, r: usize) -> Result<()> {
    positive("n", n)?;
    if r < 2 {
        return input("need r >= 2");
    }
    let max = real_binomial(n, r);
    if !(1.0..=max).contains(&big_n) {
        return input(format!("need 1 <= N <= C(n, r) = {max}, got N = {big_n}"));
    }
    Ok(())
}

/// `(N n^{-r})^{e(F)/C(r,2)} n^{v(F)}`: expected copies of `F` in `G(n,p)`
/// tuned to hold `N` copies of `K_r`.
pub fn gnp_baseline(big_n: f64, n: f64, r: usize, f: &Graph) -> Result<BoundValue> {
    clique_count_gate(big_n, n, r)?;
    let a = rat(int(f.edge_count()), choose2(int(r)));
    Ok(scaled_clique_bound("G(n,p) baseline", a, big_n, n, r, f))
}

/// `(N n^{-r})^{e(F) beta} n^{v(F)}`: copies of `F` in the random clique
/// construction holding `N` copies of `K_r`.
pub fn thm12_bound(big_n: f64, n: f64, r: usize, f: &Graph) -> Result<BoundValue> {
    clique_count_gate(big_n, n, r)?;
    let beta = beta_exponent(f, r)?;
    if !is_2_balanced(f)?.balanced {
        return input("pattern is not 2-balanced");
    }
    let a = beta * int(f.edge_count());
    Ok(scaled_clique_bound(
        "random clique construction",
        a,
        big_n,
        n,
        r,
        f,
    ))
}

fn scaled_clique_bound(
    name: &str,
    a: Rational,
    big_n: f64,
    n: f64,
    r: usize,
    f: &Graph,
) -> BoundValue {
    let n_exp = rat(int(f.n()), 1) - a * int(r);
    BoundValue {
        formula: format!("{name}: (N n^-{r})^({a}) n^{}", f.n()),
        exponents: vec![("N".into(), a), ("n".into(), n_exp)],
        ln_value: to_f64(a) * big_n.ln() + to_f64(n_exp) * n.ln(),
        heuristic: false,
        note: String::new(),
    }
}

/// Result of the clique-union `K_{s,t}` lower bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Lemma41Bound {
    pub bound: BoundValue,
    /// `k` solved from `u m^r = k n^{r - C(r,2)/s}`.
    pub k: f64,
    pub r_limit: Rational,
}

/// Largest admissible `r` for the clique-union `K_{s,t}` bound:
/// `(2st - s - t) / (s + t - 2)`.
pub fn lemma41_r_limit(s: usize, t: usize) -> Rational {
    let (s, t) = (int(s), int(t));
    rat(2 * s * t - s - t, s + t - 2)
}

/// `k^{st/C(r,2)} n^s` for a union of `u` cliques of size `m`.
pub fn lemma41_bound(u: f64, m: f64, n: f64, r: usize, s: usize, t: usize) -> Result<Lemma41Bound> {
    positive("u", u)?;
    positive("m", m)?;
    positive("n", n)?;
    if !(2 <= s && s <= t) {
        return input(format!("need 2 <= s <= t, got s = {s}, t = {t}"));
    }
    let limit = lemma41_r_limit(s, t);
    if r < 2 || rat(int(r), 1) > limit {
        return input(format!(
            "need 2 <= r <= (2st-s-t)/(s+t-2) = {limit}, got r = {r}"
        ));
    }
    let c = choose2(int(r));
    let n_power = rat(int(r), 1) - rat(c, int(s));
    let ln_k = u.ln() + r as f64 * m.ln() - to_f64(n_power) * n.ln();
    let ke = rat(int(s * t), c);
    let ne = rat(int(s), 1);
    Ok(Lemma41Bound {
        bound: BoundValue {
            formula: format!("N(K_{{{s},{t}}}) >= k^({ke}) n^{s}"),
            exponents: vec![("k".into(), ke), ("n".into(), ne)],
            ln_value: to_f64(ke) * ln_k + s as f64 * n.ln(),
            heuristic: false,
            note: format!("k from u m^{r} = k n^({n_power})"),
        },
        k: ln_k.exp(),
        r_limit: limit,
    })
}

/// `k^{(v(T)-1)/(r-1)} n`: tree supersaturation.
pub fn prop15_bound(k: f64, n: f64, tree: &Graph, r: usize) -> Result<BoundValue> {
    positive("k", k)?;
    positive("n", n)?;
    if !tree.is_tree() {
        return input("pattern is not a tree");
    }
    if r < 2 || r >= tree.n() {
        return input(format!("need 2 <= r < v(T) = {}, got {r}", tree.n()));
    }
    let ke = rat(int(tree.n()) - 1, int(r) - 1);
    Ok(BoundValue {
        formula: format!("N(T) >= k^({ke}) n"),
        exponents: vec![("k".into(), ke), ("n".into(), Rational::one())],
        ln_value: to_f64(ke) * k.ln() + n.ln(),
        heuristic: false,
        note: String::new(),
    })
}

/// Conjectured bounds whose `o(1)` exponent term is supplied by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conjecture {
    /// `N(K_{2,t}) <= k^t n^{3/2 + eps}` for `1 <= k <= n^{1/(2t)}`.
    K2tUpper,
    /// `N(K_{s,t}) >= k^{st/C(r,2)} n^{s - eps}` for `2 <= r <= s <= t`.
    KstLower,
    /// `N(K_{3,t}) >= k^t n^{3 - eps}` for `t >= 3`.
    K3tLower,
}

impl Conjecture {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "k2t" | "c4" | "conj41" => Ok(Conjecture::K2tUpper),
            "kst" | "conj42" => Ok(Conjecture::KstLower),
            "k3t" | "conj43" => Ok(Conjecture::K3tLower),
            _ => input(format!("unknown conjecture {name:?} (k2t, kst, k3t)")),
        }
    }
}

/// Right-hand side of a conjectured bound with `o(1) = eps`.
pub fn conj_rhs(
    which: Conjecture,
    k: f64,
    n: f64,
    r: usize,
    s: usize,
    t: usize,
    eps: f64,
) -> Result<BoundValue> {
    positive("k", k)?;
    positive("n", n)?;
    if !eps.is_finite() {
        return input("eps must be finite");
    }
    let (ke, n_base, formula, sign) = match which {
        Conjecture::K2tUpper => {
            if t < 2 {
                return input("need t >= 2");
            }
            if !(k >= 1.0 && k.ln() <= n.ln() / (2 * t) as f64) {
                return input(format!("need 1 <= k <= n^(1/(2t)), got k = {k}"));
            }
            (
                rat(int(t), 1),
                rat(3, 2),
                format!("N(K_{{2,{t}}}) <= k^{t} n^(3/2+eps)"),
                1.0,
            )
        }
        Conjecture::KstLower => {
            if !(2 <= r && r <= s && s <= t) {
                return input(format!(
                    "need 2 <= r <= s <= t, got r = {r}, s = {s}, t = {t}"
                ));
            }
            let ke = rat(int(s * t), choose2(int(r)));
            (
                ke,
                rat(int(s), 1),
                format!("N(K_{{{s},{t}}}) >= k^({ke}) n^({s}-eps)"),
                -1.0,
            )
        }
        Conjecture::K3tLower => {
            if t < 3 {
                return input("need t >= 3");
            }
            (
                rat(int(t), 1),
                rat(3, 1),
                format!("N(K_{{3,{t}}}) >= k^{t} n^(3-eps)"),
                -1.0,
            )
        }
    };
    Ok(BoundValue {
        formula,
        exponents: vec![("k".into(), ke), ("n".into(), n_base)],
        ln_value: to_f64(ke) * k.ln() + (to_f64(n_base) + sign * eps) * n.ln(),
        heuristic: true,
        note: format!("conjectural; o(1) exponent term set to {eps}"),
    })
}

/// `C(n, k)` for small arguments, for callers that want the integer.
pub fn small_binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    ibinomial(n, k)
}

impl Thm11Lower {
    pub fn value(&self) -> f64 {
        self.ln_value.exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{clique, complete_bipartite, cycle, path};

    fn k4_pendant() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn two_balanced_examples() {
        for t in 2..=4 {
            assert!(
                is_2_balanced(&complete_bipartite(2, t)).unwrap().balanced,
                "K2,{t}"
            );
        }
        assert!(is_2_balanced(&cycle(4)).unwrap().balanced);
        let verdict = is_2_balanced(&k4_pendant()).unwrap();
        assert!(!verdict.balanced);
        assert_eq!(verdict.witness, Some(vec![0, 1, 2, 3]));
        assert_eq!(verdict.witness_density, Some(rat(5, 2)));
        assert_eq!(verdict.density, Some(rat(2, 1)));
        assert!(is_2_balanced(&Graph::empty(3)).is_err());
        assert!(is_2_balanced(&clique(9)).is_err());
    }

    #[test]
    fn beta_examples() {
        for t in 2..=6 {
            let beta = beta_exponent(&complete_bipartite(2, t), 3).unwrap();
            assert_eq!(beta, rat(int(t), 3 * int(t) - 1));
        }
        assert_eq!(beta_exponent(&cycle(4), 3).unwrap(), rat(2, 5));
        assert_eq!(beta_exponent(&cycle(5), 2).unwrap(), Rational::one());
        assert!(beta_exponent(&cycle(4), 4).is_err());
        assert!(beta_exponent(&clique(2), 2).is_err());
    }

    #[test]
    fn beta_at_r3_reproduces_dense_branch() {
        // With N = k n^{3/2} and F = K_{2,t}, the random clique bound is
        // k^{e beta} n^{v - 3 e beta + 3/2 e beta} = k^{2t^2/(3t-1)} n^{(5t-2)/(3t-1)}.
        for t in 2..=8usize {
            let f = complete_bipartite(2, t);
            let e_beta = beta_exponent(&f, 3).unwrap() * int(f.edge_count());
            let n_exp = rat(int(f.n()), 1) - e_beta * 3 + e_beta * rat(3, 2);
            let (_, dense) = thm11_exponents(3, t).unwrap();
            let t = int(t);
            assert_eq!(e_beta, rat(2 * t * t, 3 * t - 1));
            assert_eq!(n_exp, rat(5 * t - 2, 3 * t - 1));
            assert_eq!((dense.k_exponent, dense.n_exponent), (e_beta, n_exp));
        }
    }

    #[test]
    fn r2_reduces_to_gnp() {
        let f = cycle(5);
        let n = 50.0;
        let big_n = 300.0;
        let a = thm12_bound(big_n, n, 2, &f).unwrap();
        let b = gnp_baseline(big_n, n, 2, &f).unwrap();
        assert_eq!(a.exponents, b.exponents);
        assert!((a.ln_value - b.ln_value).abs() < 1e-12);
    }

    #[test]
    fn two_branch_examples() {
        let (sparse, dense) = thm11_exponents(3, 4).unwrap();
        assert_eq!(
            (sparse.k_exponent, sparse.n_exponent),
            (rat(4, 1), rat(3, 2))
        );
        assert_eq!(
            (dense.k_exponent, dense.n_exponent),
            (rat(32, 11), rat(18, 11))
        );
        let at_one = thm11_lower(1.0, 1e6, 3, 4).unwrap();
        assert!((at_one.ln_sparse - 1.5 * 1e6f64.ln()).abs() < 1e-9);
        assert_eq!(at_one.branch, Thm11Branch::Sparse);
        let big_k = thm11_lower(1e6, 1e6, 3, 4).unwrap();
        assert_eq!(big_k.branch, Thm11Branch::Dense);
        assert!(thm11_lower(1.0, 100.0, 2, 3).is_err());
        assert!(thm11_lower(1.0, 100.0, 5, 3).is_err());
        assert!(thm11_lower(0.5, 100.0, 3, 3).is_err());
        for t in 2..=10 {
            for r in 3..t + 2 {
                assert!(thm11_crossover_exact(r, t).unwrap(), "r={r} t={t}");
            }
        }
    }

    #[test]
    fn kruskal_katona_examples() {
        assert_eq!(kruskal_katona_bound(20, 3, 2).unwrap(), 15.0);
        assert_eq!(kruskal_katona_bound(1, 4, 2).unwrap(), 6.0);
        assert_eq!(kruskal_katona_bound(210, 4, 3).unwrap(), 120.0);
        // Between C(6,3) = 20 and C(7,3) = 35.
        let mid = kruskal_katona_bound(27, 3, 2).unwrap();
        assert!(15.0 < mid && mid < 21.0);
        assert!(kruskal_katona_bound(5, 2, 3).is_err());
        assert!(kruskal_katona_bound(0, 2, 1).is_err());
    }

    #[test]
    fn bisection_path_is_accurate() {
        // Exercise the real-valued solver directly on integral targets.
        for m in 4..=20usize {
            let x_target = binomial(m as u128, 3).unwrap() as f64 + 0.5;
            let got = kruskal_katona_bound(x_target as u128, 3, 3).unwrap();
            assert!((got - (x_target - 0.5)).abs() < 1.0);
        }
    }

    #[test]
    fn clique_union_kst_gate() {
        assert_eq!(lemma41_r_limit(3, 3), rat(3, 1));
        assert!(lemma41_bound(10.0, 5.0, 100.0, 3, 3, 3).is_ok());
        assert!(lemma41_bound(10.0, 5.0, 100.0, 4, 3, 3).is_err());
    }

    #[test]
    fn pattern_free_exponent_c4() {
        assert_eq!(thm14_exponent(&cycle(4), 3).unwrap(), rat(4, 3));
        assert!(thm14_exponent(&k4_pendant(), 3).is_err());
    }

    #[test]
    fn comparison_predicate_examples() {
        // K_{2,t} beats G(n,p) for every r >= 3.
        for t in 2..6usize {
            for r in 3..2 + t {
                assert!(random_cliques_beat_gnp(2 + t, 2 * t, r));
                assert!(density_criterion(2 + t, 2 * t, r));
            }
        }
    }

    #[test]
    fn other_evaluators() {
        let e = eskst_bound(2.0, 100.0, 2, 3).unwrap();
        assert_eq!(e.exponents[0].1, rat(6, 1));
        assert!((e.value() - 64.0 * 1e4).abs() < 1e-6);
        let p = prop15_bound(8.0, 10.0, &path(3), 3).unwrap();
        assert_eq!(p.exponents[0].1, rat(3, 2));
        assert!(prop15_bound(8.0, 10.0, &cycle(4), 3).is_err());
        let c = conj_rhs(Conjecture::K3tLower, 2.0, 10.0, 3, 3, 3, 0.0).unwrap();
        assert!(c.heuristic);
        assert!((c.value() - 8000.0).abs() < 1e-6);
        assert!(conj_rhs(Conjecture::K2tUpper, 100.0, 10.0, 3, 2, 2, 0.0).is_err());
        assert!(conj_rhs(Conjecture::KstLower, 2.0, 10.0, 4, 3, 3, 0.0).is_err());
    }
}
