//! Experiment catalog: parameter defaults, preconditions and one trial.
//!
//! A trial is a pure function of its parameters and its seed, so any record
//! can be replayed. Fields named `pass` are theorem-backed; everything else
//! is a measurement.

use std::collections::HashSet;

use anyhow::{bail, Result};
use cliquelab::bounds::{is_2_balanced, kruskal_katona_bound, thm11_lower};
use cliquelab::constructions::{
    below_edge_ceiling, build_f_free_clique_graph, k2t_within_cap, path_bounded_edge_ceiling,
    rng_from_seed, sample_random_cliques, search_path_bounded_bipartite, RandomCliqueParams,
    SearchStrategy,
};
use cliquelab::counters::{
    automorphism_count, binomial, count_cliques, count_complete_bipartite, count_subgraph,
    path_multiplicity,
};
use cliquelab::covers::{count_z, max_weight_family, FamilyCatalog, WeightParams};
use cliquelab::extraction::prop15_pipeline;
use cliquelab::verify::random_graph;
use cliquelab::{CliqueUnion, Graph};
use rand::Rng;

use crate::formulas;
use crate::params::Args;
use crate::record::Record;
use crate::spec::Params;

/// How a point's per-trial statistic is aggregated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatKind {
    /// Sample mean with a normal 95% interval.
    Mean,
    /// Largest `delta` with empirical `Pr[X > delta] > delta`.
    Delta,
    Max,
}

pub struct Experiment {
    pub name: &'static str,
    pub defaults: &'static [(&'static str, &'static str)],
    /// Field aggregated in the summary.
    pub stat: Option<(&'static str, StatKind)>,
    pub about: &'static str,
    /// Accepts keys beyond the defaults.
    open: bool,
    check: fn(&Args) -> Result<()>,
    trial: fn(&Args, u64) -> Result<Record>,
}

impl Experiment {
    /// Precondition check; an error is recorded as the skip reason.
    pub fn check(&self, params: &Params) -> Result<()> {
        let a = Args::new(params, self.defaults);
        if !self.open {
            a.reject_unknown(&[])?;
        }
        (self.check)(&a)
    }

    pub fn trial(&self, params: &Params, seed: u64) -> Result<Record> {
        (self.trial)(&Args::new(params, self.defaults), seed)
    }
}

pub fn find(name: &str) -> Result<&'static Experiment> {
    match EXPERIMENTS.iter().find(|e| e.name == name) {
        Some(e) => Ok(e),
        None => {
            let names: Vec<&str> = EXPERIMENTS.iter().map(|e| e.name).collect();
            bail!("unknown experiment {name:?} (known: {})", names.join(", "))
        }
    }
}

pub const EXPERIMENTS: &[Experiment] = &[
    Experiment {
        name: "lemma31_clique_count",
        defaults: &[("n", "24"), ("m", "6"), ("r", "3"), ("u", "10")],
        stat: Some(("x", StatKind::Delta)),
        about: "clique count of the random clique graph, normalized by u m^r",
        open: false,
        check: check_clique_count,
        trial: trial_clique_count,
    },
    Experiment {
        name: "lemma32_expectation",
        defaults: &[("F", "C4"), ("n", "40"), ("m", "4"), ("u", "50")],
        stat: Some(("ratio", StatKind::Mean)),
        about: "copies of F against (u m^2 / n^2)^e(F) n^v(F)",
        open: false,
        check: check_regime,
        trial: trial_expectation,
    },
    Experiment {
        name: "lemma33_Z_dominance",
        defaults: &[("F", "C4"), ("n", "12"), ("m", "3"), ("u", "4")],
        stat: Some(("z", StatKind::Mean)),
        about: "copies of F never exceed covering pairs Z",
        open: false,
        check: check_z,
        trial: trial_z,
    },
    Experiment {
        name: "lemma34_maximizer",
        defaults: &[("F", "C4"), ("n", "40"), ("m", "4"), ("u", "50")],
        stat: Some(("ratio", StatKind::Mean)),
        about: "edge family maximizes the weight; Z against its expectation bound",
        open: false,
        check: check_regime,
        trial: trial_maximizer,
    },
    Experiment {
        name: "lemma35_K2t_cap",
        defaults: &[
            ("m", "12"),
            ("n", "12"),
            ("ell", "2"),
            ("t", "3"),
            ("strategy", "sweep"),
        ],
        stat: Some(("fill", StatKind::Max)),
        about: "K_{2,t} copies in the clique graph of a path-bounded bipartite graph",
        open: false,
        check: check_search,
        trial: trial_k2t,
    },
    Experiment {
        name: "lemma36_extremal_cap",
        defaults: &[
            ("m", "16"),
            ("n", "16"),
            ("ell", "2"),
            ("strategy", "sweep"),
        ],
        stat: Some(("fill", StatKind::Max)),
        about: "edges of path-bounded bipartite graphs against the ceiling",
        open: false,
        check: check_search,
        trial: trial_ceiling,
    },
    Experiment {
        name: "thm14_deletion",
        defaults: &[("F", "C4"), ("n", "30"), ("r", "3"), ("alpha", "0.1")],
        stat: Some(("positive", StatKind::Mean)),
        about: "pattern-free clique graph by deletion",
        open: false,
        check: check_deletion,
        trial: trial_deletion,
    },
    Experiment {
        name: "prop15_trees",
        defaults: &[("T", "P3"), ("n", "30"), ("p", "0.3"), ("r", "3")],
        stat: Some(("constant", StatKind::Mean)),
        about: "greedy tree count certificate on G(n,p)",
        open: false,
        check: check_trees,
        trial: trial_trees,
    },
    Experiment {
        name: "thm11_expansion",
        defaults: &[("n", "30"), ("p", "0.5"), ("r", "3"), ("t", "2")],
        stat: Some(("constant", StatKind::Mean)),
        about: "codegree expansion sum against K_{2,t} copies",
        open: false,
        check: check_expansion,
        trial: trial_expansion,
    },
    Experiment {
        name: "kruskal_katona",
        defaults: &[("ground", "10"), ("r", "3"), ("s", "2"), ("p", "0.3")],
        stat: Some(("slack", StatKind::Mean)),
        about: "shadow of a random r-uniform family against the shadow bound",
        open: false,
        check: check_kk,
        trial: trial_kk,
    },
    Experiment {
        name: "bounds_grid",
        defaults: &[("formula", "thm11")],
        stat: None,
        about: "formula evaluation; remaining keys are the formula's parameters",
        open: true,
        check: check_bounds,
        trial: trial_bounds,
    },
];

fn ratio(a: f64, b: f64) -> f64 {
    if b > 0.0 {
        a / b
    } else {
        f64::NAN
    }
}

fn sample(n: usize, m: usize, u: f64, seed: u64) -> Result<(CliqueUnion, bool)> {
    let s = sample_random_cliques(&RandomCliqueParams::new(n, m, u, seed))?;
    Ok((s.union, s.saturated))
}

fn check_clique_count(a: &Args) -> Result<()> {
    let (n, m, r, u) = (a.usize("n")?, a.usize("m")?, a.usize("r")?, a.f64("u")?);
    if r < 2 {
        bail!("need r >= 2");
    }
    if u < 1.0 {
        bail!("need u >= 1");
    }
    if m < 2 * r || m > n {
        bail!("need 2r <= m <= n");
    }
    if u * (m as f64).powi(r as i32) > (n as f64).powi(r as i32) {
        bail!("need u m^r <= n^r");
    }
    Ok(())
}

fn trial_clique_count(a: &Args, seed: u64) -> Result<Record> {
    let (n, m, r, u) = (a.usize("n")?, a.usize("m")?, a.usize("r")?, a.f64("u")?);
    let (cu, saturated) = sample(n, m, u, seed)?;
    let count = count_cliques(&cu.union_graph(), r)?;
    Ok(Record::new()
        .with("cliques", cu.len())
        .with("saturated", saturated)
        .with("count", count)
        .with("x", count as f64 / (u * (m as f64).powi(r as i32))))
}

fn check_regime(a: &Args) -> Result<()> {
    let f = a.pattern("F")?.graph;
    if f.edge_count() < 2 {
        bail!("need e(F) >= 2");
    }
    if !is_2_balanced(&f)?.balanced {
        bail!("F is not 2-balanced");
    }
    let p = WeightParams::new(a.f64("u")?, a.usize("m")? as u64, a.usize("n")? as u64)?;
    p.check_regime(f.n(), f.edge_count())?;
    Ok(())
}

fn normalizer(f: &Graph, u: f64, m: usize, n: usize) -> f64 {
    let (v, e) = (f.n() as i32, f.edge_count() as i32);
    (u * (m as f64 / n as f64).powi(2)).powi(e) * (n as f64).powi(v)
}

fn trial_expectation(a: &Args, seed: u64) -> Result<Record> {
    let f = a.pattern("F")?.graph;
    let (n, m, u) = (a.usize("n")?, a.usize("m")?, a.f64("u")?);
    let (cu, _) = sample(n, m, u, seed)?;
    let copies = count_subgraph(&f, &cu.union_graph())?;
    let scale = normalizer(&f, u, m, n);
    Ok(Record::new()
        .with("cliques", cu.len())
        .with("copies", copies)
        .with("normalizer", scale)
        .with("ratio", copies as f64 / scale))
}

fn check_z(a: &Args) -> Result<()> {
    let f = a.pattern("F")?.graph;
    if f.n() > cliquelab::covers::MAX_COVER_VERTICES {
        bail!("v(F) above the covering guard");
    }
    let (n, m) = (a.usize("n")?, a.usize("m")?);
    if m < 2 || m > n {
        bail!("need 2 <= m <= n");
    }
    Ok(())
}

fn trial_z(a: &Args, seed: u64) -> Result<Record> {
    let f = a.pattern("F")?.graph;
    let (cu, _) = sample(a.usize("n")?, a.usize("m")?, a.f64("u")?, seed)?;
    let copies = count_subgraph(&f, &cu.union_graph())?;
    let z = count_z(&f, &cu)?;
    Ok(Record::new()
        .with("cliques", cu.len())
        .with("copies", copies)
        .with("z", z.z)
        .with("pass", copies <= z.z))
}

/// Copies of `f` in `K_n`, as a float.
fn copies_in_complete(f: &Graph, n: usize) -> Result<f64> {
    let falling: f64 = (0..f.n()).map(|i| (n - i) as f64).product();
    Ok(falling / automorphism_count(f)? as f64)
}

fn trial_maximizer(a: &Args, seed: u64) -> Result<Record> {
    let f = a.pattern("F")?.graph;
    let (n, m, u) = (a.usize("n")?, a.usize("m")?, a.f64("u")?);
    let p = WeightParams::new(u, m as u64, n as u64)?;
    let max = max_weight_family(&f, &p)?;
    let catalog = FamilyCatalog::new(&f)?;
    let weight_sum: f64 = catalog
        .counts
        .iter()
        .map(|(&(x, y), &c)| c as f64 * p.ln_weight(x, y).exp())
        .sum();
    let bound = copies_in_complete(&f, n)? * weight_sum;
    let (cu, _) = sample(n, m, u, seed)?;
    let z = count_z(&f, &cu)?.z;
    Ok(Record::new()
        .with("edge_family", max.is_edge_family)
        .with("maximizers", max.maximizers)
        .with("max_weight", max.weight_f64())
        .with("families", catalog.total())
        .with("z", z)
        .with("expectation_bound", bound)
        .with("ratio", ratio(z as f64, bound))
        .with("pass", max.is_edge_family && max.maximizers == 1))
}

fn strategy(a: &Args, m: usize, n: usize) -> Result<SearchStrategy> {
    match a.raw("strategy")? {
        "sweep" => Ok(SearchStrategy::Sweep),
        "random" => Ok(SearchStrategy::Random { budget: 4 * m * n }),
        s => bail!("unknown strategy {s:?} (sweep, random)"),
    }
}

fn check_search(a: &Args) -> Result<()> {
    let (m, n, ell) = (a.usize("m")?, a.usize("n")?, a.usize("ell")?);
    if m == 0 || n == 0 || ell == 0 {
        bail!("need m, n, ell >= 1");
    }
    strategy(a, m, n)?;
    if let Ok(t) = a.usize("t") {
        if t < 1 {
            bail!("need t >= 1");
        }
    }
    Ok(())
}

fn trial_k2t(a: &Args, seed: u64) -> Result<Record> {
    let (m, n, ell, t) = (a.usize("m")?, a.usize("n")?, a.usize("ell")?, a.usize("t")?);
    let b = search_path_bounded_bipartite(m, n, ell, m * n, seed, strategy(a, m, n)?)?.graph;
    let mult = path_multiplicity(&b, 4)?;
    let (count, cap, ok) = k2t_within_cap(&b, ell, t)?;
    Ok(Record::new()
        .with("edges", b.edge_count())
        .with("multiplicity", mult)
        .with("copies", count)
        .with("cap", cap)
        .with("fill", ratio(count as f64, cap as f64))
        .with("pass", ok && mult <= ell))
}

fn trial_ceiling(a: &Args, seed: u64) -> Result<Record> {
    let (m, n, ell) = (a.usize("m")?, a.usize("n")?, a.usize("ell")?);
    let b = search_path_bounded_bipartite(m, n, ell, m * n, seed, strategy(a, m, n)?)?.graph;
    let mult = path_multiplicity(&b, 4)?;
    let ceiling = path_bounded_edge_ceiling(m, n, ell);
    Ok(Record::new()
        .with("edges", b.edge_count())
        .with("multiplicity", mult)
        .with("ceiling", ceiling)
        .with("fill", b.edge_count() as f64 / ceiling)
        .with(
            "pass",
            mult <= ell && below_edge_ceiling(b.edge_count(), m, n, ell),
        ))
}

fn check_deletion(a: &Args) -> Result<()> {
    let f = a.pattern("F")?.graph;
    let (n, r, alpha) = (a.usize("n")?, a.usize("r")?, a.f64("alpha")?);
    if !(0.0..1.0).contains(&alpha) {
        bail!("need 0 <= alpha < 1");
    }
    if r < 2 || r > n {
        bail!("need 2 <= r <= n");
    }
    if f.n() > cliquelab::covers::MAX_COVER_VERTICES {
        bail!("v(F) above the covering guard");
    }
    Ok(())
}

fn trial_deletion(a: &Args, seed: u64) -> Result<Record> {
    let f = a.pattern("F")?.graph;
    let (cu, report) =
        build_f_free_clique_graph(a.usize("n")?, a.usize("r")?, &f, a.f64("alpha")?, seed)?;
    let copies = count_subgraph(&f, &cu.union_graph())?;
    Ok(Record::new()
        .with("m", report.m)
        .with("u", report.u)
        .with("initial", report.initial)
        .with("deleted", report.deleted)
        .with("final", report.final_cliques)
        .with("positive", u8::from(report.final_cliques > 0))
        .with("pass", copies == 0))
}

fn check_trees(a: &Args) -> Result<()> {
    let t = a.pattern("T")?.graph;
    let r = a.usize("r")?;
    if !t.is_tree() {
        bail!("T is not a tree");
    }
    if r < 2 || r >= t.n() {
        bail!("need 2 <= r < v(T)");
    }
    let p = a.f64("p")?;
    if !(0.0..=1.0).contains(&p) {
        bail!("need 0 <= p <= 1");
    }
    Ok(())
}

fn trial_trees(a: &Args, seed: u64) -> Result<Record> {
    let t = a.pattern("T")?.graph;
    let (n, p, r) = (a.usize("n")?, a.f64("p")?, a.usize("r")?);
    let g = random_graph(&mut rng_from_seed(seed), n, p);
    let rep = prop15_pipeline(&g, &t, r)?;
    let k = rep.cliques as f64 / n as f64;
    let predicted = k.powf((t.n() - 1) as f64 / (r - 1) as f64) * n as f64;
    Ok(Record::new()
        .with("cliques", rep.cliques)
        .with("kept", rep.kept_vertices)
        .with("clique_degree", rep.clique_degree)
        .with("degree_bound", rep.degree_bound)
        .with("tree_bound", rep.tree_bound)
        .with("copies", rep.exact)
        .with("constant", ratio(rep.exact as f64, predicted))
        .with("pass", rep.certified))
}

fn check_expansion(a: &Args) -> Result<()> {
    let (r, t) = (a.usize("r")?, a.usize("t")?);
    if t < 2 || r <= 2 || r >= 2 + t {
        bail!("need t >= 2 and 2 < r < 2 + t");
    }
    let p = a.f64("p")?;
    if !(0.0..=1.0).contains(&p) {
        bail!("need 0 <= p <= 1");
    }
    Ok(())
}

fn trial_expansion(a: &Args, seed: u64) -> Result<Record> {
    let (n, p, r, t) = (a.usize("n")?, a.f64("p")?, a.usize("r")?, a.usize("t")?);
    let g = random_graph(&mut rng_from_seed(seed), n, p);
    let mut sum = 0u128;
    for (x, y) in g.edges() {
        sum += binomial(g.common_neighborhood(&[x, y])?.len() as u128, t as u128)?;
    }
    let copies = count_complete_bipartite(&g, 2, t)?;
    let cliques = count_cliques(&g, r)?;
    let k = cliques as f64 / (n as f64).powf(1.5);
    let mut rec = Record::new()
        .with("cliques", cliques)
        .with("k", k)
        .with("sum", sum)
        .with("copies", copies);
    // The lower bound is only meaningful once k >= 1.
    if k >= 1.0 {
        let lower = thm11_lower(k, n as f64, r, t)?;
        rec.set("lower", lower.ln_value.exp());
        rec.set("constant", ratio(copies as f64, lower.ln_value.exp()));
    }
    Ok(rec.with("pass", sum <= 2 * copies))
}

fn check_kk(a: &Args) -> Result<()> {
    let (g, r, s) = (a.usize("ground")?, a.usize("r")?, a.usize("s")?);
    if g > 20 {
        bail!("ground set above 20");
    }
    if r == 0 || r > g || s > r {
        bail!("need 1 <= r <= ground and s <= r");
    }
    Ok(())
}

fn trial_kk(a: &Args, seed: u64) -> Result<Record> {
    let (g, r, s, p) = (
        a.usize("ground")?,
        a.usize("r")?,
        a.usize("s")?,
        a.f64("p")?,
    );
    let mut rng = rng_from_seed(seed);
    let family: Vec<u32> = (0u32..1 << g)
        .filter(|x| x.count_ones() as usize == r)
        .filter(|_| rng.random_bool(p))
        .collect();
    let mut shadow = HashSet::new();
    for &set in &family {
        let bits: Vec<u32> = (0..g as u32).filter(|i| set >> i & 1 == 1).collect();
        for sub in 0u32..1 << r {
            if sub.count_ones() as usize == s {
                shadow.insert(
                    bits.iter()
                        .enumerate()
                        .filter(|(j, _)| sub >> j & 1 == 1)
                        .fold(0u32, |acc, (_, b)| acc | 1 << b),
                );
            }
        }
    }
    let bound = kruskal_katona_bound(family.len() as u128, r, s)?;
    let size = shadow.len();
    Ok(Record::new()
        .with("family", family.len())
        .with("shadow", size)
        .with("bound", bound)
        .with("slack", ratio(size as f64, bound))
        .with("pass", size as f64 >= bound * (1.0 - 1e-9)))
}

fn formula_params(a: &Args) -> Result<(String, Params)> {
    let formula = a.raw("formula")?.to_string();
    let params = a
        .explicit()
        .into_iter()
        .filter(|(k, _)| k != "formula")
        .collect();
    Ok((formula, params))
}

fn check_bounds(a: &Args) -> Result<()> {
    let (formula, params) = formula_params(a)?;
    formulas::evaluate(&formula, &params).map(|_| ())
}

fn trial_bounds(a: &Args, _seed: u64) -> Result<Record> {
    let (formula, params) = formula_params(a)?;
    formulas::evaluate(&formula, &params)
}
