//! `lab construct`: builds a graph and returns its file text plus a
//! one-line report.

use anyhow::{bail, Result};
use cliquelab::constructions::{
    build_f_free_clique_graph, disjoint_cliques, lemma37_construction, sample_random_cliques,
    search_path_bounded_bipartite, Lemma37Params, RandomCliqueParams, SearchStrategy, DEFAULT_C,
    DEFAULT_D,
};
use cliquelab::counters::path_multiplicity;
use cliquelab::io::{write_bipartite, write_clique_union, write_graph};

use crate::params::Args;
use crate::record::Record;
use crate::spec::Params;

pub struct Kind {
    pub name: &'static str,
    pub defaults: &'static [(&'static str, &'static str)],
    pub output: &'static str,
}

pub const KINDS: &[Kind] = &[
    Kind {
        name: "random-clique",
        defaults: &[("n", "24"), ("m", "6"), ("u", "10")],
        output: "clique union",
    },
    Kind {
        name: "f-free",
        defaults: &[("F", "C4"), ("n", "30"), ("r", "3"), ("alpha", "0.1")],
        output: "clique union",
    },
    Kind {
        name: "path-bounded",
        defaults: &[
            ("m", "16"),
            ("n", "16"),
            ("ell", "2"),
            ("target", "0"),
            ("strategy", "sweep"),
        ],
        output: "bipartite graph",
    },
    Kind {
        name: "sparse-clique",
        defaults: &[
            ("n", "16"),
            ("r", "3"),
            ("eps", "0"),
            ("ell", "2"),
            ("t", "3"),
            ("c", "1"),
            ("d", "4"),
            ("budget", "0"),
        ],
        output: "graph",
    },
    Kind {
        name: "disjoint-cliques",
        defaults: &[("count", "4"), ("size", "5")],
        output: "graph",
    },
];

pub struct Built {
    pub text: String,
    pub report: Record,
}

pub fn construct(kind: &str, params: &Params, seed: u64) -> Result<Built> {
    let Some(def) = KINDS.iter().find(|k| k.name == kind) else {
        let names: Vec<&str> = KINDS.iter().map(|k| k.name).collect();
        bail!(
            "unknown construction {kind:?} (known: {})",
            names.join(", ")
        );
    };
    let a = Args::new(params, def.defaults);
    a.reject_unknown(&[])?;
    let report = Record::new().with("construction", kind).with("seed", seed);
    Ok(match kind {
        "random-clique" => {
            let s = sample_random_cliques(&RandomCliqueParams::new(
                a.usize("n")?,
                a.usize("m")?,
                a.f64("u")?,
                seed,
            ))?;
            let report = report
                .with("cliques", s.union.len())
                .with("p", s.p)
                .with("saturated", s.saturated)
                .with("edges", s.union.union_graph().edge_count());
            Built {
                text: write_clique_union(&s.union),
                report,
            }
        }
        "f-free" => {
            let f = a.pattern("F")?;
            let (cu, r) = build_f_free_clique_graph(
                a.usize("n")?,
                a.usize("r")?,
                &f.graph,
                a.f64("alpha")?,
                seed,
            )?;
            let report = report
                .with("m", r.m)
                .with("u", r.u)
                .with("initial", r.initial)
                .with("pairs", r.z)
                .with("deleted", r.deleted)
                .with("final", r.final_cliques);
            Built {
                text: write_clique_union(&cu),
                report,
            }
        }
        "path-bounded" => {
            let (m, n, ell) = (a.usize("m")?, a.usize("n")?, a.usize("ell")?);
            let target = match a.usize("target")? {
                0 => m * n,
                t => t,
            };
            let strategy = match a.raw("strategy")? {
                "sweep" => SearchStrategy::Sweep,
                "random" => SearchStrategy::Random { budget: 4 * m * n },
                s => bail!("unknown strategy {s:?} (sweep, random)"),
            };
            let s = search_path_bounded_bipartite(m, n, ell, target, seed, strategy)?;
            let report = report
                .with("edges", s.graph.edge_count())
                .with("target", s.target)
                .with("reached", s.reached_target)
                .with("multiplicity", path_multiplicity(&s.graph, 4)?);
            Built {
                text: write_bipartite(&s.graph),
                report,
            }
        }
        "sparse-clique" => {
            let mut p = Lemma37Params::new(
                a.usize("n")?,
                a.usize("r")?,
                a.rational("eps")?,
                a.usize("ell")?,
                a.usize("t")?,
                seed,
            );
            p.c = a.f64("c").unwrap_or(DEFAULT_C);
            p.d = a.f64("d").unwrap_or(DEFAULT_D);
            p.budget = match a.usize("budget")? {
                0 => None,
                b => Some(b),
            };
            let r = lemma37_construction(&p)?;
            let report = report
                .with("u_size", r.u_size)
                .with("edge_target", r.edge_target)
                .with("search_edges", r.search_edges)
                .with("reached", r.reached_target)
                .with("degree_cap", r.degree_cap)
                .with("pruned_edges", r.pruned_edges)
                .with("majority", r.majority)
                .with("max_degree", r.max_degree)
                .with("multiplicity", r.multiplicity)
                .with("cliques", r.cliques)
                .with("k2t", r.k2t)
                .with("k2t_cap", r.k2t_cap);
            Built {
                text: write_graph(&r.graph),
                report,
            }
        }
        "disjoint-cliques" => {
            let g = disjoint_cliques(a.usize("count")?, a.usize("size")?);
            let report = report.with("n", g.n()).with("edges", g.edge_count());
            Built {
                text: write_graph(&g),
                report,
            }
        }
        _ => unreachable!("kind table and dispatch disagree"),
    })
}
