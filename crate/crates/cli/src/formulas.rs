//! Bound evaluation by formula name, shared by `lab bounds` and the
//! `bounds_grid` experiment.

use anyhow::{bail, Result};
use cliquelab::bounds::{
    beta_exponent, conj_rhs, eskst_bound, gnp_baseline, is_2_balanced, kruskal_katona_bound,
    lemma41_bound, prop15_bound, thm11_lower, thm12_bound, thm14_exponent, BoundValue, Conjecture,
};

use crate::params::Args;
use crate::record::Record;
use crate::spec::Params;

pub struct Formula {
    pub name: &'static str,
    pub keys: &'static [(&'static str, &'static str)],
    pub summary: &'static str,
}

pub const FORMULAS: &[Formula] = &[
    Formula {
        name: "eskst",
        keys: &[("k", ""), ("n", ""), ("s", ""), ("t", "")],
        summary: "k^{st} n^s from e(G) = k n^{2-1/s}",
    },
    Formula {
        name: "gnp",
        keys: &[("N", ""), ("n", ""), ("r", ""), ("F", "")],
        summary: "copies of F in G(n,p) tuned to N cliques",
    },
    Formula {
        name: "thm12",
        keys: &[("N", ""), ("n", ""), ("r", ""), ("F", "")],
        summary: "2-balanced supersaturation lower bound",
    },
    Formula {
        name: "thm11",
        keys: &[("k", ""), ("n", ""), ("r", "3"), ("t", "")],
        summary: "K_{2,t} lower bound, two branches",
    },
    Formula {
        name: "lemma41",
        keys: &[
            ("u", ""),
            ("m", ""),
            ("n", ""),
            ("r", ""),
            ("s", ""),
            ("t", ""),
        ],
        summary: "K_{s,t} count in a union of u cliques of size m",
    },
    Formula {
        name: "prop15",
        keys: &[("k", ""), ("n", ""), ("T", ""), ("r", "")],
        summary: "tree count k^{(v-1)/(r-1)} n",
    },
    Formula {
        name: "thm14",
        keys: &[("F", ""), ("r", "")],
        summary: "exponent of the pattern-free clique construction",
    },
    Formula {
        name: "beta",
        keys: &[("F", ""), ("r", "")],
        summary: "random clique exponent beta_F",
    },
    Formula {
        name: "balanced",
        keys: &[("F", "")],
        summary: "2-balancedness with witness",
    },
    Formula {
        name: "kk",
        keys: &[("N", ""), ("r", ""), ("s", "")],
        summary: "Lovasz form of the shadow bound",
    },
    Formula {
        name: "conj",
        keys: &[
            ("name", ""),
            ("k", ""),
            ("n", ""),
            ("r", "3"),
            ("s", "2"),
            ("t", "2"),
            ("eps", "0"),
        ],
        summary: "conjectured right-hand sides (k2t, kst, k3t)",
    },
];

fn push_bound(rec: &mut Record, b: &BoundValue) {
    rec.set("value", b.value());
    rec.set("ln_value", b.ln_value);
    for (var, e) in &b.exponents {
        rec.set(&format!("exp_{var}"), e);
    }
    rec.set("heuristic", b.heuristic);
    rec.set("formula_text", &b.formula);
    if !b.note.is_empty() {
        rec.set("note", &b.note);
    }
}

/// Evaluates `formula` at `params`, returning the measured fields.
pub fn evaluate(formula: &str, params: &Params) -> Result<Record> {
    let Some(def) = FORMULAS.iter().find(|f| f.name == formula) else {
        let names: Vec<&str> = FORMULAS.iter().map(|f| f.name).collect();
        bail!("unknown formula {formula:?} (known: {})", names.join(", "));
    };
    let defaults: Vec<(&str, &str)> = def
        .keys
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .copied()
        .collect();
    let a = Args::new(params, &defaults);
    let known: Vec<&str> = def.keys.iter().map(|(k, _)| *k).collect();
    a.reject_unknown(&known)?;
    let mut rec = Record::new();
    match formula {
        "eskst" => push_bound(
            &mut rec,
            &eskst_bound(a.f64("k")?, a.f64("n")?, a.usize("s")?, a.usize("t")?)?,
        ),
        "gnp" => push_bound(
            &mut rec,
            &gnp_baseline(
                a.f64("N")?,
                a.f64("n")?,
                a.usize("r")?,
                &a.pattern("F")?.graph,
            )?,
        ),
        "thm12" => push_bound(
            &mut rec,
            &thm12_bound(
                a.f64("N")?,
                a.f64("n")?,
                a.usize("r")?,
                &a.pattern("F")?.graph,
            )?,
        ),
        "thm11" => {
            let b = thm11_lower(a.f64("k")?, a.f64("n")?, a.usize("r")?, a.usize("t")?)?;
            rec.set("value", b.ln_value.exp());
            rec.set("ln_value", b.ln_value);
            rec.set("branch", format!("{:?}", b.branch).to_lowercase());
            rec.set("sparse", &b.sparse);
            rec.set("dense", &b.dense);
            rec.set("ln_sparse", b.ln_sparse);
            rec.set("ln_dense", b.ln_dense);
            rec.set("crossover_k", b.ln_crossover_k.exp());
            rec.set("crossover_gap", b.crossover_gap);
        }
        "lemma41" => {
            let b = lemma41_bound(
                a.f64("u")?,
                a.f64("m")?,
                a.f64("n")?,
                a.usize("r")?,
                a.usize("s")?,
                a.usize("t")?,
            )?;
            push_bound(&mut rec, &b.bound);
            rec.set("k", b.k);
            rec.set("r_limit", b.r_limit);
        }
        "prop15" => push_bound(
            &mut rec,
            &prop15_bound(
                a.f64("k")?,
                a.f64("n")?,
                &a.pattern("T")?.graph,
                a.usize("r")?,
            )?,
        ),
        "thm14" => {
            let e = thm14_exponent(&a.pattern("F")?.graph, a.usize("r")?)?;
            rec.set("exponent", e);
            rec.set("exponent_f64", *e.numer() as f64 / *e.denom() as f64);
        }
        "beta" => {
            let e = beta_exponent(&a.pattern("F")?.graph, a.usize("r")?)?;
            rec.set("beta", e);
            rec.set("beta_f64", *e.numer() as f64 / *e.denom() as f64);
        }
        "balanced" => {
            let b = is_2_balanced(&a.pattern("F")?.graph)?;
            rec.set("balanced", b.balanced);
            if let Some(d) = b.density {
                rec.set("density", d);
            }
            if let (Some(w), Some(d)) = (b.witness, b.witness_density) {
                let list: Vec<String> = w.iter().map(usize::to_string).collect();
                rec.set("witness", list.join(","));
                rec.set("witness_density", d);
            }
        }
        "kk" => rec.set(
            "value",
            kruskal_katona_bound(a.u128("N")?, a.usize("r")?, a.usize("s")?)?,
        ),
        "conj" => {
            let which = Conjecture::from_name(a.raw("name")?)?;
            let b = conj_rhs(
                which,
                a.f64("k")?,
                a.f64("n")?,
                a.usize("r")?,
                a.usize("s")?,
                a.usize("t")?,
                a.f64("eps")?,
            )?;
            push_bound(&mut rec, &b);
        }
        _ => unreachable!("formula table and dispatch disagree"),
    }
    Ok(rec)
}
