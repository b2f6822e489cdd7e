//! Command-line definitions and dispatch.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args as ClapArgs, Parser, Subcommand, ValueEnum};
use cliquelab::constructions::rng_from_seed;
use cliquelab::counters::count_pattern;
use cliquelab::io::{load_clique_union, load_graph};
use cliquelab::named_graph;
use cliquelab::seed::DEFAULT_SEED;
use cliquelab::verify::{random_graph, run_check, Scale};

use crate::construct::{construct, KINDS};
use crate::experiments::EXPERIMENTS;
use crate::formulas::{evaluate, FORMULAS};
use crate::plot::emit_plot_data;
use crate::record::{parse_records, Record};
use crate::runner::{replay, run_experiment, summarize};
use crate::spec::{parse_seed, ExperimentSpec, Params};

/// Environment variable overriding every master seed.
pub const SEED_ENV: &str = "LAB_SEED";

#[derive(Debug, Parser)]
#[command(name = "lab", version, about = "Clique supersaturation experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count copies of a pattern in a graph.
    Count(CountArgs),
    /// Build a graph and write it in the edge-list formats.
    Construct(ConstructArgs),
    /// Evaluate a closed-form bound.
    Bounds(BoundsArgs),
    /// Run, summarize, replay or plot experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, ClapArgs)]
pub struct CountArgs {
    /// Pattern spec such as K3, K2,3, C5, P4, T:0,0,1 or E:4:0-1,1-2.
    #[arg(long, short)]
    pub pattern: String,
    /// Graph file (header `n e`, then edges).
    #[arg(long, conflicts_with_all = ["clique_union", "random"])]
    pub graph: Option<PathBuf>,
    /// Clique-union file; counts in the union graph.
    #[arg(long, conflicts_with = "random")]
    pub clique_union: Option<PathBuf>,
    /// G(n,p) sample given as `n,p`.
    #[arg(long)]
    pub random: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
}

#[derive(Debug, ClapArgs)]
pub struct ConstructArgs {
    /// Construction name; `--list` shows them.
    pub kind: Option<String>,
    /// Parameters as key=value.
    pub params: Vec<String>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<String>,
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, ClapArgs)]
pub struct BoundsArgs {
    /// Formula name; `--list` shows them.
    pub formula: Option<String>,
    /// Parameters as key=value.
    pub params: Vec<String>,
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Subcommand)]
pub enum ExperimentCommand {
    /// Execute a spec file and write its records.
    Run {
        spec: PathBuf,
        /// Overrides the output path given in the experiment file.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Recompute the summary table from a record file.
    Summary { records: PathBuf },
    /// Re-execute every record and compare the measurements.
    Replay { records: PathBuf },
    /// Emit a plot table, script and notes from a record file.
    Plot {
        records: PathBuf,
        #[arg(long)]
        x: String,
        /// Comma-separated y keys.
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<String>,
        /// Output prefix (default: the record path without extension).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// List experiments and their default parameters.
    List,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    Smoke,
    Desk,
}

#[derive(Debug, ClapArgs)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "smoke")]
    pub scale: ScaleArg,
    /// Also fail (exit 2) when a statistical check misses.
    #[arg(long)]
    pub strict: bool,
    /// Run only these checks (1 to 11).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u32>,
    #[arg(long)]
    pub seed: Option<String>,
}

/// Resolves the master seed: environment first, then the flag, then the
/// fallback.
pub fn master_seed(env: Option<&str>, flag: Option<&str>, fallback: u64) -> Result<u64> {
    match (env, flag) {
        (Some(e), _) => parse_seed(e).with_context(|| format!("{SEED_ENV} is not a seed")),
        (None, Some(f)) => parse_seed(f),
        (None, None) => Ok(fallback),
    }
}

fn key_values(items: &[String]) -> Result<Params> {
    let mut params = Params::new();
    for item in items {
        let Some((k, v)) = item.split_once('=') else {
            bail!("expected key=value, got {item:?}");
        };
        if params
            .insert(k.trim().to_string(), v.trim().to_string())
            .is_some()
        {
            bail!("parameter {k} given twice");
        }
    }
    Ok(params)
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Runs a command, writing human output to `out`; returns the exit code.
pub fn run(cli: Cli, env_seed: Option<&str>, out: &mut dyn std::io::Write) -> Result<i32> {
    match cli.command {
        Command::Count(a) => {
            let pattern = named_graph(&a.pattern)?;
            let g = match (&a.graph, &a.clique_union, &a.random) {
                (Some(p), _, _) => load_graph(p)?,
                (_, Some(p), _) => load_clique_union(p)?.union_graph(),
                (_, _, Some(spec)) => {
                    let (n, p) = spec.split_once(',').context("--random takes n,p")?;
                    let n: usize = n.trim().parse().context("bad n")?;
                    let p: f64 = p.trim().parse().context("bad p")?;
                    if !(0.0..=1.0).contains(&p) {
                        bail!("p must lie in [0, 1]");
                    }
                    let seed = master_seed(env_seed, a.seed.as_deref(), DEFAULT_SEED)?;
                    random_graph(&mut rng_from_seed(seed), n, p)
                }
                _ => bail!("give one of --graph, --clique-union or --random"),
            };
            let report = count_pattern(&pattern, &g)?;
            let rec = Record::new()
                .with("pattern", &report.pattern)
                .with("n", g.n())
                .with("edges", g.edge_count())
                .with("count", report.count)
                .with("elapsed_s", format!("{:.6}", report.elapsed));
            writeln!(out, "{rec}")?;
        }
        Command::Construct(a) => {
            if a.list {
                for k in KINDS {
                    let d: Vec<String> =
                        k.defaults.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    writeln!(out, "{:<17} -> {:<16} {}", k.name, k.output, d.join(" "))?;
                }
                return Ok(0);
            }
            let kind = a.kind.context("construction name required (see --list)")?;
            let seed = master_seed(env_seed, a.seed.as_deref(), DEFAULT_SEED)?;
            let built = construct(&kind, &key_values(&a.params)?, seed)?;
            match &a.out {
                Some(path) => {
                    fs::write(path, &built.text)
                        .with_context(|| format!("writing {}", path.display()))?;
                    writeln!(out, "{}", built.report.with("file", path.display()))?;
                }
                None => {
                    writeln!(out, "# {}", built.report)?;
                    write!(out, "{}", built.text)?;
                }
            }
        }
        Command::Bounds(a) => {
            if a.list {
                for f in FORMULAS {
                    let keys: Vec<String> = f
                        .keys
                        .iter()
                        .map(|(k, v)| {
                            if v.is_empty() {
                                k.to_string()
                            } else {
                                format!("{k}={v}")
                            }
                        })
                        .collect();
                    writeln!(out, "{:<9} {:<40} {}", f.name, keys.join(" "), f.summary)?;
                }
                return Ok(0);
            }
            let formula = a.formula.context("formula name required (see --list)")?;
            let rec = evaluate(&formula, &key_values(&a.params)?)?;
            writeln!(
                out,
                "{}",
                Record::new().with("formula", &formula).to_string() + " " + &rec.to_string()
            )?;
        }
        Command::Experiment(cmd) => return experiment(cmd, env_seed, out),
        Command::Verify(a) => {
            let seed = master_seed(env_seed, a.seed.as_deref(), DEFAULT_SEED)?;
            let scale = match a.scale {
                ScaleArg::Smoke => Scale::Smoke,
                ScaleArg::Desk => Scale::Desk,
            };
            let ids: Vec<u32> = if a.only.is_empty() {
                (1..=11).collect()
            } else {
                a.only.clone()
            };
            let (mut hard, mut soft) = (false, false);
            for id in ids {
                let r = run_check(id, scale, seed)?;
                writeln!(
                    out,
                    "{:>2} {} {:<40} cases={} violations={} time={:.2}s  {}",
                    r.id,
                    r.status(),
                    r.name,
                    r.cases,
                    r.violations,
                    r.elapsed,
                    r.detail
                )?;
                for w in &r.witnesses {
                    writeln!(out, "     witness: {w}")?;
                }
                hard |= !r.hard_passed();
                soft |= r.statistical == Some(false);
            }
            if hard {
                return Ok(1);
            }
            if soft && a.strict {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn experiment(
    cmd: ExperimentCommand,
    env_seed: Option<&str>,
    out: &mut dyn std::io::Write,
) -> Result<i32> {
    match cmd {
        ExperimentCommand::Run {
            spec,
            output,
            threads,
        } => {
            let mut parsed = ExperimentSpec::parse(&read(&spec)?, DEFAULT_SEED)?;
            if let Some(e) = env_seed {
                parsed.seed = parse_seed(e).with_context(|| format!("{SEED_ENV} is not a seed"))?;
            }
            let target = output
                .or(parsed.output.clone())
                .unwrap_or_else(|| spec.with_extension("records"));
            let records = match threads {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()?
                    .install(|| run_experiment(&parsed)),
                None => run_experiment(&parsed),
            }?;
            let mut file = fs::File::create(&target)
                .with_context(|| format!("creating {}", target.display()))?;
            for r in &records {
                writeln!(file, "{r}")?;
            }
            let summary = summarize(&records)?;
            write!(out, "{}", summary.render())?;
            writeln!(
                out,
                "seed {} ({} records) -> {}",
                parsed.seed,
                records.len(),
                target.display()
            )?;
            if summary.failures() > 0 {
                writeln!(out, "{} theorem-backed failures", summary.failures())?;
                return Ok(1);
            }
        }
        ExperimentCommand::Summary { records } => {
            write!(
                out,
                "{}",
                summarize(&parse_records(&read(&records)?)?)?.render()
            )?;
        }
        ExperimentCommand::Replay { records } => {
            let report = replay(&parse_records(&read(&records)?)?)?;
            for m in &report.mismatches {
                writeln!(out, "mismatch: {m}")?;
            }
            writeln!(
                out,
                "replayed {} records, {} mismatches",
                report.replayed,
                report.mismatches.len()
            )?;
            if !report.mismatches.is_empty() {
                return Ok(1);
            }
        }
        ExperimentCommand::Plot {
            records,
            x,
            y,
            out: prefix,
        } => {
            let prefix = prefix.unwrap_or_else(|| records.with_extension(""));
            let report = emit_plot_data(&parse_records(&read(&records)?)?, &x, &y, &prefix)?;
            writeln!(
                out,
                "{} rows ({} skipped for missing values) -> {}, {}, {}",
                report.rows,
                report.skipped,
                report.table.display(),
                report.script.display(),
                report.notes.display()
            )?;
        }
        ExperimentCommand::List => {
            for e in EXPERIMENTS {
                let d: Vec<String> = e.defaults.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(
                    out,
                    "{:<22} {}\n{:<22} defaults: {}",
                    e.name,
                    e.about,
                    "",
                    d.join(" ")
                )?;
            }
        }
    }
    Ok(0)
}
