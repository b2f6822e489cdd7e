//! Experiment spec files.
//!
//! ```text
//! # comment
//! experiment = lemma33_Z_dominance
//! trials = 200
//! seed = 12345          # optional; LAB_SEED overrides it
//! output = z.records    # optional
//! F = C4, "K2,3", K3    # grid keys: comma-separated lists
//! n = 8, 10, 12
//! ```
//!
//! Every key other than `experiment`, `trials`, `seed` and `output` is a
//! grid axis. Items containing commas are written in double quotes. The
//! grid is the Cartesian product of the axes, with the last axis varying
//! fastest; axes appear in file order.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};

pub type Params = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSpec {
    pub experiment: String,
    pub axes: Vec<(String, Vec<String>)>,
    pub trials: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn new(experiment: &str, trials: usize, seed: u64) -> Self {
        ExperimentSpec {
            experiment: experiment.to_string(),
            axes: Vec::new(),
            trials,
            seed,
            output: None,
        }
    }

    pub fn axis(mut self, key: &str, values: &[&str]) -> Self {
        self.axes.push((
            key.to_string(),
            values.iter().map(|s| s.to_string()).collect(),
        ));
        self
    }

    /// Grid points in order.
    pub fn points(&self) -> Vec<Params> {
        let mut points = vec![Params::new()];
        for (key, values) in &self.axes {
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut q = p.clone();
                        q.insert(key.clone(), v.clone());
                        q
                    })
                })
                .collect();
        }
        points
    }

    pub fn parse(text: &str, default_seed: u64) -> Result<Self> {
        let mut experiment = None;
        let mut trials = 1;
        let mut seed = default_seed;
        let mut output = None;
        let mut axes: Vec<(String, Vec<String>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let ctx = || format!("spec line {}: {raw:?}", i + 1);
            let Some((key, value)) = line.split_once('=') else {
                bail!("{}: expected key = value", ctx());
            };
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                bail!("{}: bad key", ctx());
            }
            match key {
                "experiment" => experiment = Some(value.to_string()),
                "trials" => trials = value.parse().with_context(ctx)?,
                "seed" => seed = parse_seed(value).with_context(ctx)?,
                "output" => output = Some(PathBuf::from(value)),
                _ => {
                    if axes.iter().any(|(k, _)| k == key) {
                        bail!("{}: axis {key} given twice", ctx());
                    }
                    axes.push((key.to_string(), split_list(value).with_context(ctx)?));
                }
            }
        }
        let experiment = experiment.context("spec has no experiment line")?;
        if trials == 0 {
            bail!("trials must be at least 1");
        }
        Ok(ExperimentSpec {
            experiment,
            axes,
            trials,
            seed,
            output,
        })
    }
}

/// Accepts decimal or `0x` hexadecimal.
pub fn parse_seed(text: &str) -> Result<u64> {
    let t = text.trim().replace('_', "");
    let parsed = match t.strip_prefix("0x") {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.with_context(|| format!("bad seed {text:?}"))
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

fn split_list(value: &str) -> Result<Vec<String>> {
    let mut items = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    for c in value.chars() {
        match c {
            '"' => quoted = !quoted,
            ',' if !quoted => items.push(std::mem::take(&mut current)),
            c => current.push(c),
        }
    }
    if quoted {
        bail!("unterminated quote");
    }
    items.push(current);
    let items: Vec<String> = items.into_iter().map(|s| s.trim().to_string()).collect();
    if items.iter().any(String::is_empty) {
        bail!("empty list item");
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grid() {
        let spec = ExperimentSpec::parse(
            "# demo\nexperiment = lemma33_Z_dominance\ntrials = 5\nF = C4, \"K2,3\" # two\nn = 8,10\n",
            7,
        )
        .unwrap();
        assert_eq!(spec.seed, 7);
        assert_eq!(spec.trials, 5);
        let points = spec.points();
        assert_eq!(points.len(), 4);
        assert_eq!(points[1]["F"], "C4");
        assert_eq!(points[1]["n"], "10");
        assert_eq!(points[2]["F"], "K2,3");
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(ExperimentSpec::parse("trials = 3\n", 0).is_err());
        assert!(ExperimentSpec::parse("experiment = x\ntrials = 0\n", 0).is_err());
        assert!(ExperimentSpec::parse("experiment = x\nn = 1,,2\n", 0).is_err());
        assert!(ExperimentSpec::parse("experiment = x\nF = \"K2,3\n", 0).is_err());
        assert!(ExperimentSpec::parse("experiment = x\nn = 1\nn = 2\n", 0).is_err());
    }

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("0xff").unwrap(), 255);
        assert_eq!(parse_seed("1_000").unwrap(), 1000);
        assert!(parse_seed("x").is_err());
    }
}
