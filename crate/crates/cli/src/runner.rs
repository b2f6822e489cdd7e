//! Runs experiment specs, summarizes record files and replays records.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use cliquelab::seed::trial_seed;
use cliquelab::verify::achieved_delta;
use rayon::prelude::*;

use crate::experiments::{self, Experiment, StatKind};
use crate::record::Record;
use crate::spec::{ExperimentSpec, Params};

/// Fields that carry no measurement and are ignored by replay.
const TIMING_KEY: &str = "wall_ms";

/// Defaults overlaid with the point's explicit values.
fn effective(exp: &Experiment, point: &Params) -> Params {
    let mut p: Params = exp
        .defaults
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    p.extend(point.iter().map(|(k, v)| (k.clone(), v.clone())));
    p
}

fn header(
    exp: &Experiment,
    point: usize,
    trial: Option<usize>,
    seed: Option<u64>,
    params: &Params,
) -> Record {
    let mut rec = Record::new()
        .with("experiment", exp.name)
        .with("point", point);
    if let Some(t) = trial {
        rec.set("trial", t);
    }
    if let Some(s) = seed {
        rec.set("seed", s);
    }
    for (k, v) in params {
        rec.set(k, v);
    }
    rec
}

fn merge(mut rec: Record, measured: &Record) -> Result<Record> {
    for (k, v) in measured.fields() {
        if rec.get(k).is_some() {
            bail!("measured field {k} collides with a parameter");
        }
        rec.set(k, v);
    }
    Ok(rec)
}

/// Runs one trial and returns its full record. Trial errors are recorded.
pub fn run_trial(
    exp: &Experiment,
    point: usize,
    trial: usize,
    seed: u64,
    params: &Params,
) -> Result<Record> {
    let start = Instant::now();
    let rec = header(exp, point, Some(trial), Some(seed), params);
    let mut rec = match exp.trial(params, seed) {
        Ok(measured) => merge(rec.with("status", "ok"), &measured)?,
        Err(e) => rec.with("status", "error").with("reason", format!("{e:#}")),
    };
    rec.set(
        TIMING_KEY,
        format!("{:.3}", start.elapsed().as_secs_f64() * 1e3),
    );
    Ok(rec)
}

/// Executes every grid point and trial. Records come back in
/// `(point, trial)` order regardless of scheduling.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<Record>> {
    let exp = experiments::find(&spec.experiment)?;
    let points = spec.points();
    let mut jobs = Vec::new();
    let mut skipped = BTreeMap::new();
    for (i, point) in points.iter().enumerate() {
        let params = effective(exp, point);
        match exp.check(&params) {
            Ok(()) => jobs.extend((0..spec.trials).map(|t| (i, t, params.clone()))),
            Err(e) => {
                let rec = header(exp, i, None, None, &params)
                    .with("status", "skipped")
                    .with("reason", format!("{e:#}"));
                skipped.insert(i, rec);
            }
        }
    }
    let done: Vec<Record> = jobs
        .par_iter()
        .map(|(i, t, params)| {
            run_trial(
                exp,
                *i,
                *t,
                trial_seed(spec.seed, *i as u64, *t as u64),
                params,
            )
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(done.len() + skipped.len());
    let mut done = done.into_iter().peekable();
    for i in 0..points.len() {
        if let Some(rec) = skipped.remove(&i) {
            out.push(rec);
        }
        while done
            .peek()
            .is_some_and(|r| r.get("point") == Some(i.to_string().as_str()))
        {
            out.push(done.next().expect("peeked"));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StatSummary {
    pub key: String,
    pub kind: StatKind,
    pub samples: usize,
    pub value: f64,
    /// Half-width of the 95% interval for means.
    pub half_width: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointSummary {
    pub point: usize,
    pub params: String,
    pub trials: usize,
    pub errors: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: Option<String>,
    pub stat: Option<StatSummary>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub experiment: String,
    pub points: Vec<PointSummary>,
}

impl Summary {
    pub fn failures(&self) -> usize {
        self.points.iter().map(|p| p.failed).sum()
    }

    pub fn render(&self) -> String {
        let mut out = format!("experiment {}\n", self.experiment);
        let _ = writeln!(
            out,
            "{:>5}  {:>6}  {:>6}  {:>6}  {:>9}  {:<28}  params",
            "point", "trials", "errors", "failed", "pass_rate", "statistic"
        );
        for p in &self.points {
            if let Some(reason) = &p.skipped {
                let _ = writeln!(out, "{:>5}  skipped: {reason}  [{}]", p.point, p.params);
                continue;
            }
            let judged = p.passed + p.failed;
            let rate = if judged > 0 {
                format!("{:.1}%", 100.0 * p.passed as f64 / judged as f64)
            } else {
                "-".into()
            };
            let stat = match &p.stat {
                Some(s) => match s.half_width {
                    Some(h) => format!("{} {:?} {:.4} +- {:.4}", s.key, s.kind, s.value, h),
                    None => format!("{} {:?} {:.4}", s.key, s.kind, s.value),
                },
                None => "-".into(),
            };
            let _ = writeln!(
                out,
                "{:>5}  {:>6}  {:>6}  {:>6}  {:>9}  {:<28}  {}",
                p.point, p.trials, p.errors, p.failed, rate, stat, p.params
            );
        }
        out
    }
}

fn aggregate(key: &str, kind: StatKind, xs: &[f64]) -> StatSummary {
    let n = xs.len();
    let (value, half_width) = match kind {
        StatKind::Mean => {
            let mean = xs.iter().sum::<f64>() / n as f64;
            let var = if n > 1 {
                xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
            } else {
                0.0
            };
            (mean, Some(1.96 * (var / n as f64).sqrt()))
        }
        StatKind::Delta => (achieved_delta(xs), None),
        StatKind::Max => (xs.iter().copied().fold(f64::NEG_INFINITY, f64::max), None),
    };
    StatSummary {
        key: key.to_string(),
        kind,
        samples: n,
        value,
        half_width,
    }
}

/// Parameter fields of a record: everything between the header and
/// `status`.
fn record_params(rec: &Record) -> Params {
    rec.fields()
        .iter()
        .skip_while(|(k, _)| matches!(k.as_str(), "experiment" | "point" | "trial" | "seed"))
        .take_while(|(k, _)| k != "status")
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect()
}

/// Recomputes the per-point summary from records alone.
pub fn summarize(records: &[Record]) -> Result<Summary> {
    let first = records.first().context("no records")?;
    let name = first
        .get("experiment")
        .context("record without experiment")?;
    let exp = experiments::find(name)?;
    let mut points: BTreeMap<usize, (PointSummary, Vec<f64>)> = BTreeMap::new();
    for rec in records {
        if rec.get("experiment") != Some(name) {
            bail!(
                "records mix experiments {name} and {:?}",
                rec.get("experiment")
            );
        }
        let point: usize = rec.get("point").context("record without point")?.parse()?;
        let params: Vec<String> = record_params(rec)
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let entry = points.entry(point).or_insert_with(|| {
            let summary = PointSummary {
                point,
                params: params.join(" "),
                trials: 0,
                errors: 0,
                passed: 0,
                failed: 0,
                skipped: None,
                stat: None,
            };
            (summary, Vec::new())
        });
        match rec.get("status") {
            Some("skipped") => entry.0.skipped = Some(rec.get("reason").unwrap_or("").to_string()),
            Some("error") => {
                entry.0.trials += 1;
                entry.0.errors += 1;
            }
            Some("ok") => {
                entry.0.trials += 1;
                match rec.get("pass") {
                    Some("true") => entry.0.passed += 1,
                    Some("false") => entry.0.failed += 1,
                    _ => {}
                }
                if let Some((key, _)) = exp.stat {
                    if let Some(x) = rec.get_f64(key).filter(|x| x.is_finite()) {
                        entry.1.push(x);
                    }
                }
            }
            other => bail!("bad status {other:?}"),
        }
    }
    let points = points
        .into_values()
        .map(|(mut p, xs)| {
            if let (Some((key, kind)), false) = (exp.stat, xs.is_empty()) {
                p.stat = Some(aggregate(key, kind, &xs));
            }
            p
        })
        .collect();
    Ok(Summary {
        experiment: name.to_string(),
        points,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayReport {
    pub replayed: usize,
    pub mismatches: Vec<String>,
}

/// Re-executes each trial record from its parameters and seed and compares
/// every field except the timing.
pub fn replay(records: &[Record]) -> Result<ReplayReport> {
    let mismatches: Vec<Option<String>> = records
        .par_iter()
        .filter(|r| r.get("status") != Some("skipped"))
        .map(|rec| -> Result<Option<String>> {
            let exp =
                experiments::find(rec.get("experiment").context("record without experiment")?)?;
            let point: usize = rec.get("point").context("no point")?.parse()?;
            let trial: usize = rec.get("trial").context("no trial")?.parse()?;
            let seed: u64 = rec.get("seed").context("no seed")?.parse()?;
            let again = run_trial(exp, point, trial, seed, &record_params(rec))?;
            let strip = |r: &Record| -> Vec<(String, String)> {
                r.fields()
                    .iter()
                    .filter(|(k, _)| k != TIMING_KEY)
                    .cloned()
                    .collect()
            };
            Ok((strip(rec) != strip(&again))
                .then(|| format!("point {point} trial {trial}: {rec} vs {again}")))
        })
        .collect::<Result<_>>()?;
    let replayed = mismatches.len();
    Ok(ReplayReport {
        replayed,
        mismatches: mismatches.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_interval() {
        let s = aggregate("x", StatKind::Mean, &[1.0, 2.0, 3.0]);
        assert_eq!(s.value, 2.0);
        assert!((s.half_width.unwrap() - 1.96 / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(aggregate("x", StatKind::Max, &[1.0, 5.0]).value, 5.0);
    }

    #[test]
    fn skipped_points_recorded() {
        let spec = ExperimentSpec::new("lemma31_clique_count", 2, 1).axis("m", &["2", "6"]);
        let recs = run_experiment(&spec).unwrap();
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[0].get("status"), Some("skipped"));
        assert!(recs[0].get("reason").unwrap().contains("2r"));
        let summary = summarize(&recs).unwrap();
        assert!(summary.points[0].skipped.is_some());
        assert_eq!(summary.points[1].trials, 2);
    }
}
