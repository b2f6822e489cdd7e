//! Turns record files into a whitespace-delimited table plus a plotting
//! script.
//!
//! For an output prefix `out`, three files are written:
//! `out.dat` (header line starting with `#`, then one row per record),
//! `out.gp` (a gnuplot script drawing every y column against x) and
//! `out.txt` (column meanings and equivalent commands for other tools).

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use crate::record::Record;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotReport {
    pub rows: usize,
    /// Records lacking x or any y value.
    pub skipped: usize,
    pub table: PathBuf,
    pub script: PathBuf,
    pub notes: PathBuf,
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Builds the table body; returns `(text, rows, skipped)`.
pub fn table(records: &[Record], x: &str, ys: &[String]) -> Result<(String, usize, usize)> {
    if records.is_empty() {
        bail!("record file is empty");
    }
    if ys.is_empty() {
        bail!("need at least one y key");
    }
    let available: BTreeSet<&str> = records.iter().flat_map(|r| r.keys()).collect();
    let missing: Vec<&str> = std::iter::once(x)
        .chain(ys.iter().map(String::as_str))
        .filter(|k| !available.contains(k))
        .collect();
    if !missing.is_empty() {
        let avail: Vec<&str> = available.into_iter().collect();
        bail!(
            "keys {} not in any record; available: {}",
            missing.join(", "),
            avail.join(", ")
        );
    }
    let mut text = format!("# {x} {}\n", ys.join(" "));
    let (mut rows, mut skipped) = (0, 0);
    for rec in records {
        let values: Option<Vec<f64>> = std::iter::once(x)
            .chain(ys.iter().map(String::as_str))
            .map(|k| rec.get_f64(k))
            .collect();
        match values {
            Some(v) => {
                let cells: Vec<String> = v.iter().map(f64::to_string).collect();
                text.push_str(&cells.join(" "));
                text.push('\n');
                rows += 1;
            }
            None => skipped += 1,
        }
    }
    Ok((text, rows, skipped))
}

pub fn emit_plot_data(
    records: &[Record],
    x: &str,
    ys: &[String],
    prefix: &Path,
) -> Result<PlotReport> {
    let (body, rows, skipped) = table(records, x, ys)?;
    let (table, script, notes) = (
        with_ext(prefix, "dat"),
        with_ext(prefix, "gp"),
        with_ext(prefix, "txt"),
    );
    let data_name = table
        .file_name()
        .context("output prefix has no file name")?
        .to_string_lossy()
        .into_owned();
    fs::write(&table, body).with_context(|| format!("writing {}", table.display()))?;

    let mut gp = String::new();
    let _ = writeln!(gp, "set xlabel '{x}'");
    let _ = writeln!(gp, "set key left top");
    let _ = writeln!(gp, "set terminal pngcairo size 900,600");
    let _ = writeln!(
        gp,
        "set output '{}.png'",
        data_name.trim_end_matches(".dat")
    );
    let series: Vec<String> = ys
        .iter()
        .enumerate()
        .map(|(i, y)| format!("'{data_name}' using 1:{} with points title '{y}'", i + 2))
        .collect();
    let _ = writeln!(gp, "plot {}", series.join(", \\\n     "));
    fs::write(&script, gp).with_context(|| format!("writing {}", script.display()))?;

    let mut txt = format!("table: {data_name}\ncolumns:\n  1: {x}\n");
    for (i, y) in ys.iter().enumerate() {
        let _ = writeln!(txt, "  {}: {y}", i + 2);
    }
    let _ = writeln!(
        txt,
        "rows: {rows} (records skipped for missing values: {skipped})"
    );
    let _ = writeln!(
        txt,
        "\nThe table is whitespace-delimited; lines starting with # are headers."
    );
    let _ = writeln!(
        txt,
        "gnuplot: gnuplot {}",
        script
            .file_name()
            .map(|s| s.to_string_lossy())
            .unwrap_or_default()
    );
    let _ = writeln!(
        txt,
        "any tool: read {data_name} skipping '#' lines, plot column 1 against columns 2..{}",
        ys.len() + 1
    );
    fs::write(&notes, txt).with_context(|| format!("writing {}", notes.display()))?;
    Ok(PlotReport {
        rows,
        skipped,
        table,
        script,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn recs(lines: &[&str]) -> Vec<Record> {
        lines.iter().map(|l| Record::parse(l).unwrap()).collect()
    }

    #[test]
    fn two_series() {
        let r = recs(&["k=1 count=3 lower=2", "k=2 count=9 lower=4"]);
        let (t, rows, skipped) = table(&r, "k", &["count".into(), "lower".into()]).unwrap();
        assert_eq!(t, "# k count lower\n1 3 2\n2 9 4\n");
        assert_eq!((rows, skipped), (2, 0));
    }

    #[test]
    fn partial_rows_skipped() {
        let r = recs(&["k=1 count=3", "k=2 status=error"]);
        let (_, rows, skipped) = table(&r, "k", &["count".into()]).unwrap();
        assert_eq!((rows, skipped), (1, 1));
    }

    #[test]
    fn errors() {
        assert!(table(&[], "k", &["y".into()]).is_err());
        let err = table(&recs(&["k=1 a=2"]), "k", &["b".into()])
            .unwrap_err()
            .to_string();
        assert!(err.contains("available: a, k"), "{err}");
    }
}
