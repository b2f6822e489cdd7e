use std::fs;

use clap::Parser;
use cliquelab_cli::cli::{run, Cli};
use cliquelab_cli::record::{parse_records, Record};
use cliquelab_cli::runner::{replay, run_experiment, summarize};
use cliquelab_cli::spec::ExperimentSpec;

fn lab(args: &[&str], env_seed: Option<&str>) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("lab").chain(args.iter().copied()))
        .expect("arguments parse");
    let mut out = Vec::new();
    let code = run(cli, env_seed, &mut out).expect("command runs");
    (code, String::from_utf8(out).unwrap())
}

fn strip_timing(records: &[Record]) -> Vec<Vec<(String, String)>> {
    records
        .iter()
        .map(|r| {
            r.fields()
                .iter()
                .filter(|(k, _)| k != "wall_ms")
                .cloned()
                .collect()
        })
        .collect()
}

#[test]
fn z_dominance_always_passes() {
    let spec = ExperimentSpec::new("lemma33_Z_dominance", 200, 11)
        .axis("F", &["C4"])
        .axis("m", &["3"]);
    let records = run_experiment(&spec).unwrap();
    let summary = summarize(&records).unwrap();
    let p = &summary.points[0];
    assert_eq!((p.trials, p.passed, p.failed, p.errors), (200, 200, 0, 0));
}

#[test]
fn clique_count_delta_reported() {
    let spec = ExperimentSpec::new("lemma31_clique_count", 2000, 3);
    let summary = summarize(&run_experiment(&spec).unwrap()).unwrap();
    let stat = summary.points[0].stat.as_ref().unwrap();
    assert!(stat.value >= 1e-3, "{stat:?}");
}

#[test]
fn records_independent_of_thread_count_and_replayable() {
    let spec = ExperimentSpec::new("thm14_deletion", 6, 99).axis("n", &["20", "30"]);
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| run_experiment(&spec))
        .unwrap();
    let many = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| run_experiment(&spec))
        .unwrap();
    assert_eq!(strip_timing(&one), strip_timing(&many));
    let report = replay(&one).unwrap();
    assert_eq!(report.replayed, 12);
    assert!(report.mismatches.is_empty(), "{:?}", report.mismatches);
}

#[test]
fn tampered_record_detected_by_replay() {
    let spec = ExperimentSpec::new("kruskal_katona", 2, 5);
    let mut records = run_experiment(&spec).unwrap();
    let shadow: u64 = records[0].get("shadow").unwrap().parse().unwrap();
    records[0].set("shadow", shadow + 1);
    assert_eq!(replay(&records).unwrap().mismatches.len(), 1);
}

#[test]
fn summary_recounts_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("k.spec");
    let out = dir.path().join("k.records");
    fs::write(
        &spec_path,
        "experiment = kruskal_katona\ntrials = 15\nr = 2, 3, 30\np = 0.2, 0.6\n",
    )
    .unwrap();
    let (code, text) = lab(
        &[
            "experiment",
            "run",
            spec_path.to_str().unwrap(),
            "-o",
            out.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code, 0, "{text}");
    let records = parse_records(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(records.len(), 4 * 15 + 2);
    let summary = summarize(&records).unwrap();
    assert!(text.starts_with(&summary.render()));
    let skipped = summary
        .points
        .iter()
        .filter(|p| p.skipped.is_some())
        .count();
    assert_eq!(skipped, 2);
    let passed: usize = summary.points.iter().map(|p| p.passed).sum();
    let recount = records
        .iter()
        .filter(|r| r.get("pass") == Some("true"))
        .count();
    assert_eq!(passed, recount);
    assert_eq!(passed, 60);
}

#[test]
fn env_seed_overrides_spec_seed() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("s.spec");
    fs::write(
        &spec_path,
        "experiment = lemma31_clique_count\ntrials = 2\nseed = 1\n",
    )
    .unwrap();
    let out = dir.path().join("s.records");
    let args = [
        "experiment",
        "run",
        spec_path.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ];
    let (_, text) = lab(&args, Some("0x2a"));
    assert!(text.contains("seed 42 "), "{text}");
    let (_, text) = lab(&args, None);
    assert!(text.contains("seed 1 "), "{text}");
    let (_, a) = lab(
        &["count", "-p", "K3", "--random", "15,0.5", "--seed", "7"],
        Some("9"),
    );
    let (_, b) = lab(
        &["count", "-p", "K3", "--random", "15,0.5", "--seed", "9"],
        None,
    );
    let count = |s: &str| {
        Record::parse(s.trim())
            .unwrap()
            .get("count")
            .unwrap()
            .to_string()
    };
    assert_eq!(count(&a), count(&b));
}

#[test]
fn plot_emits_table_script_and_notes() {
    let dir = tempfile::tempdir().unwrap();
    let records = dir.path().join("r.records");
    fs::write(
        &records,
        "k=1 count=3 lower=2\nk=2 count=9\nk=3 count=20 lower=7\n",
    )
    .unwrap();
    let prefix = dir.path().join("plot");
    let (code, text) = lab(
        &[
            "experiment",
            "plot",
            records.to_str().unwrap(),
            "--x",
            "k",
            "--y",
            "count,lower",
            "-o",
            prefix.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code, 0);
    assert!(text.starts_with("2 rows (1 skipped"), "{text}");
    assert_eq!(
        fs::read_to_string(dir.path().join("plot.dat")).unwrap(),
        "# k count lower\n1 3 2\n3 20 7\n"
    );
    assert!(fs::read_to_string(dir.path().join("plot.gp"))
        .unwrap()
        .contains("using 1:3"));
    assert!(fs::read_to_string(dir.path().join("plot.txt"))
        .unwrap()
        .contains("3: lower"));
}

#[test]
fn unknown_names_are_errors() {
    let cli = Cli::try_parse_from(["lab", "bounds", "nope"]).unwrap();
    assert!(run(cli, None, &mut Vec::new()).is_err());
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("x.spec");
    fs::write(&spec, "experiment = nope\n").unwrap();
    let cli = Cli::try_parse_from(["lab", "experiment", "run", spec.to_str().unwrap()]).unwrap();
    assert!(run(cli, None, &mut Vec::new()).is_err());
}

#[test]
fn verify_exit_status() {
    let (code, text) = lab(&["verify", "--scale", "smoke", "--only", "10,11"], None);
    assert_eq!(code, 0);
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 2);
}

#[test]
fn construct_round_trips_through_count() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cliques.txt");
    let (code, _) = lab(
        &[
            "construct",
            "disjoint-cliques",
            "count=3",
            "size=4",
            "-o",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code, 0);
    let (_, text) = lab(
        &["count", "-p", "K3", "--graph", path.to_str().unwrap()],
        None,
    );
    assert!(text.contains("count=12"), "{text}");
    let cu = dir.path().join("cu.txt");
    lab(
        &[
            "construct",
            "random-clique",
            "n=12",
            "m=4",
            "u=3",
            "-o",
            cu.to_str().unwrap(),
        ],
        None,
    );
    let (_, text) = lab(
        &["count", "-p", "K4", "--clique-union", cu.to_str().unwrap()],
        None,
    );
    assert!(text.contains("pattern=K4"), "{text}");
}
