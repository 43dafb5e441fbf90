use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tspevo::Metric;
use tspevo_bench::instances::{synthetic_instance, to_tsplib};
use tspevo_bench::oracle::brute_force_optimal;
use tspevo_bench::report::read_convergence_csv;

fn tspevo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tspevo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/tsplib")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn run_writes_one_row_per_generation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("conv.csv");
    let usage = dir.path().join("usage.csv");
    let o = tspevo(&[
        "run", "--instance", &data("eil51.tsp"), "--crossover", "sbc", "--mutation", "none",
        "--pc", "1.0", "--pm", "0.0", "--pop", "200", "--gens", "8000", "--seed", "7",
        "--out", out.to_str().unwrap(), "--usage", usage.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 8001);
    assert!(text.ends_with('\n'));
    let hist = read_convergence_csv(&out).unwrap();
    assert_eq!(hist.len(), 8000);
    assert!(hist.windows(2).all(|w| w[1].best_cost <= w[0].best_cost));
    assert!(hist.iter().all(|r| r.best_cost >= 426.0 && r.best_cost <= r.mean_cost));
    let usage = fs::read_to_string(&usage).unwrap();
    assert!(usage.starts_with("generation,strategy,operator,child_cost\n"));
    assert!(usage.lines().skip(1).all(|l| l.contains(",sbc,")));
}

#[test]
fn run_to_stdout_is_short_and_reproducible() {
    let args = [
        "run", "--instance", &data("berlin52.tsp"), "--crossover", "sac", "--mutation", "sam",
        "--pc", "1", "--pm", "1", "--pop", "20", "--gens", "3", "--seed", "2",
    ];
    let a = tspevo(&args);
    let b = tspevo(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(String::from_utf8(a.stdout).unwrap().lines().count(), 4);
}

#[test]
fn oracle_matches_enumeration() {
    let dir = tempfile::tempdir().unwrap();
    let inst = synthetic_instance("tiny8", 8, 12, Metric::RoundedEuc2d);
    let path = dir.path().join("tiny8.tsp");
    fs::write(&path, to_tsplib(&inst)).unwrap();
    let o = tspevo(&["oracle", "--instance", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let (tour, cost) = brute_force_optimal(&inst).unwrap();
    assert_eq!(text, format!("cost {cost:.6}\ntour {tour}\n"));
}

#[test]
fn oracle_refuses_large_instances() {
    let o = tspevo(&["oracle", "--instance", &data("eil51.tsp")]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("limited to 11"));
}

#[test]
fn validate_reports_every_operator() {
    let o = tspevo(&["validate", "--trials", "300"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.ends_with("ok")).count(), 17);
}

#[test]
fn bench_writes_result_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = tspevo(&[
        "bench", "--table", "3.2", "--runs", "2", "--scale", "0.002", "--instances",
        "eil51,berlin52", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(&out).unwrap();
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 10);
    for row in &rows {
        assert_eq!(&row[0], "3.2");
        assert_eq!(&row[6], "100");
        assert_eq!(&row[7], "16");
        assert_eq!(row[9].split(';').count(), 2);
        let median: f64 = row[10].parse().unwrap();
        let optimum: f64 = row[11].parse().unwrap();
        assert!(median >= optimum);
    }
    assert_eq!(&rows[0][1], "eil51");
    assert_eq!(&rows[0][3], "SBC");
    assert_eq!(&rows[5][1], "berlin52");
}

#[test]
fn bench_fails_on_missing_instance_unless_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let common = ["bench", "--table", "4.2", "--runs", "1", "--scale", "0.001", "--instances", "eil51,nowhere"];
    let o = tspevo(&common);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("nowhere"));
    let out = dir.path().join("t.csv");
    let mut args = common.to_vec();
    args.extend(["--skip-missing", "--out", out.to_str().unwrap()]);
    let o = tspevo(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 5);
}

#[test]
fn tsplib_dir_variable_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let inst = synthetic_instance("syn9", 9, 3, Metric::RoundedEuc2d);
    fs::write(dir.path().join("syn9.tsp"), to_tsplib(&inst)).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_tspevo"))
        .args(["oracle", "--instance", "syn9"])
        .env("TSPLIB_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn bad_input_exits_nonzero() {
    for args in [
        vec!["run", "--instance", "/definitely/not/here.tsp"],
        vec!["run", "--instance", "eil51", "--pc", "1.5"],
        vec!["run", "--instance", "eil51", "--crossover", "bogus"],
        vec!["bench", "--table", "9.9"],
        vec!["run", "--no-such-flag"],
        vec!["validate", "--min-n", "2"],
    ] {
        let o = tspevo(&args);
        assert!(!o.status.success(), "{args:?} succeeded");
        assert!(!o.stderr.is_empty());
    }
}
