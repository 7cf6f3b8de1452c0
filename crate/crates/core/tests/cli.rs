use std::fs;
use std::process::{Command, Output};

fn zombi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zombi")).args(args).output().expect("binary runs")
}

#[test]
fn run_writes_trace_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t");
    let o = zombi(&["run", "--objective", "ackley5", "--acq", "lcb-adaptive", "--seed", "42", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let trace = fs::read_to_string(out.join("trace.csv")).unwrap();
    let mut lines = trace.lines();
    assert_eq!(lines.next().unwrap(), "iteration,activation,x1,x2,x3,x4,x5,y,best_y,surrogate_n,fit_ms,acq_ms");
    assert_eq!(lines.count(), 110);
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["total_evaluations"], 110);
    assert!(String::from_utf8_lossy(&o.stdout).contains("best y"));
}

#[test]
fn plain_bo_trace_grows_the_surrogate() {
    let dir = tempfile::tempdir().unwrap();
    let o = zombi(&["run", "--mode", "plain-bo", "--budget", "30", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_path(dir.path().join("trace.csv")).unwrap();
    let n: Vec<usize> = rdr.records().map(|r| r.unwrap()[9].parse().unwrap()).collect();
    assert_eq!(n[10..], (10..30).collect::<Vec<_>>()[..]);
}

#[test]
fn dataset_run_and_gen_needle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("needle.csv");
    let o = zombi(&["gen-needle", "--needle-dim", "3", "--needle-rows", "500", "--needle-fraction", "0.02", "--out", csv_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let optimum: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(optimum["needle_rows"], 10);
    assert_eq!(optimum["depth"], -2.0);

    let out = dir.path().join("run");
    let o = zombi(&[
        "run", "--objective", "dataset", "--data", csv_path.to_str().unwrap(), "--target", "y", "--sense", "min",
        "--budget", "30", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(out.join("trace.csv").exists());
}

#[test]
fn timing_and_sweep_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = zombi(&["timing", "--budget", "50", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let timing = fs::read_to_string(dir.path().join("timing.csv")).unwrap();
    assert!(timing.starts_with("iteration,mode,fit_ms,acq_ms"));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("timing_summary.json")).unwrap()).unwrap();
    assert!(report["final_speedup"].is_number());

    let o = zombi(&["smooth-sweep", "--bandwidth", "0.1", "--runs", "1", "--budget", "30", "--needle-rows", "1000", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let sweep = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert_eq!(sweep.lines().count(), 5);
}

#[test]
fn exit_codes() {
    assert_eq!(zombi(&["run", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(zombi(&["run", "--acq", "nope"]).status.code(), Some(2));
    assert_eq!(zombi(&["run", "--memory", "100"]).status.code(), Some(2));
    assert_eq!(zombi(&["run", "--objective", "dataset"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.csv");
    assert_eq!(zombi(&["run", "--objective", "dataset", "--data", missing.to_str().unwrap()]).status.code(), Some(1));
}
