use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_curveflow"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn summary(dir: &Path) -> Value {
    let text = std::fs::read_to_string(dir.join("summary.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn circle_fixture_passes_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["run", "--config", path(&config("circle.json")), "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let s = summary(dir.path());
    assert_eq!(s["status"], "pass");
    assert_eq!(s["exit_code"], 0);
    let checks = s["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn csv_has_the_documented_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "run", "--shape", "circle", "--n", "64", "--t-end", "0.5", "--out", path(dir.path()),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("timeseries.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t,length,kappa_min,kappa_max,min_Z,tbar,thm12_residual,l2_deficit,\
         dkappa_max,d2kappa_max,gn_ratio,bonnesen_gap,hausdorff,center_norm"
    );
    // Snapshots at 0, 0.1, …, 0.5.
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.split(',').count() == 14));
    let t: f64 = rows[5].split(',').next().unwrap().parse().unwrap();
    assert_eq!(t, 0.5);
}

#[test]
fn non_convex_start_exits_3_at_time_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["run", "--config", path(&config("star.json")), "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(3));
    let s = summary(dir.path());
    assert_eq!(s["status"], "error");
    assert_eq!(s["failure"]["time"], 0.0);
    assert!(s["failure"]["message"].as_str().unwrap().contains("convex"));
}

#[test]
fn bad_configs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"shape": "triangle"}"#).unwrap();
    assert_eq!(run(&["run", "--config", path(&bad)]).status.code(), Some(2));

    std::fs::write(&bad, r#"{"dt": 0.0}"#).unwrap();
    assert_eq!(run(&["run", "--config", path(&bad)]).status.code(), Some(2));

    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["run", "--config", path(&missing)]).status.code(), Some(2));
    assert_eq!(run(&["run", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn tightened_tolerance_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.json");
    std::fs::write(
        &cfg,
        r#"{"shape": "ellipse", "n": 64, "t_end": 0.5, "checks": ["kappa_convergence"],
            "tolerances": {"kappa_convergence": 1e-9}}"#,
    )
    .unwrap();
    let out = run(&["run", "--config", path(&cfg), "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    let s = summary(dir.path());
    assert_eq!(s["status"], "fail");
    assert_eq!(s["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn svg_snapshots_only_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let svg_dir = dir.path().join("svg");
    let args = ["run", "--shape", "ellipse", "--n", "64", "--t-end", "0.2"];
    let out = run(&[&args[..], &["--out", path(&out_dir)]].concat());
    assert_eq!(out.status.code(), Some(0));
    assert!(!svg_dir.exists());

    let out = run(&[&args[..], &["--out", path(&out_dir), "--svg-dir", path(&svg_dir)]].concat());
    assert_eq!(out.status.code(), Some(0));
    let mut names: Vec<String> = std::fs::read_dir(&svg_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["snapshot_0000.svg", "snapshot_0001.svg", "snapshot_0002.svg"]);
    let svg = std::fs::read_to_string(svg_dir.join("snapshot_0002.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn both_mode_compares_the_formulations() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["run", "--config", path(&config("both.json")), "--out", path(dir.path())]);
    assert_eq!(out.status.code(), Some(0));
    let s = summary(dir.path());
    let names: Vec<&str> = s["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"length_law") && names.contains(&"cross_check"));
}

#[test]
fn identical_configs_give_identical_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = config("both.json");
    for dir in [&a, &b] {
        let out = run(&["run", "--config", path(&cfg), "--out", path(dir.path())]);
        assert_eq!(out.status.code(), Some(0));
    }
    let read = |d: &Path, f: &str| std::fs::read(d.join(f)).unwrap();
    assert_eq!(read(a.path(), "timeseries.csv"), read(b.path(), "timeseries.csv"));
    // The summary echoes the output directory, so compare everything else.
    let (mut sa, mut sb) = (summary(a.path()), summary(b.path()));
    sa["config"]["out"] = Value::Null;
    sb["config"]["out"] = Value::Null;
    assert_eq!(sa, sb);
}

#[test]
fn verify_profile_on_a_coarse_grid() {
    let out = run(&["verify-profile", "--x-step", "0.01", "--t-step", "0.1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 4);
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_profile_rejects_x_beyond_pi() {
    let out = run(&["verify-profile", "--x-max", "3.2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tbar_prints_the_offset() {
    let out = run(&["tbar", "--shape", "ellipse", "--a", "2", "--b", "1", "--n", "128"]);
    assert_eq!(out.status.code(), Some(0));
    let value: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!(value > 0.5 && value < 1.0, "{value}");

    let out = run(&["tbar", "--shape", "circle", "--n", "128"]);
    let circle: f64 = String::from_utf8(out.stdout).unwrap().trim().parse().unwrap();
    assert!(circle < value);
}
