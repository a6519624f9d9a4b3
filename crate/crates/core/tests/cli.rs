use std::process::{Command, Output};

use clock_visibility::sweep::CSV_HEADER;

fn visibility(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_visibility"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn point_prints_one_record() {
    let o = visibility(&[
        "point",
        "--model",
        "jc",
        "--delta-e",
        "1",
        "--omega",
        "1.1",
        "--lambda",
        "0",
        "--delta-tau",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, [CSV_HEADER, lines[1]]);
    let v: f64 = lines[1].rsplit(',').next().unwrap().parse().unwrap();
    assert!((v - 0.85252).abs() < 1e-5);
}

#[test]
fn point_with_probabilities() {
    let o = visibility(&[
        "point",
        "--model",
        "ad",
        "--delta-e",
        "1",
        "--p1",
        "0.8",
        "--p2",
        "0.2",
        "--tau1",
        "1",
        "--tau2",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: f64 = stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    // frozen from an independent scipy expm
    assert!((v - 0.83820).abs() < 1e-5, "{v}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        visibility(&["point", "--model", "jc", "--delta-e", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        visibility(&["point", "--model", "warp"]).status.code(),
        Some(2)
    );
    assert_eq!(visibility(&["bogus"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = visibility(&["figure", "fig-42", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("compare-lambda") && err.contains("jc-thermal"));
}

#[test]
fn sweep_config_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.json");
    std::fs::write(
        &cfg,
        r#"{"model":"noiseless","axes":[{"param":"delta_e","start":0,"stop":6.283185307179586,"points":100}],
            "fixed":{"delta_tau":1},"format":"csv"}"#,
    )
    .unwrap();
    let out = dir.path().join("o.json");
    let o = visibility(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let rows: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 100);
    for r in rows {
        let de = r["delta_e"].as_f64().unwrap();
        assert!((r["visibility"].as_f64().unwrap() - (de / 2.0).cos().abs()).abs() < 1e-14);
    }

    let o = visibility(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 101);

    std::fs::write(&cfg, r#"{"model":"jc","axes":[{"param":"lambda","start":0,"stop":1,"points":3}],"fixed":{"delta_e":1}}"#).unwrap();
    let o = visibility(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("omega"));
}

#[test]
fn figure_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3", "8"] {
        let out = dir.path().join(format!("cl-{threads}.csv"));
        let o = Command::new(env!("CARGO_BIN_EXE_visibility"))
            .args(["figure", "compare-lambda", "--out", out.to_str().unwrap()])
            .env("VISIBILITY_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
    let text = String::from_utf8(outputs.pop().unwrap()).unwrap();
    assert!(!text.contains('\r'));
    let noiseless: Vec<f64> = text
        .lines()
        .filter(|l| l.starts_with("noiseless,"))
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(noiseless.len(), 151);
    assert!(noiseless.iter().all(|v| (v - 0.8776).abs() < 1e-3));
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_visibility"))
        .args([
            "point",
            "--model",
            "noiseless",
            "--delta-e",
            "1",
            "--delta-tau",
            "1",
        ])
        .env("VISIBILITY_THREADS", "0")
        .output()
        .unwrap();
    // a single point never starts the pool
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_visibility"))
        .args(["figure", "jc-omega", "--out", out.to_str().unwrap()])
        .env("VISIBILITY_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn validate_reports_every_check() {
    let o = visibility(&["validate"]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() > 20);
    let failing: Vec<&str> = checks
        .iter()
        .filter(|c| !c["passed"].as_bool().unwrap())
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    // The only failures are the principal-branch cavity comparisons below
    // resonance; see README.
    assert_eq!(
        failing,
        ["jc-analytic-vs-oracle", "jc-thermal-sectors-vs-oracle"]
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(report["passed"], false);
}
