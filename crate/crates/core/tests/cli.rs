//! The suite runner and the command-line front end.

use std::path::Path;
use std::process::Command;

use shellmax::run::{run_suite, RunConfig};

fn shellmax(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_shellmax"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn rows(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(str::to_string)
        .collect()
}

#[test]
fn growth_suite_writes_one_row_per_radius() {
    let dir = tempfile::tempdir().unwrap();
    let config = RunConfig {
        suite: "growth".into(),
        group: "free rank=2".into(),
        radius: 10,
        out: dir.path().to_string_lossy().into_owned(),
        ..RunConfig::default()
    };
    let report = run_suite(&config).unwrap();
    let csv = rows(&dir.path().join("growth.csv"));
    assert_eq!(csv.len(), 11);
    assert!(csv[3].starts_with("3,36,53,"));
    let fit = &report.outcome("growth").unwrap().details["fit"];
    assert_eq!(fit["d"], 0);
    assert_eq!(fit["q_integer"], 3);
    let text = std::fs::read_to_string(dir.path().join("growth.csv")).unwrap();
    assert!(text.contains(r#""group":"free rank=2""#) && text.contains(r#""seed":0"#));
}

#[test]
fn coarse_median_refuses_polynomial_growth() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    let (code, _, err) = shellmax(&["coarse-median", "--group", "zd dim=2", "--out", &out]);
    assert_eq!(code, 2);
    assert!(err.contains("polynomial"), "{err}");
    assert!(err.contains("coarse-median"), "cell coordinates missing: {err}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    assert_eq!(shellmax(&["growth", "--group", "free rank=2", "--out", &out]).0, 0);
    assert_eq!(shellmax(&["growth", "--group", "free rank=x", "--out", &out]).0, 2);
    let (code, _, err) = shellmax(&[
        "growth",
        "--group",
        "free rank=2",
        "--R",
        "20",
        "--budget",
        "500",
        "--out",
        &out,
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("radius 6"), "{err}");
    assert_eq!(
        shellmax(&["suite", "nonsense", "--group", "free rank=2", "--out", &out]).0,
        2
    );
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    std::fs::write(&config, r#"{"group": "free rank=3", "radius": 9, "seed": 5}"#).unwrap();
    let out = dir.path().join("o");
    let (code, stdout, err) = shellmax(&[
        "growth",
        "--config",
        config.to_str().unwrap(),
        "--R",
        "7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.contains("growth: 8 cells"), "{stdout}");
    let text = std::fs::read_to_string(out.join("growth.csv")).unwrap();
    assert!(
        text.contains(r#""group":"free rank=3""#) && text.contains(r#""radius":7"#) && text.contains(r#""seed":5"#)
    );
    std::fs::write(&config, r#"{"group": "free rank=3", "radious": 9}"#).unwrap();
    assert_eq!(shellmax(&["growth", "--config", config.to_str().unwrap()]).0, 2);
}

#[test]
fn maximal_reads_a_function_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.txt");
    std::fs::write(&f, "# point mass\ne 1\n").unwrap();
    let out = dir.path().join("o");
    let (code, _, err) = shellmax(&[
        "maximal",
        "--group",
        "free rank=2",
        "--function",
        f.to_str().unwrap(),
        "--R",
        "6",
        "--values",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("maximal.json")).unwrap()).unwrap();
    assert_eq!(json["result"]["weak_ratio"].as_f64(), Some(1.0));
    assert_eq!(json["result"]["window"], 5);
    assert_eq!(json["config"]["group"], "free rank=2");
    let values = rows(&out.join("maximal_values.csv"));
    assert!(values.contains(&"e,0,1/5".to_string()));
}

#[test]
fn norm_record_carries_the_reference() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    let (code, _, err) = shellmax(&["norm", "--group", "free rank=2", "--r", "2", "--R", "6", "--out", &out]);
    assert_eq!(code, 0, "{err}");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("norm.json")).unwrap()).unwrap();
    assert_eq!((json["r"].as_u64(), json["R"].as_u64()), (Some(2), Some(6)));
    let norm = json["norm"].as_f64().unwrap();
    let reference = json["reference"].as_f64().unwrap();
    assert!(norm < reference && (reference - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(json["converged"], true);
    assert!(json["iters"].as_u64().unwrap() > 0);
}

#[test]
fn completed_cells_survive_a_failing_suite() {
    let dir = tempfile::tempdir().unwrap();
    // the growth suite succeeds; coarse-median then needs a ball past the budget
    let config = RunConfig {
        suite: "all".into(),
        group: "free rank=2".into(),
        radius: 7,
        rmax: 9,
        budget: 20_000,
        out: dir.path().to_string_lossy().into_owned(),
        ..RunConfig::default()
    };
    let err = run_suite(&config).unwrap_err();
    assert_eq!(err.exit_code(), 3);
    assert_eq!(rows(&dir.path().join("growth.csv")).len(), 8);
    let summary = std::fs::read_to_string(dir.path().join("summary.json")).unwrap();
    assert!(summary.contains("coarse-median") && summary.contains("resource limit"));
}

#[test]
fn median_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_string_lossy().into_owned();
    let args = [
        "median",
        "--group",
        "free rank=2",
        "--x",
        "e",
        "--y",
        "a.b",
        "--z",
        "a.b^-1",
        "--out",
        &out,
    ];
    assert_eq!(shellmax(&args).0, 0);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("median.json")).unwrap()).unwrap();
    assert_eq!(json["candidates"], serde_json::json!(["a"]));
    assert_eq!(json["singleton"], true);
}
