//! End-to-end tests of the `au` binary: exit codes, determinism, ingestion
//! edge cases, and the JSON/CSV surfaces.

use std::path::Path;
use std::process::{Command, Output};

fn au(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_au"))
        .args(args)
        .env_remove("AU_SEED")
        .output()
        .expect("binary runs")
}

fn au_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_au"))
        .args(args)
        .env_remove("AU_SEED")
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_file(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn sample_is_deterministic_per_seed() {
    let a = au(&["sample", "--alpha", "0.5", "--n", "3", "--seed", "42"]);
    let b = au(&["sample", "--alpha", "0.5", "--n", "3", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4); // header + 3 values
    assert_eq!(lines[0], "value");
    for line in &lines[1..] {
        let v: f64 = line.parse().unwrap();
        assert!(v > 0.0 && v <= 1.0);
    }

    let c = au(&["sample", "--alpha", "0.5", "--n", "3", "--seed", "43"]);
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn seed_comes_from_env_unless_flagged() {
    let from_env = au_with_env(&["sample", "--alpha", "0.5", "--n", "2"], "AU_SEED", "42");
    let from_flag = au(&["sample", "--alpha", "0.5", "--n", "2", "--seed", "42"]);
    assert_eq!(stdout(&from_env), stdout(&from_flag));
    // the flag wins over the environment
    let flag_wins = au_with_env(
        &["sample", "--alpha", "0.5", "--n", "2", "--seed", "42"],
        "AU_SEED",
        "7",
    );
    assert_eq!(stdout(&flag_wins), stdout(&from_flag));
}

#[test]
fn eval_prints_the_mean() {
    let out = au(&["eval", "--alpha", "1.205943", "--mean"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let value: f64 = text.trim().strip_prefix("mean = ").unwrap().parse().unwrap();
    assert!((value - 0.1948).abs() < 1e-3, "{value}");
}

#[test]
fn eval_requires_a_point_for_pdf() {
    let out = au(&["eval", "--alpha", "1.0", "--pdf"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--at"));
}

#[test]
fn eval_rejects_nonpositive_alpha() {
    let out = au(&["eval", "--alpha", "-1.0", "--mean"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn spc_reports_hdi_limits() {
    let dir = tempfile::tempdir().unwrap();
    let json_path = dir.path().join("spc.json");
    let out = au(&[
        "spc",
        "--alpha",
        "0.1092",
        "--pi",
        "0.01",
        "--method",
        "hdi",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let lcl = report["results"]["limits"]["lcl"].as_f64().unwrap();
    let ucl = report["results"]["limits"]["ucl"].as_f64().unwrap();
    assert!((lcl - 0.6856).abs() < 0.002, "lcl {lcl}");
    assert!((ucl - 0.9773).abs() < 0.002, "ucl {ucl}");
    assert_eq!(report["command"], "spc");
    assert!(report["seed"].is_null() || report.get("seed").is_none());
}

#[test]
fn spc_screens_a_series_and_writes_the_chart() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_file(dir.path(), "series.csv", "x\n0.9\n0.5\n0.95\n0.99\n");
    let chart = dir.path().join("chart.csv");
    let out = au(&[
        "spc",
        "--data",
        &data,
        "--column",
        "x",
        "--alpha",
        "0.1092",
        "--pi",
        "0.01",
        "--method",
        "hdi",
        "--out",
        chart.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let chart_text = std::fs::read_to_string(&chart).unwrap();
    let lines: Vec<&str> = chart_text.lines().collect();
    assert_eq!(lines[0], "index,value,alarm");
    assert_eq!(lines.len(), 5);
    // 0.5 is far below the LCL ≈ 0.6856 and 0.99 is above the UCL ≈ 0.9773
    assert!(lines[2].starts_with("2,0.5,1"), "{}", lines[2]);
    assert!(lines[4].starts_with("4,0.99,1"), "{}", lines[4]);
    assert!(lines[1].ends_with(",0"));
    assert!(lines[3].ends_with(",0"));
}

#[test]
fn spc_fit_estimates_alpha_from_the_series() {
    let dir = tempfile::tempdir().unwrap();
    // alpha-hat = sqrt(T/(3n)); for ln x = -1 twice, T = 2, n = 2
    let inv_e = (-1.0f64).exp();
    let data = write_file(dir.path(), "series.csv", &format!("x\n{inv_e}\n{inv_e}\n"));
    let out = au(&["spc", "--data", &data, "--column", "x", "--fit", "--pi", "0.05"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let alpha_line = text.lines().next().unwrap();
    let alpha: f64 = alpha_line.strip_prefix("alpha = ").unwrap().parse().unwrap();
    assert!((alpha - (1.0f64 / 3.0).sqrt()).abs() < 1e-12, "{alpha}");
}

#[test]
fn spc_rejects_out_of_range_series_values() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_file(dir.path(), "series.csv", "x\n0.9\n1.5\n");
    let out = au(&["spc", "--data", &data, "--column", "x", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fit_refuses_boundary_values_without_squeeze() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_file(dir.path(), "unit.csv", "x\n0.2\n0.5\n1.0\n0.7\n");
    let out = au(&["fit", "--data", &data, "--column", "x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).to_lowercase().contains("squeeze"), "{}", stderr(&out));
}

#[test]
fn fit_accepts_the_same_file_with_squeeze() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = String::from("x\n");
    // a spread of interior values plus one exact boundary observation
    for i in 1..40 {
        rows.push_str(&format!("{}\n", i as f64 / 40.0));
    }
    rows.push_str("1.0\n");
    let data = write_file(dir.path(), "unit.csv", &rows);
    let out = au(&["fit", "--data", &data, "--column", "x", "--squeeze", "--models", "au,be"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("AU fit: alpha ="));
}

#[test]
fn fit_minmax_reports_and_json_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = String::from("y\n");
    for i in 0..60 {
        rows.push_str(&format!("{}\n", 3.0 + (i as f64 * 0.37).sin().powi(2) * 40.0 + i as f64));
    }
    let data = write_file(dir.path(), "raw.csv", &rows);
    let j1 = dir.path().join("a.json");
    let j2 = dir.path().join("b.json");
    for path in [&j1, &j2] {
        let out = au(&[
            "fit",
            "--data",
            &data,
            "--column",
            "y",
            "--minmax",
            "--models",
            "au,kum,ulindley",
            "--json",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let a = std::fs::read(&j1).unwrap();
    let b = std::fs::read(&j2).unwrap();
    assert_eq!(a, b, "fit reports must be byte-identical across reruns");
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["results"]["ranking"].as_array().unwrap().len(), 3);
    assert_eq!(report["inputs"]["squeezed"], true);
}

#[test]
fn ingest_reads_headered_and_headerless_files() {
    let dir = tempfile::tempdir().unwrap();
    let headered = write_file(dir.path(), "h.csv", "a\n0.2\n0.5\n");
    let out = au(&["spc", "--data", &headered, "--column", "a", "--alpha", "1.0"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("alarms: ")); // 2 observations screened

    let headerless = write_file(dir.path(), "n.csv", "0.2\n0.5\n0.9\n");
    let out = au(&["spc", "--data", &headerless, "--column", "0", "--alpha", "1.0"]);
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn ingest_skips_blank_lines() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_file(dir.path(), "b.csv", "x\n0.2\n\n0.5\n\n");
    let out = au(&["spc", "--data", &data, "--column", "x", "--alpha", "1.0"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("2 observations"), "{}", stdout(&out));
}

#[test]
fn ingest_reports_bad_cells_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let data = write_file(dir.path(), "bad.csv", "x\n0.2\nabc\n0.5\n");
    let out = au(&["spc", "--data", &data, "--column", "x", "--alpha", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("line 3") && err.contains("abc"), "{err}");
}

#[test]
fn ingest_rejects_missing_files_and_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = au(&["spc", "--data", "/nonexistent/f.csv", "--column", "x", "--alpha", "1.0"]);
    assert_eq!(out.status.code(), Some(2));

    let data = write_file(dir.path(), "h.csv", "a,b\n0.2,0.3\n");
    let out = au(&["spc", "--data", &data, "--column", "zzz", "--alpha", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("zzz"));
}

#[test]
fn usage_errors_exit_one() {
    let out = au(&["fit"]); // missing --data
    assert_eq!(out.status.code(), Some(1));
    let out = au(&["eval", "--alpha", "1.0"]); // no quantity picked
    assert_eq!(out.status.code(), Some(1));
    let out = au(&["nonsense"]);
    assert_eq!(out.status.code(), Some(1));
    let out = au(&["fit", "--data", "f.csv", "--models", "wibble"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_small_grid_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let j1 = dir.path().join("s1.json");
    let j2 = dir.path().join("s2.json");
    let csv = dir.path().join("cells.csv");
    for path in [&j1, &j2] {
        let out = au(&[
            "simulate",
            "--alphas",
            "0.5",
            "--ns",
            "50",
            "--reps",
            "30",
            "--seed",
            "9",
            "--out",
            csv.to_str().unwrap(),
            "--json",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    assert_eq!(std::fs::read(&j1).unwrap(), std::fs::read(&j2).unwrap());
    let cells = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = cells.lines().collect();
    assert_eq!(lines[0], "alpha,n,method,avg_estimate,bias,mse,ci_length");
    assert_eq!(lines.len(), 3); // header + MLE row + UMVUE row
    assert!(lines[1].starts_with("0.5,50,MLE,"));
    assert!(lines[2].starts_with("0.5,50,UMVUE,"));
    assert!(lines[2].ends_with(','), "UMVUE row has no interval length");
}

#[test]
fn help_and_version_exit_zero() {
    let out = au(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Usage"));
    let out = au(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
}
