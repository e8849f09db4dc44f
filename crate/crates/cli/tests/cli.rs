use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sep3q(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sep3q"))
        .args(args)
        .env_remove("SEP3Q_THREADS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn gen(dir: &TempDir, name: &str, extra: &[&str]) -> std::path::PathBuf {
    let path = dir.path().join(format!("{name}.json"));
    let mut args = vec!["gen", name, "--out", path_str(&path)];
    args.extend_from_slice(extra);
    let out = sep3q(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn pure_check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let ghz = gen(&dir, "ghz", &[]);
    let out = sep3q(&["pure-check", path_str(&ghz)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("entangled"));

    let product = gen(
        &dir,
        "product",
        &["--u", "1,1", "--v", "1,0,0,1", "--t", "0,1"],
    );
    let out = sep3q(&["pure-check", path_str(&product), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["verdict"], "separable");
    assert_eq!(report["c_vector"].as_array().unwrap().len(), 9);
    assert_eq!(report["lemma1_residuals"].as_array().unwrap().len(), 6);
}

#[test]
fn pure_check_reports_ghz_norm() {
    let dir = TempDir::new().unwrap();
    let ghz = gen(&dir, "ghz", &[]);
    let report = json(&sep3q(&["pure-check", path_str(&ghz), "--format", "json"]));
    assert!((report["certificate"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-9);
    assert_eq!(report["mode"], "pure");
}

#[test]
fn malformed_and_missing_files_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind": "pure", "data": [[1, 0], [0, 0]]}"#).unwrap();
    let out = sep3q(&["pure-check", path_str(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("8 [re, im] pairs"));

    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&sep3q(&["mixed-check", path_str(&bad)])), 2);
    assert_eq!(code(&sep3q(&["pure-check", "/nonexistent/state.json"])), 2);

    let rho = gen(&dir, "shifts-complement", &[]);
    assert_eq!(code(&sep3q(&["pure-check", path_str(&rho)])), 2);
}

#[test]
fn invalid_options_exit_2() {
    assert_eq!(code(&sep3q(&["demo", "dct", "--a", "0.5"])), 2);
    assert_eq!(code(&sep3q(&["gen", "dct", "--e", "0.3"])), 2);
    assert_eq!(code(&sep3q(&["demo", "shifts", "--samples", "0"])), 2);
    assert_eq!(code(&sep3q(&["gen", "random-separable", "--k", "0"])), 2);
    assert_eq!(code(&sep3q(&["no-such-command"])), 2);
}

#[test]
fn mixed_check_promotes_pure_files_and_reports_all_fields() {
    let dir = TempDir::new().unwrap();
    let w = gen(&dir, "w", &[]);
    let out = sep3q(&[
        "mixed-check",
        path_str(&w),
        "--samples",
        "100",
        "--ppt",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert!((report["certificate"].as_f64().unwrap() - 2.0 / 3f64.sqrt()).abs() < 1e-8);
    for field in [
        "input",
        "mode",
        "certificate",
        "verdict",
        "best_z",
        "search",
        "ppt",
        "wall_time_seconds",
        "config",
    ] {
        assert!(report.get(field).is_some(), "missing {field}");
    }
    assert_eq!(report["search"]["rank"], 1);
    assert_eq!(report["ppt"]["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn separable_mixture_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    let rho = gen(&dir, "random-separable", &["--seed", "5", "--k", "3"]);
    let out = sep3q(&[
        "mixed-check",
        path_str(&rho),
        "--samples",
        "2000",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["verdict"], "inconclusive");
    assert_eq!(report["certificate"].as_f64(), Some(0.0));
}

#[test]
fn gen_then_check_matches_demo() {
    let dir = TempDir::new().unwrap();
    let rho = gen(&dir, "shifts-complement", &[]);
    let flags = [
        "--samples",
        "5000",
        "--refine",
        "20",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let mut from_file = vec!["mixed-check", path_str(&rho)];
    from_file.extend_from_slice(&flags);
    let mut demo = vec!["demo", "shifts"];
    demo.extend_from_slice(&flags);
    let (a, b) = (json(&sep3q(&from_file)), json(&sep3q(&demo)));
    assert_eq!(a["certificate"], b["certificate"]);
    assert_eq!(a["best_z"], b["best_z"]);
    assert_eq!(b["reference_value"].as_f64(), Some(0.1469));
}

#[test]
fn demo_accepts_rounded_dct_parameters() {
    let out = sep3q(&[
        "demo",
        "dct",
        "--a",
        "0.3333333",
        "--b",
        "0",
        "--c",
        "0.1666667",
        "--d",
        "0.1666667",
        "--e",
        "0",
        "--samples",
        "1000",
    ]);
    assert_eq!(code(&out), 1, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("reference:   0.3747"), "{text}");
}

#[test]
fn thread_count_does_not_change_results() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_sep3q"))
            .args(["demo", "shifts", "--format", "json"])
            .env("SEP3Q_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(code(&out), 1);
        json(&out)
    };
    let (one, eight) = (run("1"), run("8"));
    assert_eq!(one["config"]["threads"], 1);
    assert_eq!(eight["config"]["threads"], 8);
    assert_eq!(one["certificate"], eight["certificate"]);
    assert_eq!(one["best_z"], eight["best_z"]);
}

#[test]
fn scan_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv_path = dir.path().join("scan.csv");
    let out = sep3q(&[
        "scan-dct",
        "--a",
        "0:1:3",
        "--samples",
        "500",
        "--refine",
        "0",
        "--out",
        path_str(&csv_path),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,b,c,d,e,certificate,ppt_A,ppt_B,ppt_C,seconds");
    assert_eq!(lines.len(), 4);
    // a = 1 is the GHZ projector
    let last: Vec<&str> = lines[3].split(',').collect();
    assert_eq!(last[0], "1");
    assert!((last[5].parse::<f64>().unwrap() - 3f64.sqrt()).abs() < 1e-8);
    assert_eq!(&last[6..9], ["false", "false", "false"]);
}

#[test]
fn scan_with_no_valid_points_writes_header_only() {
    let out = sep3q(&["scan-dct", "--a", "1.5,2", "--samples", "10"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "a,b,c,d,e,certificate,ppt_A,ppt_B,ppt_C,seconds"
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}
