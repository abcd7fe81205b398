use std::path::{Path, PathBuf};
use std::process::Command;

use num_complex::Complex64;
use qfdiv::linalg::{ComplexMatrix, Tolerances};
use qfdiv_cli::io::{read_matrix_file, read_state, write_matrix, Metadata};

fn qfdiv(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qfdiv")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_state(dir: &Path, name: &str, dim: usize, entries: &[(f64, f64)]) -> PathBuf {
    let m = ComplexMatrix::from_row_major(dim, &entries.iter().map(|&(a, b)| Complex64::new(a, b)).collect::<Vec<_>>())
        .unwrap();
    let p = dir.join(name);
    write_matrix(&p, &m, Metadata::default()).unwrap();
    p
}

fn files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

fn report(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_writes_valid_states() {
    let dir = tempfile::tempdir().unwrap();
    let pure = dir.path().join("pure");
    assert_eq!(qfdiv(&["generate", "--kind", "pure", "--dim", "2", "--seed", "7", "--out-dir", s(&pure)]).0, 0);
    let written = files(&pure);
    assert_eq!(written.len(), 1);
    let state = read_state(&written[0], &Tolerances::default()).unwrap();
    assert_eq!(state.rank(), 1);
    let meta = read_matrix_file(&written[0]).unwrap().metadata;
    assert_eq!((meta.seed, meta.stream), (Some(7), Some(0)));

    let full = dir.path().join("full");
    let args = ["generate", "--kind", "full-rank", "--dim", "4", "--count", "10", "--out-dir", s(&full)];
    assert_eq!(qfdiv(&args).0, 0);
    let written = files(&full);
    assert_eq!(written.len(), 10);
    let mut texts: Vec<String> = written.iter().map(|p| std::fs::read_to_string(p).unwrap()).collect();
    for p in &written {
        assert_eq!(read_state(p, &Tolerances::default()).unwrap().rank(), 4);
    }
    texts.dedup();
    assert_eq!(texts.len(), 10);

    let pair = dir.path().join("pair");
    assert_eq!(qfdiv(&["generate", "--kind", "commuting-pair", "--dim", "3", "--out-dir", s(&pair)]).0, 0);
    assert_eq!(files(&pair).len(), 2);

    assert_eq!(qfdiv(&["generate", "--kind", "pure", "--dim", "0", "--out-dir", s(&pure)]).0, 2);
    assert_eq!(qfdiv(&["generate", "--kind", "fixed-rank", "--dim", "3", "--rank", "4", "--out-dir", s(&pure)]).0, 2);
    assert_eq!(qfdiv(&["generate", "--kind", "nonsense", "--dim", "3", "--out-dir", s(&pure)]).0, 2);
}

#[test]
fn divergence_edge_cases_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let mixed = write_state(d, "mixed.json", 2, &[(0.7, 0.0), (0.1, -0.2), (0.1, 0.2), (0.3, 0.0)]);
    let up = write_state(d, "up.json", 2, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
    let down = write_state(d, "down.json", 2, &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);

    let (code, out) = qfdiv(&["divergence", "--rho", s(&mixed), "--sigma", s(&mixed), "--name", "kl"]);
    assert_eq!(code, 0);
    assert!(out.contains("kl: 0"), "{out}");

    let rep = d.join("r.json");
    let args = ["divergence", "--rho", s(&up), "--sigma", s(&down), "--name", "chi_sq", "--route", "both", "--report", s(&rep)];
    let (code, out) = qfdiv(&args);
    assert_eq!(code, 0);
    assert!(out.contains("chi_sq ns: inf") && out.contains("chi_sq modular: inf"), "{out}");
    assert_eq!(report(&rep)["cases"][0]["ns"], "inf");

    let args = ["divergence", "--rho", s(&mixed), "--sigma", s(&up), "--name", "renyi_alpha", "--alpha", "0.5"];
    assert_eq!(qfdiv(&args).0, 0);
    assert_eq!(qfdiv(&["divergence", "--rho", s(&mixed), "--sigma", s(&up), "--name", "renyi_alpha"]).0, 2);
    assert_eq!(qfdiv(&["divergence", "--rho", s(&mixed), "--sigma", s(&up), "--name", "nope"]).0, 2);

    let missing = d.join("missing.json");
    assert_eq!(qfdiv(&["divergence", "--rho", s(&missing), "--sigma", s(&up), "--name", "kl"]).0, 3);

    let not_psd = write_state(d, "neg.json", 2, &[(1.5, 0.0), (0.0, 0.0), (0.0, 0.0), (-0.5, 0.0)]);
    assert_eq!(qfdiv(&["divergence", "--rho", s(&not_psd), "--sigma", s(&up), "--name", "kl"]).0, 4);
    let garbage = d.join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(qfdiv(&["divergence", "--rho", s(&garbage), "--sigma", s(&up), "--name", "kl"]).0, 4);
    let three = write_state(d, "three.json", 3, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
    assert_eq!(qfdiv(&["divergence", "--rho", s(&three), "--sigma", s(&up), "--name", "kl"]).0, 4);
}

#[test]
fn ns_table_and_hypothesis_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let a = write_state(d, "a.json", 2, &[(0.8, 0.0), (0.0, 0.0), (0.0, 0.0), (0.2, 0.0)]);
    let b = write_state(d, "b.json", 2, &[(0.5, 0.0), (0.0, 0.0), (0.0, 0.0), (0.5, 0.0)]);

    let (code, out) = qfdiv(&["ns", "--rho", s(&a), "--sigma", s(&b)]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with(|c: char| c.is_ascii_digit())).count(), 4);

    let rep = d.join("c.json");
    let (code, out) = qfdiv(&["chernoff", "--rho", s(&a), "--sigma", s(&a), "--n-max", "4", "--report", s(&rep)]);
    assert_eq!(code, 0);
    assert!(out.contains("chernoff: 0"), "{out}");
    let r = report(&rep);
    assert_eq!(r["cases"][0]["chernoff"], "0.0000000000000000e0");
    for p in r["cases"][0]["trace"].as_array().unwrap() {
        assert_eq!(p["p_min"], "5.0000000000000000e-1");
    }

    let proj = d.join("proj.json");
    let args = ["helstrom", "--rho", s(&a), "--sigma", s(&b), "--n", "2", "--pi0", "0.4", "--projector-out", s(&proj)];
    let (code, out) = qfdiv(&args);
    assert_eq!(code, 0);
    assert!(out.starts_with("p_min: "));
    assert_eq!(read_matrix_file(&proj).unwrap().dim, 4);
    assert_eq!(qfdiv(&["helstrom", "--rho", s(&a), "--sigma", s(&b), "--pi0", "1.5"]).0, 2);
    assert_eq!(qfdiv(&["helstrom", "--rho", s(&a), "--sigma", s(&b), "--n", "0"]).0, 2);
}

#[test]
fn theorem_campaign_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("t.json");
    let (code, out) = qfdiv(&["verify-theorem", "--dims", "2,3,4", "--pairs", "100", "--seed", "1", "--report", s(&rep)]);
    assert_eq!(code, 0, "{out}");
    let r = report(&rep);
    assert_eq!(r["failed"], 0);
    assert_eq!(r["passed"], 3 * 4 * 100);
    assert_eq!(r["cases"][0]["results"].as_array().unwrap().len(), 10);

    let one = Command::new(env!("CARGO_BIN_EXE_qfdiv"))
        .args(["verify-theorem", "--dims", "2", "--pairs", "2", "--functions", "kl,hellinger_alpha:3,renyi_alpha(2)"])
        .env("QFDIV_WORKERS", "1")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(qfdiv(&["verify-theorem", "--dims", "0"]).0, 2);
    assert_eq!(qfdiv(&["verify-theorem", "--replay", "1:2:pure"]).0, 2);
    assert_eq!(qfdiv(&["verify-theorem", "--kinds", "triangular"]).0, 2);
}

#[test]
fn inequality_campaign_margins() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("i.json");
    let (code, _) = qfdiv(&["inequalities", "--items", "2", "--pairs", "500", "--report", s(&rep)]);
    assert_eq!(code, 0);
    let r = report(&rep);
    let cases = r["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 500);
    for case in cases {
        for item in case["reports"].as_array().unwrap() {
            let m: qfdiv::ExtendedReal = item["margin"].as_str().unwrap().parse().unwrap();
            assert!(m.to_f64() >= -1e-9, "{case}");
        }
    }

    let (code, _) = qfdiv(&["inequalities", "--items", "10", "--pairs", "0", "--dims", "3", "--report", s(&rep)]);
    assert_eq!(code, 0);
    assert_eq!(report(&rep)["cases"].as_array().unwrap().len(), 3);
    assert_eq!(qfdiv(&["inequalities", "--items", "8", "--alpha", "1.5"]).0, 2);
    assert_eq!(qfdiv(&["inequalities", "--items", "3", "--hellinger-orders", "2"]).0, 2);
    assert_eq!(qfdiv(&["inequalities", "--items", "11"]).0, 2);
    assert_eq!(qfdiv(&["inequalities", "--items", "10", "--convergence-function", "renyi_alpha:2"]).0, 1);
}
