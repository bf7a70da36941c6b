//! End-to-end tests of the binary: file ingestion, exit-code contract,
//! deterministic output.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_krein-csym"))
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

fn setup_golden(dir: &Path) -> (String, String) {
    let j = dir.join("J.json");
    let a = dir.join("A.json");
    write(
        &j,
        r#"{"n": 2, "re": [[1.0, 0.0], [0.0, -1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#,
    );
    write(
        &a,
        r#"{"n": 2, "re": [[2.0, 1.0], [-1.0, -1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#,
    );
    (j.to_str().unwrap().into(), a.to_str().unwrap().into())
}

fn run(mut cmd: Command) -> Output {
    cmd.output().expect("binary runs")
}

#[test]
fn verify_j_triple_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (j, _) = setup_golden(dir.path());
    let out = run({
        let mut c = bin();
        c.args(["verify", &j, &j, &j]);
        c
    });
    assert!(out.status.success(), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("verdict: PASS"));
}

#[test]
fn verify_negated_metric_fails_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let (j, _) = setup_golden(dir.path());
    let neg = dir.path().join("negJ.json");
    write(
        &neg,
        r#"{"n": 2, "re": [[-1.0, 0.0], [0.0, 1.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#,
    );
    let out = run({
        let mut c = bin();
        c.args(["verify", &j, &j, neg.to_str().unwrap()]);
        c
    });
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("metric positivity"));
}

#[test]
fn missing_file_is_an_operational_error() {
    let dir = tempfile::tempdir().unwrap();
    let (j, _) = setup_golden(dir.path());
    let out = run({
        let mut c = bin();
        c.args(["verify", "/nonexistent/A.json", &j, &j]);
        c
    });
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn malformed_file_is_an_operational_error() {
    let dir = tempfile::tempdir().unwrap();
    let (j, _) = setup_golden(dir.path());
    let bad = dir.path().join("bad.json");
    write(&bad, r#"{"n": 2, "re": [[1.0]], "im": [[0.0]]}"#);
    let out = run({
        let mut c = bin();
        c.args(["verify", bad.to_str().unwrap(), &j, &j]);
        c
    });
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn construct_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (j, a) = setup_golden(dir.path());
    let c_path = dir.path().join("C.json");
    let out = run({
        let mut c = bin();
        c.args(["construct", &a, &j, "--out", c_path.to_str().unwrap()]);
        c
    });
    assert!(out.status.success(), "{out:?}");
    let out = run({
        let mut c = bin();
        c.args(["verify", &a, &j, c_path.to_str().unwrap()]);
        c
    });
    assert!(out.status.success());

    // and the constructed C Hermitizes A
    let h_path = dir.path().join("H.json");
    let out = run({
        let mut c = bin();
        c.args([
            "hermitize",
            &a,
            &j,
            c_path.to_str().unwrap(),
            "--out",
            h_path.to_str().unwrap(),
        ]);
        c
    });
    assert!(out.status.success());
    assert!(h_path.exists());
}

#[test]
fn construct_reports_complex_spectrum_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let (j, _) = setup_golden(dir.path());
    let rot = dir.path().join("rot.json");
    write(
        &rot,
        r#"{"n": 2, "re": [[0.0, 1.0], [-1.0, 0.0]], "im": [[0.0, 0.0], [0.0, 0.0]]}"#,
    );
    let out = run({
        let mut c = bin();
        c.args(["construct", rot.to_str().unwrap(), &j]);
        c
    });
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(parsed["status"], "ComplexSpectrum");
}

#[test]
fn sweep_csv_is_deterministic_and_ordered() {
    let args = [
        "sweep",
        "--gamma-min",
        "0.5",
        "--gamma-max",
        "1.5",
        "--steps",
        "3",
        "--grid-n",
        "12",
        "--grid-l",
        "10",
    ];
    let out1 = run({
        let mut c = bin();
        c.args(args).env("KREIN_CSYM_THREADS", "1");
        c
    });
    let out2 = run({
        let mut c = bin();
        c.args(args).env("KREIN_CSYM_THREADS", "4");
        c
    });
    assert!(out1.status.success());
    let text1 = String::from_utf8(out1.stdout).unwrap();
    let text2 = String::from_utf8(out2.stdout).unwrap();
    assert_eq!(text1, text2, "parallel and serial runs must emit identical bytes");
    let lines: Vec<&str> = text1.lines().collect();
    assert_eq!(lines[0], "gamma,max_im_lambda,norm_C,cond_F,status");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("5.0000000000000000e-1,"));
    assert!(lines[2].starts_with("1.0000000000000000e0,"));
}

#[test]
fn direct_sum_closed_forms_in_csv() {
    let out = run({
        let mut c = bin();
        c.args([
            "direct-sum",
            "--m-list",
            "5,10",
            "--grid-n",
            "6",
            "--grid-l",
            "10",
        ]);
        c
    });
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "M,norm_T,norm_C,cond_F");
    let row5: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(row5[0], "5");
    let norm_c: f64 = row5[2].parse().unwrap();
    assert!((norm_c - 21.0).abs() < 1e-8);
}

#[test]
fn rejects_bad_thread_env() {
    let out = run({
        let mut c = bin();
        c.args(["direct-sum", "--m-list", "2", "--grid-n", "4", "--grid-l", "4.0"])
            .env("KREIN_CSYM_THREADS", "zero");
        c
    });
    assert_eq!(out.status.code(), Some(1));
}
