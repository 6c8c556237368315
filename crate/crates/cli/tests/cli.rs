use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const EXAMPLE: &str = r#"{
  "n": 8,
  "m": 4,
  "k": 3,
  "ballots": [[3, 4], [3, 4], [3, 4], [1, 2], [1, 2], [1, 3], [1, 3], [2, 4]]
}"#;

fn bwcv(args: &[&str], envs: &[(&str, &str)]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bwcv"))
        .args(args)
        .envs(envs.iter().copied())
        .output()
        .expect("binary runs")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn json(file: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(Path::new(file)).unwrap()).unwrap()
}

#[test]
fn bw_mes_report_on_worked_example() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "example.json");
    let out = path(&dir, "report.json");
    fs::write(&input, EXAMPLE).unwrap();
    let res = bwcv(
        &["run", "--rule", "bw-mes", "--in", &input, "--out", &out],
        &[],
    );
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );

    let report = json(&out);
    assert_eq!(report["rule"], "bw-mes");
    assert_eq!(
        report["lottery"],
        serde_json::json!([
            { "probability": "19/40", "committee": [1, 2, 3] },
            { "probability": "21/40", "committee": [1, 3, 4] },
        ])
    );
    assert_eq!(
        report["fractional"],
        serde_json::json!(["1/1", "19/40", "1/1", "21/40"])
    );
    assert_eq!(report["details"]["selection_order"][0]["rho"], "1/5");
    assert_eq!(report["details"]["selection_order"][1]["rho"], "13/40");
    let verdicts = report["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 4);
    assert!(verdicts.iter().all(|v| v["satisfied"] == true));
}

#[test]
fn verify_with_no_axioms_is_empty() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "example.json");
    let outcome = path(&dir, "outcome.json");
    fs::write(&input, EXAMPLE).unwrap();
    fs::write(&outcome, r#"{"committee": [1, 3, 4]}"#).unwrap();
    let res = bwcv(
        &[
            "verify",
            "--in",
            &input,
            "--outcome",
            &outcome,
            "--axioms",
            "",
        ],
        &[],
    );
    assert!(res.status.success());
    let verdicts: Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(verdicts, serde_json::json!([]));
}

#[test]
fn gen_run_verify_pipeline() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "gen.json");
    let report = path(&dir, "report.json");
    let verdicts = path(&dir, "verdicts.json");
    let gen = bwcv(
        &[
            "gen",
            "--n",
            "6",
            "--m",
            "5",
            "--k",
            "3",
            "--density",
            "0.5",
            "--seed",
            "7",
            "--out",
            &input,
        ],
        &[],
    );
    assert!(gen.status.success());
    let again = path(&dir, "gen2.json");
    bwcv(
        &[
            "gen",
            "--n",
            "6",
            "--m",
            "5",
            "--k",
            "3",
            "--density",
            "0.5",
            "--seed",
            "7",
            "--out",
            &again,
        ],
        &[],
    );
    assert_eq!(fs::read(&input).unwrap(), fs::read(&again).unwrap());

    for rule in ["random-dictator", "mes", "bw-mes", "gcr", "bw-gcr"] {
        let res = bwcv(
            &["run", "--rule", rule, "--in", &input, "--out", &report],
            &[],
        );
        assert!(
            res.status.success(),
            "{rule}: {}",
            String::from_utf8_lossy(&res.stderr)
        );
        let res = bwcv(
            &[
                "verify",
                "--in",
                &input,
                "--outcome",
                &report,
                "--axioms",
                "jr,ejr,fjr,gfs,strong-ufs",
                "--out",
                &verdicts,
            ],
            &[],
        );
        assert!(
            res.status.success(),
            "{rule}: {}",
            String::from_utf8_lossy(&res.stderr)
        );
        assert_eq!(json(&verdicts).as_array().unwrap().len(), 5);
    }
    // the guarantees of bw-gcr hold on what it wrote
    bwcv(
        &["run", "--rule", "bw-gcr", "--in", &input, "--out", &report],
        &[],
    );
    let r = json(&report);
    assert!(r["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .all(|v| v["satisfied"] == true));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.json");
    let out = path(&dir, "out.json");
    fs::write(&bad, r#"{"n": 2, "m": 2, "k": 1, "ballots": [[1], []]}"#).unwrap();
    let res = bwcv(&["run", "--rule", "mes", "--in", &bad, "--out", &out], &[]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("voter 2"));

    let res = bwcv(
        &[
            "gen",
            "--n",
            "3",
            "--m",
            "2",
            "--k",
            "3",
            "--density",
            "0.5",
            "--out",
            &out,
        ],
        &[],
    );
    assert_eq!(res.status.code(), Some(2));

    let input = path(&dir, "example.json");
    fs::write(&input, EXAMPLE).unwrap();
    let res = bwcv(
        &["run", "--rule", "bw-mes", "--in", &input, "--out", &out],
        &[("BWCV_MAX_N", "4")],
    );
    assert_eq!(res.status.code(), Some(3));
}

#[test]
fn convert_approval_lines() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "profile.txt");
    let out = path(&dir, "inst.json");
    fs::write(&input, "1 2\n1 3\n4\n").unwrap();
    let res = bwcv(&["convert", "--in", &input, "--k", "2", "--out", &out], &[]);
    assert!(res.status.success());
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "{\n  \"n\": 3,\n  \"m\": 4,\n  \"k\": 2,\n  \"ballots\": [\n    [1, 2],\n    [1, 3],\n    [4]\n  ]\n}\n"
    );
}
