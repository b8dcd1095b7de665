//! End-to-end tests of the command-line binary: exit codes, report files,
//! example expansion, and error handling.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lndcert"))
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lndcert-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn passing_file_exits_zero_and_writes_report() {
    let dir = tmp_dir("pass");
    let file = dir.join("ok.lnd");
    std::fs::write(
        &file,
        "ring R vars x, s, t, u, v\n\
         derivation Delta on R { s -> x^3, t -> s, u -> t, v -> x^2 }\n\
         check kernel Delta [x, 2*x^3*t - s^2]\n",
    )
    .unwrap();
    let report = dir.join("report.json");
    let out = bin()
        .args(["check"])
        .arg(&file)
        .arg("--report")
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("[pass]"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["summary"]["passed"], 1);
    assert!(json["input_digest"]
        .as_str()
        .unwrap()
        .starts_with("sha256:"));
}

#[test]
fn failing_check_exits_one_with_witness() {
    let dir = tmp_dir("fail");
    let file = dir.join("bad.lnd");
    std::fs::write(
        &file,
        "ring R vars x, s, t, u, v\n\
         derivation Delta on R { s -> x^3, t -> s, u -> t, v -> x^2 }\n\
         check kernel Delta [s]\n",
    )
    .unwrap();
    let out = bin().args(["check"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL]"));
}

#[test]
fn inconclusive_exits_two() {
    let dir = tmp_dir("inconclusive");
    let file = dir.join("tight.lnd");
    // s never lands in k[x, f2], so the bounded power search exhausts
    std::fs::write(
        &file,
        "ring R vars x, s, t, u, v\n\
         derivation Delta on R { s -> x^3, t -> s, u -> t, v -> x^2 }\n\
         algebra A = [x, 2*x^3*t - s^2]\n\
         check localized-member s in A via x within 3\n",
    )
    .unwrap();
    let out = bin().args(["check"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stdout(&out));
    assert!(stdout(&out).contains("[inconclusive]"));
}

#[test]
fn parse_error_exits_three_with_position() {
    let dir = tmp_dir("parse");
    let file = dir.join("broken.lnd");
    std::fs::write(&file, "ring R vars x\ncheck frobnicate x\n").unwrap();
    let out = bin().args(["check"]).arg(&file).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2:7"), "stderr: {err}");
    assert!(err.contains("unknown directive"));
}

#[test]
fn example_runs_and_emits() {
    let out = bin().args(["example", "maubach"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let dir = tmp_dir("emit");
    let out = bin()
        .current_dir(&dir)
        .args(["example", "roberts", "--param", "m=2", "--emit-file"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let emitted = std::fs::read_to_string(dir.join("roberts_m2.lnd")).unwrap();
    let mut params = std::collections::BTreeMap::new();
    params.insert("m".to_string(), 2u32);
    assert_eq!(
        emitted,
        lndcert::registry::builtin_text("roberts", &params).unwrap()
    );

    let out = bin()
        .args(["example", "roberts", "--param", "m=1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn maubach_subcommand_prints_json() {
    let out = bin().args(["maubach", "--b", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["n"], 2);
    assert_eq!(json["alpha"]["by_summation"], "1/3");
    assert_eq!(json["coefficient_reading"], "Transposed");
}

#[test]
fn theta_subcommand_prints_expansion() {
    let out = bin()
        .args([
            "theta",
            "--ring",
            "x, s, t, u, v",
            "--derivation",
            "{ s -> x^3, t -> s, u -> t, v -> x^2 }",
            "--of",
            "s",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "s + (x^3)*T");
}

#[test]
fn binary_reports_are_deterministic_modulo_timing() {
    let dir = tmp_dir("determinism");
    let file = dir.join("df5.lnd");
    let text = lndcert::registry::builtin_text("df5", &Default::default()).unwrap();
    std::fs::write(&file, &text).unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("r{i}.json"));
        let out = bin()
            .args(["check"])
            .arg(&file)
            .arg("--report")
            .arg(&path)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let mut json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for check in json["checks"].as_array_mut().unwrap() {
            check["elapsed_ms"] = serde_json::json!(0);
        }
        reports.push(serde_json::to_string(&json).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
}
