//! End-to-end runs of the `pdt` binary: exit codes, output shape, batch
//! manifests and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn pdt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdt"))
        .args(args)
        .env_remove("PDT_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn signature_of_the_gauss_lattice() {
    let out = pdt(&["signature", &fixture("gauss_gram.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["command"], "signature");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["payload"], serde_json::json!({"p": 0, "q": 2, "r": 0}));
}

#[test]
fn kulikov_fixtures() {
    for (file, t) in [("kulikov_point.json", 1), ("kulikov_chain.json", 2), ("kulikov_sphere.json", 3)] {
        let out = pdt(&["kulikov", &fixture(file)]);
        assert_eq!(code(&out), 0, "{file}");
        assert_eq!(json(&out)["payload"]["type"], t, "{file}");
    }
}

#[test]
fn inconsistent_fiber_is_an_input_error() {
    let out = pdt(&["kulikov", &fixture("kulikov_bad.json")]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    assert_eq!(v["status"], "error");
    assert!(!v["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_input_exits_2() {
    let out = pdt(&["signature", &fixture("malformed.json")]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["status"], "error");
    let missing = pdt(&["signature", "/nonexistent/input.json"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn failed_check_exits_1() {
    let out = pdt(&["codim2-check", &fixture("codim2_dim4.json")]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["status"], "fail");
}

#[test]
fn unknown_command_and_usage() {
    let out = pdt(&["frobnicate", &fixture("gauss_gram.json")]);
    assert_eq!(code(&out), 2);
    let help = pdt(&["help"]);
    assert_eq!(code(&help), 0);
    let text = String::from_utf8_lossy(&help.stdout);
    for c in pdt::cli::COMMANDS {
        assert!(text.contains(c), "usage omits {c}");
    }
    let version = pdt(&["--version"]);
    assert_eq!(code(&version), 0);
    assert!(String::from_utf8_lossy(&version.stdout).contains(pdt::cli::VERSION));
}

#[test]
fn text_output() {
    let out = pdt(&["--text", "signature", &fixture("gauss_gram.json")]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains("signature"));
}

#[test]
fn inputs_without_files() {
    let out = pdt(&["gauss-lattice"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["payload"]["has_even_overlattice"], false);
    let out = pdt(&["tube-integral"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn batch_manifest() {
    let out = pdt(&["batch", &fixture("batch_kulikov.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let types: Vec<i64> = v["payload"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["payload"]["type"].as_i64().unwrap())
        .collect();
    assert_eq!(types, vec![1, 2, 3]);
    assert_eq!(v["payload"]["summary"]["ok"], 3);
}

#[test]
fn batch_continues_past_errors() {
    let out = pdt(&["batch", &fixture("batch_with_malformed.json")]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    let s = &v["payload"]["summary"];
    assert_eq!((s["total"].as_i64(), s["ok"].as_i64(), s["error"].as_i64()), (Some(3), Some(2), Some(1)));
    let entries = v["payload"]["entries"].as_array().unwrap();
    assert_eq!(entries[2]["payload"]["q"], 2);
}

#[test]
fn empty_batch() {
    let out = pdt(&["batch", &fixture("batch_empty.json")]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["payload"]["summary"]["total"], 0);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["--seed", "7", "strata-poset", &fixture("strata_golden.json")];
    let a = pdt(&args);
    let b = pdt(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = pdt(&["--seed", "11", "strata-poset", &fixture("strata_golden.json")]);
    assert_eq!(json(&a)["payload"]["covers"], json(&c)["payload"]["covers"]);
}

#[test]
fn strata_golden_covers() {
    let v = json(&pdt(&["strata-poset", &fixture("strata_golden.json")]));
    assert_eq!(v["payload"]["covers"], serde_json::json!([[0, 2], [2, 3], [3, 1], [3, 4]]));
    assert!(v["payload"]["dot"].as_str().unwrap().starts_with("digraph"));
}

#[test]
fn unipotent_monodromy() {
    let out = pdt(&["classify-degeneration", &fixture("case_ii.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["payload"]["case"], "II");
    assert_eq!(v["payload"]["base_change"], 1);
}

#[test]
fn base_change_for_quasi_unipotent_monodromy() {
    let out = pdt(&["monodromy-log", &fixture("case_ii_twisted.json")]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["payload"]["base_change"], 2);
    assert!(v["diagnostics"].as_array().unwrap().iter().any(|d| d.as_str().unwrap().contains("T^2")));

    let limited = Command::new(env!("CARGO_BIN_EXE_pdt"))
        .args(["monodromy-log", &fixture("case_ii_twisted.json")])
        .env("PDT_MAX_ORDER", "1")
        .output()
        .unwrap();
    assert_ne!(code(&limited), 0);
    assert_ne!(json(&limited)["status"], "ok");
}

#[test]
fn batch_paths_resolve_against_the_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("inputs");
    std::fs::create_dir(&sub).unwrap();
    std::fs::copy(fixture("kulikov_chain.json"), sub.join("chain.json")).unwrap();
    let manifest = dir.path().join("manifest.json");
    std::fs::write(
        &manifest,
        r#"{"entries": [
            {"command": "kulikov", "input": "inputs/chain.json"},
            {"command": "signature", "input": {"dim": 2, "gram": [["0", "1"], ["1", "0"]]}},
            {"command": "kulikov", "input": "inputs/missing.json"}
        ]}"#,
    )
    .unwrap();
    let out = pdt(&["batch", manifest.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    let entries = v["payload"]["entries"].as_array().unwrap();
    assert_eq!(entries[0]["payload"]["type"], 2);
    assert_eq!(v["payload"]["summary"]["ok"], 2);
    assert_eq!(v["payload"]["summary"]["error"], 1);
}
