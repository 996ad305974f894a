use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn prym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prym")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("prym-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn pn_case_n3() {
    let out = prym(&["builtin", "pn-case", "--n", "3", "--gx", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    assert_eq!(report["q"], 3);
    let paper = &report["models"][0];
    assert_eq!(paper["model"], "paper");
    assert_eq!(paper["genus"], 5);
    assert_eq!(paper["dim_p"], 1);
    assert_eq!(report["models"][1]["dim_p"], 1);
}

#[test]
fn hyperelliptic_g3() {
    let out = prym(&["builtin", "hyperelliptic", "--g", "3", "--model", "paper"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["q"], 3);
    assert_eq!(report["models"].as_array().unwrap().len(), 1);
    let m = &report["models"][0];
    assert_eq!((m["genus"].clone(), m["dim_p"].clone(), m["ramification_degree"].clone()), (7.into(), 2.into(), 30.into()));
    let names: Vec<&str> =
        m["nesting"]["points"].as_array().unwrap().iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["P_{1,1}", "P_{1,2}", "P_{1,3}"]);
}

#[test]
fn verify_identity_subset() {
    for (n, a, b, c) in [(7, "6", "-5", "15"), (12, "11", "-10", "55")] {
        let out = prym(&["verify-identity", "--kind", "subset", "--n", &n.to_string()]);
        assert_eq!(out.status.code(), Some(0));
        let id = json(&out);
        assert_eq!((id["a"].as_str(), id["b"].as_str(), id["c"].as_str()), (Some(a), Some(b), Some(c)));
        assert_eq!(id["q"], n);
        assert_eq!(id["verified"], true);
    }
}

#[test]
fn grid_without_exponent_exits_2() {
    let out = prym(&["verify-identity", "--kind", "grid", "--m", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["q"].is_null());
    let out = prym(&["verify-identity", "--kind", "grid", "--m", "3", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("exponent q                 3"));
}

#[test]
fn json_is_byte_stable() {
    let out = prym(&["builtin", "pn-case", "--n", "4", "--gx", "2"]);
    let value = json(&out);
    let mut again = serde_json::to_string_pretty(&value).unwrap();
    again.push('\n');
    assert_eq!(again.as_bytes(), &out.stdout[..]);
    // the quoted n = 4 genus is flagged
    assert_eq!(value["claimed_genus"]["consistent"], false);
    assert_eq!(value["claimed_genus"]["dim_p_with_claimed"], "5/2");
}

#[test]
fn scenario_file_roundtrip() {
    let first = prym(&["builtin", "pn-case", "--n", "2", "--gx", "3"]);
    let scenario = json(&first)["scenario"].to_string();
    let path = scratch("scenario.json", &scenario);
    let second = prym(&["run", path.to_str().unwrap()]);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    std::fs::remove_file(path).ok();
}

#[test]
fn covering_scenario() {
    let path = scratch(
        "covering.json",
        r#"{"degree": 9, "base_genus": 0, "special_fibers": [[2,1,1,1,1,1,1,1]], "upstairs_genus": 7}"#,
    );
    let out = prym(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = json(&out);
    assert_eq!(summary["upstairs_genus"], 7);
    assert_eq!(summary["ramification_degree"], 30);
    std::fs::remove_file(path).ok();
}

#[test]
fn validation_errors_exit_1() {
    let bad = scratch("bad.json", r#"{"kind": "subset", "n": 3, "gx": 1, "special_fibers": [[[1,2],[2,3]]]}"#);
    let out = prym(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("special_fibers"));
    std::fs::remove_file(bad).ok();

    assert_eq!(prym(&["run", "/nonexistent/scenario.json"]).status.code(), Some(1));
    assert_eq!(prym(&["builtin", "pn-case", "--n", "9", "--gx", "1"]).status.code(), Some(1));
    assert_eq!(prym(&["builtin", "hyperelliptic", "--g", "1"]).status.code(), Some(1));
    assert_eq!(prym(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(prym(&["--help"]).status.code(), Some(0));
}

#[test]
fn table_output_names_both_models() {
    let out = prym(&["builtin", "pn-case", "--n", "2", "--gx", "1", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("paper") && text.contains("monodromy"), "{text}");
}
