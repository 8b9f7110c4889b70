use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn spinctl(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spinctl"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn analyze(config: &str, extra: &[&str]) -> (i32, Value) {
    let mut args = vec!["analyze", "-"];
    args.extend_from_slice(extra);
    let out = spinctl(&args, config);
    let code = out.status.code().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, report)
}

const CASE_A: &str = r#"{"n":3,"gamma":["1","1","1"],
    "couplings":[{"k":1,"l":2,"J":"1"},{"k":2,"l":3,"J":"1"}]}"#;

#[test]
fn equal_ratios_are_not_controllable() {
    let (code, r) = analyze(CASE_A, &[]);
    assert_eq!(code, 0);
    assert_eq!(r["closure_dimension"], 4);
    assert_eq!(r["operator_controllable"]["value"], false);
    assert_eq!(r["state_controllable"]["value"], false);
    assert_eq!(r["operator_controllable"]["tag"], "closure_rank");
    assert_eq!(r["center_dimension"], 1);
}

#[test]
fn disconnected_distinct_ratios_decompose() {
    let cfg = r#"{"n":3,"gamma":["1","2","3"],"couplings":[{"k":1,"l":2,"J":"1"}]}"#;
    let (code, r) = analyze(cfg, &[]);
    assert_eq!(code, 0);
    assert_eq!(r["decomposition"], serde_json::json!([15, 3]));
    assert_eq!(r["closure_dimension"], 18);
    assert_eq!(r["operator_controllable"]["value"], false);
    assert_eq!(r["state_controllable"]["value"], false);
}

#[test]
fn connected_distinct_ratios_use_the_shortcut() {
    let cfg =
        r#"{"n":3,"gamma":["1","2","3"],"couplings":[{"k":1,"l":2,"J":"1"},{"k":2,"l":3,"M":"1","N":"0","P":"1/2"}]}"#;
    let (code, r) = analyze(cfg, &["--basis"]);
    assert_eq!(code, 0);
    let op = &r["operator_controllable"];
    assert_eq!(op["value"], true);
    assert_eq!(op["tag"], "distinct_ratio_connectivity");
    assert_eq!(op["cross_check"]["tag"], "closure_rank");
    assert_eq!(op["cross_check"]["agrees"], true);
    let basis = r["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 63);
    assert!(basis[0].as_object().unwrap().keys().all(|w| w.len() == 3));
}

#[test]
fn cap_gives_partial_report() {
    let cfg = r#"{"n":3,"gamma":["1","1","2"],"couplings":[{"k":1,"l":3,"J":"1"},{"k":2,"l":3,"J":"1"}]}"#;
    let (code, r) = analyze(cfg, &["--cap", "10"]);
    assert_eq!(code, 0);
    assert!(r["closure_skipped"].is_string());
    assert!(r["closure_dimension"].is_null());
    assert!(r["operator_controllable"]["value"].is_null());
}

#[test]
fn axes_override_records_the_omitted_drift() {
    let cfg = r#"{"n":2,"gamma":["1","2"],"couplings":[{"k":1,"l":2,"J":"1"}]}"#;
    let (code, r) = analyze(cfg, &["--axes", "x,y"]);
    assert_eq!(code, 0);
    assert_eq!(r["closure_dimension"], 15);
    assert_eq!(r["control_axes"], serde_json::json!(["x", "y"]));
    assert!(r["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("z control")));
}

#[test]
fn input_errors_exit_with_two() {
    for bad in [
        "{",
        r#"{"n":2,"gamma":["1","2"],"couplings":[{"k":1,"l":2,"J":"1","M":"1"}]}"#,
        r#"{"n":2,"gamma":["1",0.5]}"#,
        r#"{"n":2,"gamma":["1","2"],"couplings":[{"k":1,"l":1,"J":"1"}]}"#,
        r#"{"n":2,"gamma":["1","2"],"couplings":[{"k":1,"l":3,"J":"1"}]}"#,
    ] {
        let (code, _) = analyze(bad, &[]);
        assert_eq!(code, 2, "{bad}");
    }
    assert_eq!(spinctl(&["cases", "no-such-case"], "").status.code(), Some(2));
}

#[test]
fn case_selector_prints_one_row() {
    let out = spinctl(&["cases", "b-iii-J12zero"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<_> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].starts_with("b-iii-J12zero"));
    assert!(rows[0].contains(" 36 ") && rows[0].ends_with("PASS"));
}

#[test]
fn oracle_check_agrees() {
    let out = spinctl(&["oracle-check", "-"], CASE_A);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["exact_dimension"], 4);
    assert_eq!(r["oracle_dimension"], 4);
    assert_eq!(r["agree"], true);
}
