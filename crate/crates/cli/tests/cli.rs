use std::process::{Command, Output};
use std::sync::OnceLock;

use jsonschema::JSONSchema;
use rigidity_cli::scenario::{BundleDesc, Scenario};
use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigidity")).args(args).output().expect("binary runs")
}

fn json_out(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn schema() -> &'static JSONSchema {
    static S: OnceLock<JSONSchema> = OnceLock::new();
    S.get_or_init(|| {
        let text =
            std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/report.schema.json")).unwrap();
        JSONSchema::compile(&serde_json::from_str(&text).unwrap()).expect("schema compiles")
    })
}

fn assert_valid(v: &Value) {
    if let Err(errors) = schema().validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("report does not match the schema: {msgs:?}");
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_us");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn genus_examples() {
    let (code, v) = json_out(&["genus", r#"{"space":{"type":"cp","n":2},"genus":"signature"}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "1");
    assert_valid(&v);

    let (code, v) = json_out(&["genus", r#"{"space":{"type":"hypersurface","m":2,"d":4},"genus":"ahat"}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "2");

    let out = run(&["genus", r#"{"space":{"type":"cp","n":2},"genus":"dirac_cusp"}"#]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("spin condition failed: c1 = 3x"));
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_errors_exit_2_with_position() {
    let out = run(&["genus", r#"{"space":{"type":"cp","n":2},"genus":"signatur"}"#]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 1 column"), "{err}");

    let out = run(&["genus", "/nonexistent/scenario.json"]);
    assert_eq!(out.status.code(), Some(2));

    // weights for CP^2 on CP^3
    let out = run(&[
        "equivariant",
        r#"{"space":{"type":"cp","n":3},"action":{"type":"linear_cp","weights":[0,1,2]},"genus":"todd"}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["genus", r#"{"space":{"type":"cp","n":2},"genus":"euler","bundle":"T"}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scenario_files_are_read() {
    let path = std::env::temp_dir().join(format!("rigidity-scenario-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"space":{"type":"cp","n":4},"genus":"todd","bundle":{"line":[2]}}"#).unwrap();
    let (code, v) = json_out(&["genus", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 0);
    // binomial(6, 4)
    assert_eq!(v["value"], "15");
}

#[test]
fn bundle_syntax() {
    let sc = Scenario::parse(
        r#"{"space":{"type":"cp","n":5},"genus":"todd","bundle":{"tensor":[{"extpower":[2,"T_C"]},{"kroot":[3,1]}]}}"#,
    )
    .unwrap();
    assert_eq!(
        sc.bundle,
        Some(BundleDesc::Tensor(vec![
            BundleDesc::Extpower(2, Box::new(BundleDesc::TangentComplexified)),
            BundleDesc::Kroot(3, 1),
        ]))
    );
    let text = serde_json::to_string(&sc).unwrap();
    assert_eq!(Scenario::parse(&text).unwrap(), sc);
    let (code, v) = json_out(&["genus", &text]);
    assert_eq!(code, 0);
    assert!(v["value"].is_string());
}

#[test]
fn series_and_cyclotomic_output() {
    let (code, v) = json_out(&["genus", r#"{"space":{"type":"hypersurface","m":2,"d":4},"genus":"loop_signature"}"#]);
    assert_eq!(code, 0);
    // --q-order defaults to 4
    assert_eq!(v["series"].as_array().unwrap().len(), 5);
    assert_eq!(v["series"][0], "-16");
    assert_valid(&v);

    let (code, v) =
        json_out(&["genus", r#"{"space":{"type":"cp","n":1},"genus":"chi_y","y":{"root":[3,1]}}"#, "--q-order", "0"]);
    assert_eq!(code, 0);
    // 1 - y at y = -ζ_3, i.e. 1 + ζ_6^2 = ζ_6
    assert_eq!(v["value"], json!({"modulus": 6, "coefficients": ["0", "1"]}));
    assert_valid(&v);
}

#[test]
fn equivariant_examples() {
    let (code, v) = json_out(&[
        "equivariant",
        r#"{"space":{"type":"cp","n":1},"action":{"type":"linear_cp","weights":[0,1]},"genus":"chi_y"}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["coefficients"][0]["value"], "1 - y");
    assert_valid(&v);

    let sc = r#"{"space":{"type":"cp","n":3},"action":{"type":"linear_cp","weights":[0,1,2,3]},"genus":"loop_signature","options":{"q_order":3}}"#;
    let (code, v) = json_out(&["equivariant", sc]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 4);
    let (_, g) =
        json_out(&["genus", r#"{"space":{"type":"cp","n":3},"genus":"loop_signature","options":{"q_order":3}}"#]);
    for (c, s) in coeffs.iter().zip(g["series"].as_array().unwrap()) {
        assert_eq!(c["constant"], true);
        assert_eq!(&c["value"], s);
    }

    let (code, v) = json_out(&[
        "equivariant",
        r#"{"space":{"type":"cp","n":2},"action":{"type":"linear_cp","weights":[0,1,2]},"genus":"signature","bundle":"T_C"}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "non-constant");
    assert_eq!(v["coefficients"][0]["constant"], false);
    assert!(!v["coefficients"][0]["numerator"].as_array().unwrap().is_empty());
    assert_valid(&v);
}

#[test]
fn cover_override_keeps_the_answer() {
    let base = r#"{"space":{"type":"cp","n":3},"action":{"type":"linear_cp","weights":[0,1,1,3]},"genus":"ahat"}"#;
    let (_, a) = json_out(&["equivariant", base]);
    let (_, b) =
        json_out(&["equivariant", &base.replace(r#""genus":"ahat""#, r#""genus":"ahat","options":{"cover":4}"#)]);
    assert_eq!(a["cover"], 2);
    assert_eq!(b["cover"], 4);
    assert_eq!(a["verdict"], "pass");
    assert_eq!(a["coefficients"][0]["value"], b["coefficients"][0]["value"]);
}

#[test]
fn equivariant_needs_an_action() {
    let out = run(&["equivariant", r#"{"space":{"type":"cp","n":2},"genus":"todd"}"#]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "genus",
        r#"{"space":{"type":"cp","n":1},"action":{"type":"linear_cp","weights":[0,1]},"genus":"todd"}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_output() {
    let out = run(&["genus", r#"{"space":{"type":"cp","n":2},"genus":"signature"}"#, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "key,value\nvalue,1\n");
    let out = run(&["verify", "--suite", "vanishing", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("id,label,verdict,elapsed_us,detail\n"));
    assert_eq!(text.lines().count(), 27);
}

#[test]
fn verify_suites_pass() {
    for (suite, count) in
        [("classical", 123), ("localization", 50), ("vanishing", 26), ("structure", 112), ("rigidity", 126)]
    {
        let (code, v) = json_out(&["verify", suite, "--seed", "7"]);
        assert_eq!(code, 0, "{suite}: {v}");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["checks"].as_array().unwrap().len(), count, "{suite}");
        assert_eq!(v["failed"], 0);
        assert_valid(&v);
    }
}

#[test]
fn verify_is_deterministic_for_a_seed() {
    let (_, mut a) = json_out(&["verify", "localization", "--seed", "11"]);
    let (_, mut b) = json_out(&["verify", "localization", "--seed", "11"]);
    strip_timing(&mut a);
    strip_timing(&mut b);
    assert_eq!(a, b);
    let (_, mut c) = json_out(&["verify", "localization", "--seed", "12"]);
    strip_timing(&mut c);
    assert_ne!(a["checks"], c["checks"]);
}

#[test]
fn replay_reproduces_failures() {
    let bad = r#"{"kind":"value","scenario":{"space":{"type":"cp","n":2},"genus":"signature"},"expected":"2"}"#;
    let (code, mut first) = json_out(&["replay", bad]);
    assert_eq!(code, 1);
    assert_valid(&first);
    assert_eq!(first["result"]["verdict"], "fail");
    assert_eq!(first["result"]["detail"], r#"got "1", expected "2""#);

    // feed the serialized failure back in
    let record = first["result"].to_string();
    let (code, mut second) = json_out(&["replay", &record]);
    assert_eq!(code, 1);
    strip_timing(&mut first);
    strip_timing(&mut second);
    assert_eq!(first, second);

    let good = r#"{"kind":"higher_vanishing","weights":[0,0,1,1,2,2],"order":3,"level":2,"codim":8}"#;
    let (code, v) = json_out(&["replay", good]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "pass");
    assert!(v["result"].get("counterexample").is_none());
}

#[test]
fn failing_equivariant_check_exits_1() {
    // The Todd character of this action is constant 1; claiming it vanishes fails.
    let check = r#"{"kind":"character_vanishes","scenario":{"space":{"type":"cp","n":2},"action":{"type":"linear_cp","weights":[0,1,3]},"genus":"todd"}}"#;
    let (code, v) = json_out(&["replay", check]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["detail"], "q^0: 1");
}
