use std::process::Command;

use serde_json::Value;
use twdr_core::cli::commands::verify_report;
use twdr_core::cli::report::VerificationReport;
use twdr_core::cli::{Common, Format};

fn twdr(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twdr")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, out) = twdr(&all);
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

#[test]
fn verify_examples() {
    let (code, v) = json(&["verify", "x^2+y^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["milnor_number"], 2);
    assert_eq!(v["match"], true);
    assert_eq!(v["oracle"]["kind"], "milnor-orlik");
    let qs: Vec<&str> = v["parts"][0]["residues"].as_array().unwrap().iter().map(|r| r["q"].as_str().unwrap()).collect();
    assert_eq!(qs, ["1/6", "5/6"]);

    let (code, v) = json(&["verify", "x+x^2*y", "-n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["milnor_number"], 0);
    assert_eq!(v["parts"], Value::Array(vec![]));

    let (code, v) = json(&["verify", "x^2+y^2+z^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["parts"][0]["residues"][0]["q"], "1/2");
}

#[test]
fn schema_keys() {
    let (_, v) = json(&["verify", "x^3-3*x"]);
    let mut keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["certificates_ok", "exit", "input", "match", "milnor_number", "oracle", "parts"]);
    let mut input: Vec<&str> = v["input"].as_object().unwrap().keys().map(String::as_str).collect();
    input.sort_unstable();
    assert_eq!(input, ["f", "nvars", "order", "seed", "trunc"]);
    assert_eq!(v["parts"][0]["critical_value"]["rational"], "-2");
    let (_, v) = json(&["verify", "x^3-2*x"]);
    assert_eq!(v["parts"][0]["critical_value"]["minpoly"], "t^2-32/27");
}

#[test]
fn exit_codes() {
    assert_eq!(twdr(&["verify", "x^^2"]).0, 2);
    assert_eq!(twdr(&["verify", "x^-2"]).0, 2);
    assert_eq!(twdr(&["verify", "x^2*y^2"]).0, 2);
    assert_eq!(twdr(&["verify", "x^2", "--order", "lex"]).0, 2);
    assert_eq!(twdr(&["koszul", "0"]).0, 2);
    assert_eq!(twdr(&["example13", "x^2+y"]).0, 2);
    assert_eq!(twdr(&["nonsense"]).0, 2);
    assert_eq!(twdr(&["verify", "x^4+x^5"]).0, 0);
}

#[test]
fn json_is_byte_stable() {
    let a = twdr(&["verify", "x^3-3*x+y^2", "--format", "json", "--seed", "5"]);
    let b = twdr(&["verify", "x^3-3*x+y^2", "--format", "json", "--seed", "5"]);
    assert_eq!(a, b);
}

#[test]
fn text_and_json_agree() {
    let common = Common { nvars: None, order: "degrevlex".into(), trunc: None, seed: 0, format: Format::Json, jordan: true };
    for f in ["x^2+y^3", "x^3-3*x", "x^3-2*x", "x^4+y^4"] {
        let mut report = verify_report(f, &common).unwrap();
        report.millis = None;
        let back: VerificationReport = serde_json::from_str(&report.to_json()).unwrap();
        let strip = |r: &VerificationReport| {
            let mut r = r.clone();
            r.stages.clear();
            r.oracle_note = None;
            r.to_text()
        };
        assert_eq!(strip(&back), strip(&report), "{f}");
    }
}

#[test]
fn example13_and_koszul() {
    let (code, v) = json(&["example13", "t^3-3*t", "--trials", "10"]);
    assert_eq!(code, 0);
    assert_eq!((v["laurent_rank"].as_u64(), v["formula_rank"].as_u64(), v["agree"].as_bool()), (Some(4), Some(6), Some(false)));
    let (code, text) = twdr(&["example13", "t^2", "--trials", "10"]);
    assert_eq!(code, 0);
    assert!(text.contains("laurent rank: 2"));
    let (code, v) = json(&["koszul", "2", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["residues"][1]["q"], "1/2");
}

#[test]
fn batch_manifests() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.jsonl");
    std::fs::write(
        &good,
        concat!(
            r#"{"name":"cusp","cmd":"verify","args":["x^2+y^3"],"expect":{"exit":0,"parts":[{"critical_value":{"rational":"0"},"rank":2,"residues":[{"q":"7/6","mult":1},{"q":"5/6","mult":1}]}]}}"#,
            "\n",
            r#"{"name":"koszul","cmd":"koszul","args":["3"],"expect":{"rank":3}}"#,
            "\n",
            r#"{"name":"bad-input","cmd":"verify","args":["x^2*y^2"],"expect":"error"}"#,
            "\n"
        ),
    )
    .unwrap();
    let out = dir.path().join("reports");
    let (code, v) = json(&["batch", good.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["passed"], 3);
    assert!(out.join("cusp.json").exists());
    assert!(out.join("summary.json").exists());

    let wrong = dir.path().join("wrong.jsonl");
    std::fs::write(
        &wrong,
        r#"{"name":"x2","cmd":"verify","args":["x^2"],"expect":{"parts":[{"critical_value":{"rational":"0"},"rank":1,"residues":[{"q":"1/3","mult":1}]}]}}"#,
    )
    .unwrap();
    let (code, text) = twdr(&["batch", wrong.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(text.contains("FAIL"));

    let empty = dir.path().join("empty.jsonl");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(twdr(&["batch", empty.to_str().unwrap()]).0, 0);

    let broken = dir.path().join("broken.jsonl");
    std::fs::write(&broken, "{not json\n").unwrap();
    assert_eq!(twdr(&["batch", broken.to_str().unwrap()]).0, 2);
    assert_eq!(twdr(&["batch", dir.path().join("missing.jsonl").to_str().unwrap()]).0, 2);
}
