//! The command line, driven through the built binary.

use std::process::Command;

use serde_json::Value;

fn semieq(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_semieq")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, stdout, stderr) = semieq(&full);
    let value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout} {stderr}"));
    (code, value)
}

const ZRB: &str = "zrb:4x4:1101,1100,0101,0010";

#[test]
fn psolve_reports_the_least_witness() {
    let (code, r) = json(&[
        "psolve",
        "--eq",
        "params: a b; vars: x y; eq: x^13*y^24*a^2*b^5 = x^10*y^16*a^13*b^19",
        "--params",
        "2,3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], true);
    assert_eq!(r["witnesses"][0]["values"], serde_json::json!([8, 5]));
    assert_eq!(r["witnesses"][0]["common_value"], 243);
    assert_eq!(r["witnesses"][1]["common_value"], 275);
    for field in ["command", "inputs", "verdict", "rationale", "witnesses", "discrepancies", "elapsed_ms"] {
        assert!(r.get(field).is_some(), "{field}");
    }
}

#[test]
fn weakened_basis_versus_oracle_on_the_band() {
    let (code, r) = json(&["check", "--semigroup", ZRB, "--system", "esolid2"]);
    assert_eq!((code, &r["verdict"]), (0, &Value::Bool(true)));
    let (code, r) = json(&["classify", "--semigroup", ZRB]);
    assert_eq!(code, 1);
    let rows = r["witnesses"].as_array().unwrap();
    let esolid = rows.iter().find(|row| row["class"] == "esolid").unwrap();
    assert_eq!(esolid["oracle"], false);
    let disagreements = r["discrepancies"].as_array().unwrap();
    assert_eq!(disagreements.len(), 1);
    assert_eq!(disagreements[0]["class"], "esolid2");
}

#[test]
fn nr_on_t3_and_u() {
    assert_eq!(semieq(&["check", "--semigroup", "T:3", "--system", "nr"]).0, 0);
    assert_eq!(semieq(&["check", "--semigroup", "U3", "--system", "nr"]).0, 1);
}

#[test]
fn inline_systems_and_table_files() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("z2.txt");
    std::fs::write(&table, "# Z2\n2\n0 1\n1 0\nlabels: e g\n").unwrap();
    let t = table.to_str().unwrap();
    let (code, stdout, _) =
        semieq(&["check", "--semigroup", t, "--system", "forall a. exists x. a*x = x*a & a*x*a = a"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("verdict: true"));
    let system = dir.path().join("band.eq");
    std::fs::write(&system, "forall a. a^2 = a\n").unwrap();
    let (code, stdout, _) = semieq(&["check", "--semigroup", t, "--system", system.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("refutation: a=g"), "{stdout}");
}

#[test]
fn transforms_print_their_results() {
    let (code, stdout, _) = semieq(&["skolemize", "--system", "regular"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "skolem: f/1\nforall a. a*f(a)*a = a\n");
    let (code, stdout, _) = semieq(&["localize", "--system", "exists x. x = x"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("forall A. exists X x. X in V(A)"), "{stdout}");
}

#[test]
fn universal_and_green() {
    assert_eq!(semieq(&["universal", "--eq", "x1*x2 = x2*x1"]).0, 0);
    assert_eq!(semieq(&["universal", "--eq", "x = x^2"]).0, 1);
    let (code, stdout, _) = semieq(&["green", "--semigroup", "brandt:2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("*(1,1)") && stdout.contains("D-class 1 (4 elements)"));
}

#[test]
fn crossval_and_closure_exit_codes() {
    assert_eq!(semieq(&["crossval", "--class", "inverse"]).0, 0);
    assert_eq!(semieq(&["crossval", "--class", "esolid2"]).0, 1);
    assert_eq!(semieq(&["closure", "--class", "group", "--op", "both"]).0, 0);
    let (code, r) = json(&["closure", "--class", "maxj", "--op", "P"]);
    assert_eq!(code, 1);
    assert!(r["discrepancies"]
        .as_array()
        .unwrap()
        .iter()
        .any(|d| d["left"] == "null:2" && d["right"] == "null:2" && d["suite"] == "class_P"));
}

#[test]
fn manifests_replace_the_builtin_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("corpus.txt");
    std::fs::write(&manifest, "b2 = brandt:2\nz3 = Zn:3\n").unwrap();
    let (code, r) = json(&["--corpus", manifest.to_str().unwrap(), "crossval", "--class", "inverse"]);
    assert_eq!(code, 0);
    assert_eq!(r["inputs"]["corpus_size"], 2);
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    assert_eq!(semieq(&["check", "--semigroup", "Zn:0", "--system", "group"]).0, 2);
    assert_eq!(semieq(&["check", "--semigroup", "Zn:2", "--system", "forall a. a = b"]).0, 2);
    assert_eq!(semieq(&["frobnicate"]).0, 2);
    assert_eq!(semieq(&["closure", "--class", "group", "--op", "Q"]).0, 2);
    assert_eq!(semieq(&["universal", "--eq", "params: a ; vars: x ; eq: x = a"]).0, 2);
    let (code, _, stderr) =
        semieq(&["--budget", "10", "check", "--semigroup", "T:3", "--system", "forall a b c d. a*b*c*d = a*(b*c)*d"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("budget of 10 exceeded"), "{stderr}");
}

#[test]
fn json_reports_are_deterministic_apart_from_timing() {
    let strip = |mut v: Value| {
        v["elapsed_ms"] = Value::Null;
        v
    };
    let a = strip(json(&["check", "--semigroup", "brandt:2", "--system", "inverse"]).1);
    let b = strip(json(&["check", "--semigroup", "brandt:2", "--system", "inverse"]).1);
    assert_eq!(a, b);
}
