//! End-to-end tests of the `gsp` binary: pinned outputs, exit codes, JSON
//! file plumbing, and report determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_gsp");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_line(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

const MIXED_SUBGROUP: &str = r#"{"ell":3,"precision":2,"ambient_rank":2,"generators":[{"coords":["1","0"],"order_exp":2},{"coords":["0","3"],"order_exp":1}]}"#;

#[test]
fn pinned_outputs_are_byte_exact() {
    assert_eq!(
        stdout_line(&run(&["gamma", "simple", "--g", "2"])),
        "{\"value\":\"4/11\"}\n"
    );
    assert_eq!(
        stdout_line(&run(&[
            "group", "order", "--family", "sp", "--g", "1", "--ell", "3", "--level", "2",
            "--method", "formula"
        ])),
        "{\"order\":\"648\"}\n"
    );
    assert_eq!(
        stdout_line(&run(&["exceptional", "--g", "10"])),
        "{\"exceptional\":true,\"witness\":{\"kind\":\"binomial\",\"k\":3}}\n"
    );
    assert_eq!(
        stdout_line(&run(&["exceptional", "--g", "4"])),
        "{\"exceptional\":true,\"witness\":{\"kind\":\"power\",\"k\":3,\"a\":1}}\n"
    );
    assert_eq!(
        stdout_line(&run(&["exceptional", "--g", "5"])),
        "{\"exceptional\":false}\n"
    );
}

#[test]
fn order_methods_agree() {
    let mut orders = Vec::new();
    for method in ["formula", "hensel", "enumerate"] {
        let out = stdout_line(&run(&[
            "group", "order", "--family", "gsp", "--g", "1", "--ell", "3", "--level", "2",
            "--method", method,
        ]));
        orders.push(out);
    }
    assert_eq!(orders[0], "{\"order\":\"3888\"}\n");
    assert_eq!(orders[0], orders[1]);
    assert_eq!(orders[0], orders[2]);
}

#[test]
fn torsion_invariants_of_a_mixed_order_subgroup() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("subgroup.json");
    std::fs::write(&path, MIXED_SUBGROUP).unwrap();
    let p = path.to_str().unwrap();

    assert_eq!(
        stdout_line(&run(&["torsion", "m1", "--input", p])),
        "{\"m1\":\"1\",\"m\":\"1\",\"totally_isotropic\":false}\n"
    );
    assert_eq!(
        stdout_line(&run(&["torsion", "delta", "--input", p])),
        "{\"level\":\"2\",\"m1\":\"1\",\"stabilizer_order\":\"9\",\"multiplier_image_order\":\"3\",\"delta\":\"2\",\"lower\":\"2\",\"upper\":\"3\",\"within_bracket\":true}\n"
    );
    assert_eq!(
        stdout_line(&run(&["torsion", "stabilizer", "--input", p, "--family", "sp"])),
        "{\"family\":\"sp\",\"level\":\"2\",\"order\":\"3\",\"group_order\":\"648\",\"index\":\"216\"}\n"
    );
    assert_eq!(
        stdout_line(&run(&["torsion", "stabilizer", "--input", p, "--family", "gsp"])),
        "{\"family\":\"gsp\",\"level\":\"2\",\"order\":\"9\",\"group_order\":\"3888\",\"index\":\"432\"}\n"
    );
    assert_eq!(
        stdout_line(&run(&["torsion", "type", "--input", p])),
        "{\"order_exponents\":[\"2\",\"1\"],\"levels\":[\"2\",\"1\"],\"multiplicities\":[\"1\",\"1\"]}\n"
    );
}

#[test]
fn subgroups_can_be_read_from_stdin() {
    let out = run_with_stdin(&["torsion", "m1"], MIXED_SUBGROUP);
    assert_eq!(
        stdout_line(&out),
        "{\"m1\":\"1\",\"m\":\"1\",\"totally_isotropic\":false}\n"
    );
}

#[test]
fn lattice_completion_round_trip() {
    let lattice = r#"{"ell":3,"precision":2,"ambient_rank":2,"rank":1,"generators":{"ell":3,"precision":2,"rows":2,"cols":1,"entries":["1","0"]}}"#;
    let out = run_with_stdin(&["lattice", "complete"], lattice);
    assert_eq!(
        stdout_line(&out),
        "{\"basis\":{\"ell\":3,\"precision\":2,\"rows\":2,\"cols\":2,\"entries\":[\"1\",\"0\",\"0\",\"1\"]}}\n"
    );
}

#[test]
fn gamma_product_reports_the_maximizing_subsets() {
    let out = stdout_line(&run(&[
        "gamma", "product", "--factor", "g=1,n=1", "--factor", "g=2,n=1",
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], "1/2");
    assert_eq!(v["maximizers"], serde_json::json!([["g=1,n=1"]]));
    assert_eq!(v["table"].as_array().unwrap().len(), 3);
}

#[test]
fn json_flag_writes_the_output_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&[
        "gamma",
        "simple",
        "--g",
        "2",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "stdout must stay empty with --json");
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "{\"value\":\"4/11\"}\n"
    );
}

#[test]
fn invalid_inputs_exit_with_code_two() {
    // Malformed JSON.
    let out = run_with_stdin(&["torsion", "m1"], "{\"not json");
    assert_eq!(out.status.code(), Some(2));
    // Unknown suite.
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    // Unknown family.
    assert_eq!(
        run(&["group", "order", "--family", "sl", "--g", "1", "--ell", "3", "--level", "1"])
            .status
            .code(),
        Some(2)
    );
    // Missing profile argument for a parabolic family.
    assert_eq!(
        run(&["group", "order", "--family", "p", "--g", "1", "--ell", "3", "--level", "1"])
            .status
            .code(),
        Some(2)
    );
    // Composite modulus.
    assert_eq!(
        run(&["group", "order", "--family", "sp", "--g", "1", "--ell", "4", "--level", "1"])
            .status
            .code(),
        Some(2)
    );
    // A declared multiplier that contradicts the matrix.
    let forged = r#"{"matrix":{"ell":5,"precision":1,"rows":2,"cols":2,"entries":["2","0","0","1"]},"multiplier":"3"}"#;
    let out = run_with_stdin(&["group", "factorize"], forged);
    assert_eq!(out.status.code(), Some(2));
    // Out-of-range generator index.
    let out = run_with_stdin(
        &["torsion", "pairing", "--p", "0", "--q", "7"],
        MIXED_SUBGROUP,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_overruns_exit_with_code_four() {
    let out = run(&[
        "group",
        "order",
        "--family",
        "sp",
        "--g",
        "3",
        "--ell",
        "5",
        "--level",
        "4",
        "--method",
        "enumerate",
    ]);
    assert_eq!(out.status.code(), Some(4));
    // Tightening the budget flag forces the same outcome on a small group.
    let out = run(&[
        "group",
        "order",
        "--family",
        "sp",
        "--g",
        "2",
        "--ell",
        "3",
        "--level",
        "1",
        "--method",
        "enumerate",
        "--budget-log2",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reports_are_stable_and_sorted() {
    let a = stdout_line(&run(&["verify", "orders", "--seed", "5"]));
    let b = stdout_line(&run(&["verify", "orders", "--seed", "5"]));
    let strip = |s: &str| {
        let v: serde_json::Value = serde_json::from_str(s).unwrap();
        let mut v = v;
        v["generated_at"] = serde_json::json!("X");
        v
    };
    assert_eq!(strip(&a), strip(&b), "identical configs must agree");

    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted, "checks must be sorted by id");
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["summary"]["total"].as_u64().unwrap(), ids.len() as u64);
}

#[test]
fn every_documented_suite_runs_clean_with_small_trials() {
    for suite in [
        "orders",
        "hensel",
        "prs",
        "lemma2-11",
        "lemma2-4",
        "completion",
        "torsion-mu",
        "abel",
        "prop63",
        "gamma-search",
    ] {
        let out = run(&["verify", suite, "--trials", "5", "--seed", "11"]);
        assert!(
            out.status.success(),
            "suite {suite} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v: serde_json::Value =
            serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
        assert_eq!(v["summary"]["failed"], 0, "suite {suite} reported failures");
        assert_eq!(v["suite"], suite);
    }
}

#[test]
fn search_and_closed_form_agree_through_the_cli() {
    let search = stdout_line(&run(&["gamma", "search", "--g", "2"]));
    let v: serde_json::Value = serde_json::from_str(&search).unwrap();
    assert_eq!(v["value"], "4/11");
    let canonical = serde_json::json!({
        "levels": ["1"],
        "multiplicities": ["4"],
        "flags": [["2", "2"]]
    });
    assert!(
        v["maximizers"].as_array().unwrap().contains(&canonical),
        "canonical full-level maximizer missing: {search}"
    );
}
