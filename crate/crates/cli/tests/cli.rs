use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finepoints"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["schema"], "finepoints/1");
    v
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn temp_defs(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("finepoints-{}-{name}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn projective_line_over_z6_has_twelve_points() {
    let out = run(&["compute", "points", "P1", "Z6_discrete"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["count"], 12);
    assert_eq!(v["points"].as_array().unwrap().len(), 12);
}

#[test]
fn adic_projective_line_neighbourhood() {
    let out = run(&["compute", "topology", "P1", "Z4_2adic"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let entry = v["topology"]["min_nbhds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["point"] == "chart0:s=0")
        .unwrap();
    assert_eq!(
        entry["min_nbhd"],
        serde_json::json!(["chart0:s=0", "chart0:s=2"])
    );
    assert!(v["topology"]["opens"].is_array());
}

#[test]
fn units_of_z6() {
    let v = json(&run(&["compute", "points", "Gm", "Z6_discrete"]));
    assert_eq!(v["count"], 2);
}

#[test]
fn affine_topology_target() {
    let out = run(&["compute", "affine-topology", "A1", "Z4_2adic"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["points"][2]["label"], "T=2");
    assert_eq!(
        v["topology"]["min_nbhds"][0]["min_nbhd"],
        serde_json::json!(["T=0", "T=2"])
    );
    assert_eq!(
        code(&run(&["compute", "affine-topology", "P1", "Z4_2adic"])),
        2
    );
}

#[test]
fn check_exit_codes() {
    assert_eq!(code(&run(&["check", "F2", "Z4_2adic"])), 0);

    let out = run(&["check", "local-coverage", "SpecZ6_D3D4", "Z6_discrete"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["witness"]["kind"], "uncovered");
    assert_eq!(v["witness"]["label"], "chart0:pt");

    assert_eq!(
        code(&run(&["check", "F6", "SpecZ6_D3D4", "Z6_discrete"])),
        0
    );
}

#[test]
fn check_probe_axioms() {
    let out = run(&["check", "F3", "origin_in_A1", "Z4_2adic"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["witness"]["labels"], serde_json::json!(["x=0"]));

    let out = run(&["check", "F4*", "D(T)", "Z4_indiscrete"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["witness"]["image"], serde_json::json!([1, 3]));

    assert_eq!(code(&run(&["check", "F1", "A1xA1", "Z4_pt0"])), 0);
    assert_eq!(code(&run(&["check", "F5", "P1", "Z4_2adic"])), 0);
    assert_eq!(
        code(&run(&[
            "check",
            "product-analog",
            "P1",
            "Z2_discrete,Z3_discrete"
        ])),
        0
    );
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["check", "F2", "nope"][..],
        &["check", "F9", "Z4_2adic"],
        &["check", "F3", "nope", "Z4_2adic"],
        &["check", "F2", "Z4_2adic", "extra"],
        &["compute", "points", "nope", "Z4_2adic"],
        &["compute", "bogus", "P1", "Z4_2adic"],
        &["suite", "nope"],
        &["check", "product-analog", "P1", "Z6_discrete"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn resource_cap_exits_two() {
    let out = run(&[
        "--max-candidates",
        "2",
        "compute",
        "points",
        "P1",
        "Z6_discrete",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource limit"));
}

#[test]
fn default_suite_agrees() {
    let out = run(&["suite", "default"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["all_agree"], true);
    assert_eq!(v["characterizations"].as_array().unwrap().len(), 6);
}

#[test]
fn corrupted_ring_table_exits_two() {
    // 1 + 1 = 1 breaks additive inverses
    let path = temp_defs(
        "corrupt",
        r#"{"rings": {"Z4": {"kind": "table", "add": [[0,1],[1,1]], "mul": [[0,0],[0,1]], "zero": 0, "one": 1}}}"#,
    );
    let out = run(&["--defs", path.to_str().unwrap(), "suite", "default"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("ring axiom"));
}

#[test]
fn user_definitions_extend_builtin() {
    let path = temp_defs(
        "extend",
        r#"{"rings": {"Z8": {"kind": "zmod", "n": 8}},
            "topologies": {"Z8_2adic": {"kind": "adic", "ring": "Z8", "generators": [2]}},
            "suites": {"small": {"corpus": ["Z8_2adic", "Z4_2adic"]}}}"#,
    );
    let p = path.to_str().unwrap();
    let v = json(&run(&["--defs", p, "compute", "points", "P1", "Z8_2adic"]));
    assert_eq!(v["count"], 12);
    let out = run(&["--defs", p, "suite", "small"]);
    assert_eq!(code(&out), 0);
    let v = json(&run(&["--defs", p, "validate"]));
    std::fs::remove_file(&path).ok();
    assert!(v["topologies"]
        .as_array()
        .unwrap()
        .contains(&Value::from("Z8_2adic")));
}

#[test]
fn export_dot_collapses_mutual_specialization() {
    let out = run(&["export-dot", "A1", "Z4_2adic"]);
    assert_eq!(code(&out), 0);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"chart0:T=0\" -> \"chart0:T=2\";"));
    assert!(dot.contains("\"chart0:T=2\" -> \"chart0:T=0\";"));
    assert_eq!(dot.matches("subgraph cluster_").count(), 2);
    assert_eq!(dot.matches('{').count(), dot.matches('}').count());
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("finepoints-{}-out.json", std::process::id()));
    let out = run(&[
        "--out",
        path.to_str().unwrap(),
        "compute",
        "points",
        "Gm",
        "Z6_discrete",
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["count"], 2);
}
