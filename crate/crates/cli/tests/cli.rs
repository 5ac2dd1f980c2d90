use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dschubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dschubert")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn cone_matches_golden_file() {
    let out = dschubert(&["cone", "--system", "wti", "--n", "3", "--m", "3", "--out", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    let golden: Value =
        serde_json::from_str(include_str!("golden/cone_wti_n3_m3.json")).expect("golden file parses");
    assert_eq!(doc["system"], golden);
    assert_eq!(doc["system"]["inequalities"].as_array().unwrap().len(), 12);
    assert_eq!(doc["manifest"]["command"], "cone");
    assert!(doc["manifest"]["output_digests"]["system"].is_string());
}

#[test]
fn outputs_are_byte_identical() {
    let args = ["build", "--n", "4", "--stages", "1", "--seed", "11"];
    assert_eq!(dschubert(&args).stdout, dschubert(&args).stdout);
    let args = ["cone", "--system", "bk", "--n", "4", "--m", "3", "--out", "latex"];
    let a = dschubert(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, dschubert(&args).stdout);
    assert!(String::from_utf8(a.stdout).unwrap().starts_with("% manifest: "));
}

#[test]
fn zero_point_is_member() {
    let dir = tempfile::tempdir().unwrap();
    let point = dir.path().join("zero.json");
    std::fs::write(&point, "[[0, 0], [0, 0], [0, 0]]").unwrap();
    let out = dschubert(&["member", "--system", "wti", "--n", "3", "--m", "3", "--point", point.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["membership"]["verdict"], "member");

    std::fs::write(&point, r#"[["3", "0"], [0, 0], [0, 0]]"#).unwrap();
    let out = dschubert(&["member", "--system", "wti", "--n", "3", "--m", "3", "--point", point.to_str().unwrap()]);
    assert_eq!(json_of(&out)["membership"]["verdict"], "not member");
}

#[test]
fn exit_codes() {
    assert_eq!(dschubert(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dschubert(&["cone", "--system", "nope", "--n", "3", "--m", "3"]).status.code(), Some(2));
    let budget = Command::new(env!("CARGO_BIN_EXE_dschubert"))
        .args(["cone", "--system", "sti", "--n", "3", "--m", "3"])
        .env("DSCHUBERT_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(budget.status.code(), Some(3));
    // K_2(A_t) has three slots but is not the weight cone until Θ is applied
    let out = dschubert(&["equal", "--a", "km:at@2", "--b", "wti", "--n", "3", "--m", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not implied"));
    let out = dschubert(&["equal", "--a", "theta:km:at@2", "--b", "wti", "--n", "3", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn audit_of_weight_inequalities_is_strict_clean() {
    let out = dschubert(&["audit", "--system", "wti", "--n", "4", "--m", "3", "--strict"]);
    assert_eq!(out.status.code(), Some(0));
    let audit = &json_of(&out)["audit"];
    assert_eq!(audit["inequalities"], audit["facets"]);
}

#[test]
fn mult_tables() {
    for alg in ["at", "gr", "limit", "bi"] {
        let out = dschubert(&["mult-table", "--n", "3", "--algebra", alg]);
        assert_eq!(out.status.code(), Some(0), "{alg}");
        let doc = json_of(&out);
        let basis = doc["table"]["basis"].as_array().unwrap().len();
        assert_eq!(basis, if alg == "bi" { 3 } else { 6 });
        assert_eq!(doc["table"]["table"].as_array().unwrap().len(), basis * basis);
    }
}

#[test]
fn build_then_slope() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("graph.json");
    let out = dschubert(&["build", "--n", "3", "--stages", "2", "--seed", "5", "--output", graph.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&graph).unwrap()).unwrap();
    assert!(doc["metrics"]["girth"].as_u64().unwrap() >= 6);
    // two opposite chambers of the first apartment carrying equal weights
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"[{"chamber": [0, 1], "weight": [1, 1]}, {"chamber": [3, 4], "weight": [1, 1]}]"#)
        .unwrap();
    let out = dschubert(&["slope", "--graph", graph.to_str().unwrap(), "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json_of(&out);
    let values = doc["slopes"]["values"].as_array().unwrap();
    assert_eq!(values.len() as u64, doc_vertices(&graph));
    assert!(doc["slopes"]["minima"]["all"]["vertex"].is_u64());
}

fn doc_vertices(graph: &Path) -> u64 {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(graph).unwrap()).unwrap();
    doc["metrics"]["vertices"].as_u64().unwrap()
}

#[test]
fn verify_chevalley_suite() {
    let out = dschubert(&["verify", "chevalley"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["summary"]["passed"], true);
    assert_eq!(dschubert(&["verify", "nonsense"]).status.code(), Some(2));
}
