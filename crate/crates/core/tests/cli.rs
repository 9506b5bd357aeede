//! Behavioural tests of the command-line interface: exit codes, the JSON
//! schema contract and label round-trips through the binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sl3mm"))
}

#[test]
fn classify_json_schema() {
    let out = bin()
        .args(["classify", "--u", "3", "--v", "2", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["centralCharge"], "-8");
    assert_eq!(v["counts"]["admissible"], 4);
    assert_eq!(v["counts"]["finiteDimensionalTops"], 1);
    assert_eq!(v["counts"]["semiRelaxedFamilies"], 1);
    assert_eq!(v["counts"]["relaxedFamilies"], 1);
    assert_eq!(v["weights"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_one() {
    let out = bin().arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn off_level_fusion_exits_two_with_linear_dependence_message() {
    let out = bin()
        .args(["fuse", "H(0,0)", "H(0,0)", "--u", "4", "--v", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("linearly dependent"),
        "expected the linear-dependence obstruction, got: {err}"
    );
}

#[test]
fn degenerate_labels_are_routed_to_degen() {
    let out = bin().args(["canon", "S[1/2]"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["degen", "S[1/2]"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("H("), "expected highest-weight summands: {text}");
}

#[test]
fn canon_is_stable_through_the_binary() {
    let first = bin()
        .args(["canon", "sf(0,-1)*c w1 S[1/3]"])
        .output()
        .unwrap();
    assert!(first.status.success());
    let printed = String::from_utf8_lossy(&first.stdout).trim().to_string();
    let second = bin().args(["canon", &printed]).output().unwrap();
    assert!(second.status.success());
    assert_eq!(
        printed,
        String::from_utf8_lossy(&second.stdout).trim(),
        "canonical form must round-trip"
    );
}

#[test]
fn fuse_emits_versioned_product_json() {
    let out = bin()
        .args(["fuse", "S[1/5]", "R[1/4,0]", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    let product = v["product"].as_array().unwrap();
    assert_eq!(product.len(), 4);
    for term in product {
        assert_eq!(term[1], 1);
    }
}

#[test]
fn plot_weights_writes_csv() {
    let dir = std::env::temp_dir().join("sl3mm-plot-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("support.csv");
    let out = bin()
        .args([
            "plot-weights",
            "R[1/4,0]",
            "--radius",
            "3",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("d1,d2,x,y\n"));
    assert!(body.lines().count() > 10);
}

#[test]
fn verify_suite_runs_green() {
    let out = bin().args(["verify", "--suite", "rootdata"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().all(|l| l.is_empty() || l.starts_with("PASS")));
}
