mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::fixture;
use serde_json::Value;

fn odorscreen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_odorscreen"))
        .args(args)
        .env_remove("ODORSCREEN_PUBCHEM_URL")
        .output()
        .unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = odorscreen(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn parse_emits_atom_fields() {
    let v = ok_json(&["parse", "OC(=O)c1ccccc1", "[NH4+]", "C1CC"]);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 3);
    let atoms = recs[0]["graph"]["atoms"].as_array().unwrap();
    assert_eq!(atoms.len(), 9);
    for key in ["element", "atomic_number", "charge", "aromatic", "degree", "total_h", "valence", "in_ring", "hybridization"] {
        assert!(atoms.iter().all(|a| a.get(key).is_some()), "{key}");
    }
    assert_eq!(atoms[0]["element"], "O");
    assert_eq!(atoms[0]["total_h"], 1);
    assert_eq!(atoms[3]["aromatic"], true);
    assert_eq!(atoms[3]["hybridization"], "sp2");
    let n = &recs[1]["graph"]["atoms"][0];
    assert_eq!((n["charge"].as_i64(), n["total_h"].as_i64(), n["hybridization"].as_str()), (Some(1), Some(4), Some("sp3")));
    assert!(recs[2]["graph"].is_null() && recs[2]["error"].is_string());
}

#[test]
fn canonicalize_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("gen.smi");
    std::fs::write(&input, "# generated\nOCC ethanol\nC(C)O\nc1ccccc1\nnonsense\n").unwrap();
    let out = odorscreen(&["canonicalize", "--format", "plain", "-i", p(&input)]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "CCO\nCCO\nc1ccccc1\n");
    let v = ok_json(&["canonicalize", "-i", p(&input)]);
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[0]["line"], 2);
    assert!(recs[3]["canonical"].is_null() && recs[3]["error"].is_string());
}

#[test]
fn sanitize_reports_checks() {
    let v = ok_json(&["sanitize", "CCO", "C(C)(C)(C)(C)C", "c1cccc1", "C1CC"]);
    let r = v["records"].as_array().unwrap();
    assert_eq!(r[0]["valid"], true);
    assert_eq!(r[1]["failures"][0]["check"], "invalid_valence");
    assert_eq!((r[2]["parsed"].as_bool(), r[2]["valid"].as_bool()), (Some(true), Some(false)));
    assert_eq!(r[3]["parsed"], false);
}

#[test]
fn descriptors_csv() {
    let out = odorscreen(&["descriptors", "CCO", "c1ccccc1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("line,input,canonical,logP,Molecular Weight,SlogP_VSA3,Fraction Sp2,FCFP4 Count"));
    assert_eq!(lines.count(), 2);
    let out = odorscreen(&["descriptors", "--features", "HAC,HBD", "CCO"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("1,CCO,CCO,3,1"));
}

#[test]
fn train_then_score() {
    let dir = tempfile::tempdir().unwrap();
    let out = odorscreen(&[
        "train",
        "--dataset",
        p(&fixture("dataset_synthetic.csv")),
        "--out-dir",
        p(dir.path()),
        "--seed",
        "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["model.tsv", "training.json", "roc.csv", "roc.svg", "shap.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("training.json")).unwrap()).unwrap();
    let auc = report["test_metrics"]["roc_auc"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&auc));
    let model = dir.path().join("model.tsv");
    let v = ok_json(&["score", "--model", p(&model), "CCO", "CCCCCC(=O)OCC"]);
    for r in v["records"].as_array().unwrap() {
        let prob = r["score"]["probability"].as_f64().unwrap();
        assert!(prob > 0.0 && prob < 1.0);
    }
    let shap = ok_json(&["shap", "--model", p(&model), "CCO"]);
    let e = &shap["records"][0]["explanation"];
    let total: f64 = e["contributions"].as_array().unwrap().iter().map(|c| c[1].as_f64().unwrap()).sum();
    let base = e["base_value"].as_f64().unwrap();
    let logit = v["records"][0]["score"]["logit"].as_f64().unwrap();
    assert!((base + total - logit).abs() < 1e-9);

    // Same seed, same model file.
    let again = tempfile::tempdir().unwrap();
    let out = odorscreen(&[
        "train",
        "--dataset",
        p(&fixture("dataset_synthetic.csv")),
        "--out-dir",
        p(again.path()),
        "--set",
        "seed=3",
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&model).unwrap(), std::fs::read(again.path().join("model.tsv")).unwrap());
}

#[test]
fn screen_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("screen.json");
    let csv = dir.path().join("screen.csv");
    let out = odorscreen(&[
        "--offline",
        "--cache-dir",
        p(&fixture("pubchem_cache")),
        "screen",
        "-i",
        p(&fixture("screen_100.smi")),
        "--dataset",
        p(&fixture("dataset_synthetic.csv")),
        "-o",
        p(&json),
        "--csv",
        p(&csv),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["summary"]["total"], 100);
    assert_eq!(v["summary"]["novel"], 88);
    // Ethanol is a training molecule, so it reaches the lookup and hits the cache.
    assert_eq!(v["summary"]["pubchem_known"], 1);
    assert_eq!(v["summary"]["pubchem_unavailable"], 91);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 101);
}

#[test]
fn benchmark_self_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let bench = fixture("bench_500.smi");
    let (csv, hist) = (dir.path().join("b.csv"), dir.path().join("h.csv"));
    let v = ok_json(&[
        "benchmark",
        "--generated",
        p(&bench),
        "--training",
        p(&bench),
        "--csv",
        p(&csv),
        "--histograms",
        p(&hist),
    ]);
    assert_eq!((v["validity"].as_f64(), v["novelty"].as_f64(), v["snn"].as_f64()), (Some(1.0), Some(0.0), Some(1.0)));
    assert!(v["ks"].as_array().unwrap().iter().all(|k| k["statistic"] == 0.0));
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("metric,value\nvalidity,1\n"));
    assert_eq!(std::fs::read_to_string(&hist).unwrap().lines().count(), 1 + 5 * 20);
}

#[test]
fn pubchem_offline_with_cache() {
    let v = ok_json(&["pubchem", "--offline", "--cache-dir", p(&fixture("pubchem_cache")), "OCC", "CCCC"]);
    let r = v["records"].as_array().unwrap();
    assert_eq!((r[0]["canonical"].as_str(), r[0]["status"].as_str()), (Some("CCO"), Some("known")));
    assert_eq!(r[1]["status"], "unavailable");
}

#[test]
fn config_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "seed = 5\nknn_k = 2\n").unwrap();
    assert!(odorscreen(&["--config", p(&cfg), "canonicalize", "CCO"]).status.success());
    std::fs::write(&cfg, "bogus = 1\n").unwrap();
    let out = odorscreen(&["--config", p(&cfg), "canonicalize", "CCO"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert!(!odorscreen(&["--set", "knn_k=x", "canonicalize", "CCO"]).status.success());
    assert!(!odorscreen(&["canonicalize"]).status.success());
    assert!(!odorscreen(&["canonicalize", "-i", "/nonexistent.smi"]).status.success());
}
