use std::path::Path;
use std::process::{Command, Output};

fn satlab(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satlab"))
        .args(args)
        .env("SATLAB_CACHE", cache)
        .output()
        .expect("run satlab")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn sat_prints_number_and_classes() {
    let cache = tempfile::tempdir().unwrap();
    let json = cache.path().join("result.json");
    let out = satlab(cache.path(), &["sat", "--n", "6", "--pattern", "K2vP3", "--json", json.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("sat=11"));
    assert!(lines.next().unwrap().starts_with("classes=4 "));
    assert_eq!(lines.count(), 4);
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(value["sat_number"], 11);

    // Second run is served from the cache with the same output.
    let again = satlab(cache.path(), &["sat", "--n", "6", "--pattern", "K2vP3"]);
    assert_eq!(stdout(&again), text);
    let pruned = satlab(cache.path(), &["--no-cache", "sat", "--n", "6", "--pattern", "k2vp3", "--prune"]);
    assert_eq!(stdout(&pruned).lines().next(), Some("sat=11"));
}

#[test]
fn check_reports_status() {
    let cache = tempfile::tempdir().unwrap();
    // K4 contains K1vP3.
    let out = satlab(cache.path(), &["check", "--g6", "C~", "--pattern", "K1vP3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("contains-copy"));

    // C4 is K1vP3-saturated.
    let out = satlab(cache.path(), &["check", "--g6", "C]", "--pattern", "K1vP3", "--certificates"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["status"], "saturated");
    assert_eq!(value["witnesses"].as_object().unwrap().len(), 2);

    let out = satlab(cache.path(), &["check", "--g6", "C?", "--pattern", "P3"]);
    assert_eq!(stdout(&out).lines().next(), Some("misses-nonedge"));
}

#[test]
fn exit_codes() {
    let cache = tempfile::tempdir().unwrap();
    let bad_graph = satlab(cache.path(), &["check", "--g6", "!!", "--pattern", "P3"]);
    assert_eq!(bad_graph.status.code(), Some(2));
    let bad_pattern = satlab(cache.path(), &["sat", "--n", "5", "--pattern", "Q7"]);
    assert_eq!(bad_pattern.status.code(), Some(2));
    let too_big = satlab(cache.path(), &["sat", "--n", "13", "--pattern", "P3"]);
    assert_eq!(too_big.status.code(), Some(3));
    let unknown_suite = satlab(cache.path(), &["verify", "--suite", "nope"]);
    assert_eq!(unknown_suite.status.code(), Some(2));
}

#[test]
fn verify_writes_json_report() {
    let cache = tempfile::tempdir().unwrap();
    let json = cache.path().join("report.json");
    let out = satlab(cache.path(), &["verify", "--suite", "theorem-2.1", "--n-max", "7", "--json", json.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(value["suite"], "theorem-2.1");
    let cases = value["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    assert!(cases.iter().all(|c| c["status"] != "fail"));

    let table = satlab(cache.path(), &["verify", "--suite", "table-1"]);
    assert!(table.status.success());
}

#[test]
fn table_tsv() {
    let cache = tempfile::tempdir().unwrap();
    let out = satlab(cache.path(), &["table", "--tsv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.len() == 4));
    assert_eq!(rows[0], vec!["source", "K1vP3", "K2vP3", "K1vP4"]);
    assert!(rows[1][1].contains("n>=10"));
    assert!(rows[1][2].contains("n>=2048"));
    assert!(rows[2][1].contains("n>=4"));
    assert!(rows[2][2].contains("n>=5"));
}

#[test]
fn enumerate_and_sporadics() {
    let cache = tempfile::tempdir().unwrap();
    let dir = cache.path().join("lists");
    let out = satlab(
        cache.path(),
        &["enumerate", "--n", "7", "--pattern", "P4", "--edges", "5", "--out", dir.to_str().unwrap()],
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("classes=2"));
    let listed = std::fs::read_to_string(dir.join("n7-P4-m5.g6")).unwrap();
    assert_eq!(listed.lines().count(), 2);

    let store = cache.path().join("store");
    let out = satlab(cache.path(), &["sporadics", "derive", "--store", store.to_str().unwrap(), "--n-max", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sat/n=6/pattern=K2vP3 sat=11 join-form=3 sporadic=1"));
    let index: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(store.join("index.json")).unwrap()).unwrap();
    assert_eq!(index.as_array().unwrap().len(), 6);
}
