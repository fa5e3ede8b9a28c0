use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn hermspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermspec"))
        .args(args)
        .env_remove("HERMSPEC_THREADS")
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = hermspec(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn clusters(v: &Value) -> Vec<(f64, u64)> {
    v["clusters"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c[0].as_f64().unwrap(), c[1].as_u64().unwrap()))
        .collect()
}

fn assert_clusters(got: Vec<(f64, u64)>, want: &[(f64, u64)]) {
    assert_eq!(got.len(), want.len(), "{got:?}");
    for ((a, m), (b, n)) in got.iter().zip(want) {
        assert!((a - b).abs() < 1e-9, "{got:?}");
        assert_eq!(m, n);
    }
}

#[test]
fn spectrum_of_named_graphs() {
    let r3 = 3f64.sqrt();
    let r2 = 2f64.sqrt();
    assert_clusters(clusters(&json(&["spectrum", "directed-triangle", "--k", "6"])), &[(1.0, 2), (-2.0, 1)]);
    assert_clusters(clusters(&json(&["spectrum", "oriented-K33", "--k", "6"])), &[(r3, 3), (-r3, 3)]);
    assert_clusters(clusters(&json(&["spectrum", "mixed-C4", "--k", "6"])), &[(r2, 2), (-r2, 2)]);
}

#[test]
fn certify_k55_minus_matching() {
    let v = json(&["certify", "oriented-K55-M", "--k", "6"]);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["pair"], serde_json::json!([{"int": 2}, {"int": -2}]));
    assert_eq!(v["multiplicities"], serde_json::json!([5, 5]));
    assert_eq!(v["method"], "exact-identity");
}

#[test]
fn constructed_tournament_passes_three_ev() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t7.txt");
    let out = hermspec(&["construct", "tournament", "7", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["certify", "--three-ev", path.to_str().unwrap()]);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["distinct"], 3);
}

#[test]
fn k6_has_no_two_eigenvalue_orientation_at_k4() {
    let v = json(&["search", "K6", "--mode", "oriented", "--k", "4"]);
    assert_eq!(v["space_size"], 32768);
    assert_eq!(v["hits"].as_array().unwrap().len(), 0);
}

#[test]
fn search_modes_and_hit_file() {
    let dir = tempfile::tempdir().unwrap();
    let hits = dir.path().join("hits.txt");
    let v = json(&["search", "K3,3", "--threads", "2", "--hits-out", hits.to_str().unwrap()]);
    assert_eq!(v["hits_up_to_iso"].as_array().unwrap().len(), 1);
    let lines = std::fs::read_to_string(&hits).unwrap();
    assert_eq!(lines.lines().count(), v["hits"].as_array().unwrap().len());
    for line in lines.lines() {
        let out = hermspec(&["certify", "-", "--expect-yes"]);
        drop(out);
        let mut child = Command::new(env!("CARGO_BIN_EXE_hermspec"))
            .args(["certify", "-", "--expect-yes"])
            .stdin(Stdio::piped())
            .stdout(Stdio::null())
            .spawn()
            .unwrap();
        writeln!(child.stdin.take().unwrap(), "{line}").unwrap();
        assert!(child.wait().unwrap().success(), "{line}");
    }

    let c4 = json(&["search", "C4", "--mode", "mixed"]);
    assert_eq!(c4["space_size"], 81);
    assert_eq!(c4["hits_up_to_iso"].as_array().unwrap().len(), 1);

    let signed = json(&["search", "C4", "--mode", "signed"]);
    assert_eq!(signed["hits"].as_array().unwrap().len(), 8);
    assert_eq!(signed["k"], 2);

    let three = json(&["search", "K3", "--filter", "three-ev"]);
    assert_eq!(three["hits"].as_array().unwrap().len(), 6);
}

#[test]
fn threads_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hermspec"))
        .args(["--json", "search", "K3,3"])
        .env("HERMSPEC_THREADS", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_hermspec"))
        .args(["search", "K3,3"])
        .env("HERMSPEC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(hermspec(&["certify", "regular-tournament-5"]).status.code(), Some(0));
    assert_eq!(hermspec(&["certify", "regular-tournament-5", "--expect-yes"]).status.code(), Some(1));
    assert_eq!(hermspec(&["certify", "directed-triangle", "--expect-yes"]).status.code(), Some(0));
    assert_eq!(hermspec(&["certify", "no-such-graph"]).status.code(), Some(2));
    assert_eq!(hermspec(&["spectrum"]).status.code(), Some(2));
    assert_eq!(hermspec(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hermspec(&["search", "K6", "--mode", "sideways"]).status.code(), Some(2));
    assert_eq!(hermspec(&["search", "K7", "--mode", "mixed"]).status.code(), Some(2));
    assert_eq!(hermspec(&["construct", "paley", "9"]).status.code(), Some(2));
    assert_eq!(hermspec(&["--tol", "-1", "spectrum", "cube"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "mixed 3\n0 > 7\n").unwrap();
    let out = hermspec(&["spectrum", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn convert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let signed = dir.path().join("q3.txt");
    let oriented = dir.path().join("d.txt");
    let back = dir.path().join("back.txt");
    let p = |x: &std::path::Path| x.to_str().unwrap().to_string();
    assert!(hermspec(&["construct", "hypercube", "3", "--signed", "-o", &p(&signed)]).status.success());
    assert!(hermspec(&["convert", &p(&signed), "-o", &p(&oriented)]).status.success());
    assert!(hermspec(&["convert", &p(&oriented), "-o", &p(&back)]).status.success());
    assert_eq!(std::fs::read_to_string(&signed).unwrap(), std::fs::read_to_string(&back).unwrap());

    let a = clusters(&json(&["spectrum", &p(&signed)]));
    let b = clusters(&json(&["spectrum", &p(&oriented), "--k", "4"]));
    assert_clusters(b, &a.iter().map(|&(v, m)| (v, m)).collect::<Vec<_>>());
    let r3 = 3f64.sqrt();
    assert_clusters(a, &[(r3, 4), (-r3, 4)]);

    assert_eq!(hermspec(&["convert", &p(&signed), "--format", "digraph6"]).status.code(), Some(0));
    assert_eq!(hermspec(&["convert", &p(&oriented), "--format", "digraph6"]).status.code(), Some(2));
}

#[test]
fn construct_outputs() {
    let v = json(&["construct", "paley", "7"]);
    assert_eq!(v.as_array().unwrap().len(), 8);
    let text = String::from_utf8(hermspec(&["construct", "paley", "3"]).stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0], "++++");
    for (i, r) in rows.iter().enumerate().skip(1) {
        assert!(r.starts_with('-'));
        assert_eq!(r.as_bytes()[i], b'+');
    }
    let d6 = String::from_utf8(hermspec(&["construct", "named", "directed-triangle", "--format", "digraph6"]).stdout).unwrap();
    assert!(d6.starts_with('&'));
    let cube = json(&["construct", "named", "cube"]);
    assert_eq!(cube["edges"].as_array().unwrap().len(), 12);
}

#[test]
fn spectrum_and_certify_agree() {
    for name in ["directed-edge", "directed-triangle", "oriented-K33", "mixed-C4", "cube", "regular-tournament-5", "complete-K5"] {
        for k in ["3", "4", "6", "7"] {
            let s = json(&["spectrum", name, "--k", k]);
            let c = json(&["certify", name, "--k", k]);
            if c["verdict"] == true {
                assert_eq!(clusters(&s).len(), 2, "{name} k={k}");
            }
        }
    }
}

#[test]
fn verify_paper_quick_and_negative_control() {
    let v = json(&["verify-paper", "--scale", "quick"]);
    assert_eq!(v["passed"], true);
    let skipped: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "skipped")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(skipped, ["2b", "4b"]);

    let out = hermspec(&["--json", "verify-paper", "--scale", "quick", "--corrupt-fixture", "oriented-K33=cube"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"1"), "{failed:?}");
}
