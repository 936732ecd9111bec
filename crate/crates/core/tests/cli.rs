use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> String {
    format!("{}/../../data/{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualcover")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap();
    (v, out.status.code().unwrap())
}

#[test]
fn verdict_exit_codes() {
    let curve = data("curves/fermat-cubic.poly");
    for (rep, code) in [
        ("projection", 0),
        ("bad-cusps", 3),
        ("not-extending", 4),
        ("veronese", 5),
        ("malformed", 2),
    ] {
        let file = if rep == "malformed" {
            data("reps/malformed.json")
        } else {
            data(&format!("reps/fermat-cubic-{rep}.json"))
        };
        let out = run(&["verdict", &curve, &file]);
        assert_eq!(out.status.code(), Some(code), "{rep}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn verdict_report_lists_bad_cusps() {
    let (v, code) = json(&[
        "verdict",
        &data("curves/fermat-cubic.poly"),
        &data("reps/fermat-cubic-bad-cusps.json"),
    ]);
    assert_eq!(code, 3);
    let r = &v["result"];
    assert_eq!(r["outcome"], "ExtendsSingularTotalSpace");
    let bad = r["points"].as_array().unwrap().iter().filter(|p| p["class"] == "Bad").count();
    assert!(bad >= 1);
}

#[test]
fn monodromy_json_is_reproducible() {
    let curve = data("curves/fermat-cubic.poly");
    let a = run(&["--format", "json", "--seed", "3", "monodromy", &curve]);
    let b = run(&["--format", "json", "--seed", "3", "monodromy", &curve]);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_embed_version_and_tolerances() {
    let (v, code) = json(&["--tolerance", "1e-9", "dual", &data("curves/conic.poly")]);
    assert_eq!(code, 0);
    assert_eq!(v["tool"], "dualcover");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["seed"], 1);
    assert_eq!(v["tolerances"]["singular"]["residual"], 1e-9);
    assert_eq!(v["result"]["self_dual"], true);
}

#[test]
fn dual_reports_match_plucker() {
    for (name, degree, cusps) in [("fermat-cubic", 6, 9), ("nodal-cubic", 4, 3)] {
        let (v, code) = json(&["dual", &data(&format!("curves/{name}.poly"))]);
        assert_eq!(code, 0);
        let r = &v["result"];
        assert_eq!(r["dual_degree"], degree, "{name}");
        assert_eq!(r["dual_singularities"]["cusps"], cusps, "{name}");
        assert_eq!(r["dual_singularities"]["nodes"], 0, "{name}");
        assert_eq!(r["plucker_ok"], true, "{name}");
    }
}

#[test]
fn census_counts() {
    let (v, code) = json(&["--sheets", "3", "census", "--length", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["classes"], 40);
    let (v, _) = json(&["--sheets", "2", "census", "--length", "2"]);
    assert_eq!(v["result"]["classes"], 1);
}

#[test]
fn scenarios_on_the_cubic() {
    for name in ["bad-cusp-cubic", "veronese-cubic"] {
        let (v, code) = json(&["scenario", name]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(v["result"]["passed"], true, "{name}");
    }
}

#[test]
fn refusals_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("dualcover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let square = dir.join("square.poly");
    std::fs::write(&square, "(x^2 + y^2 - z^2)^2\n").unwrap();
    let out = run(&["dual", square.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = run(&["verdict", &data("curves/conic.poly"), &data("reps/fermat-cubic-projection.json")]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("dualcover-out-{}.json", std::process::id()));
    let out = run(&[
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
        "singular",
        &data("curves/nodal-cubic.poly"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["result"].is_object() || v["result"].is_array());
    std::fs::remove_file(&path).unwrap();
}
