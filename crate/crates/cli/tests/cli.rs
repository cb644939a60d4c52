use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_koszul-forge"));
    c.env_remove("KOSZUL_FORGE_CACHE");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("kf-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn golden(name: &str) -> Value {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn envelope_shape() {
    let out = run(&["--no-cache", "stable-sets", "cycle(5)"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["schema"], "koszul-forge/1");
    assert_eq!(v["command"], "stable-sets");
    assert_eq!(v["result"]["count"], 11);
    assert_eq!(v["result"]["labels"][0], "y_{}");
    assert_eq!(v["flags"]["order"], "grevlex");
}

#[test]
fn text_format() {
    let out = run(&["--no-cache", "--format", "text", "hilbert", "cycle(5)"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("h-vector [1, 5, 5, 1]"), "{s}");
}

#[test]
fn golden_certificates() {
    for (graph, file) in [
        ("paper:cbar(3)", "gorenstein_cbar3.json"),
        ("paper:cbar(4)", "gorenstein_cbar4.json"),
        ("paper:G1", "gorenstein_G1.json"),
        ("paper:G4", "gorenstein_G4.json"),
    ] {
        let v = json_of(&run(&["--no-cache", "gorenstein", graph]));
        assert_eq!(v["result"], golden(file)["result"], "{graph}");
    }
}

#[test]
fn golden_betti_and_qgb() {
    let v = json_of(&run(&["--no-cache", "koszul", "paper:cbar(3)"]));
    assert_eq!(v["result"], golden("koszul_cbar3.json")["result"]);
    assert_eq!(v["result"]["status"], "non_koszul");
    let v = json_of(&run(&["--no-cache", "qgb", "paper:cbar(3)"]));
    assert_eq!(v["result"], golden("qgb_cbar3.json")["result"]);
    assert_eq!(v["result"]["exists"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--no-cache", "stable-sets", "cycle("]).status.code(), Some(1));
    let capped = run(&["--no-cache", "--spair-cap", "3", "toric-ideal", "paper:cbar(3)"]);
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("resource cap"));
    let bad_var = run(&["--no-cache", "--var-order", "y_{9}", "groebner", "cycle(5)"]);
    assert_eq!(bad_var.status.code(), Some(1));
    assert_eq!(run(&["--no-cache", "--char", "4", "koszul", "cycle(5)"]).status.code(), Some(1));
    assert_eq!(run(&["paper-suite", "--case", "nope"]).status.code(), Some(1));
}

#[test]
fn ideal_file_input() {
    let dir = scratch("ideal");
    let file = dir.join("ideal.json");
    let out = run(&["--no-cache", "groebner", "cycle(5)"]);
    let v = json_of(&out);
    let labels = v["result"]["basis"].clone();
    assert!(labels.as_array().unwrap().len() >= 5);

    // same ideal, given explicitly
    let toric = json_of(&run(&["--no-cache", "toric-ideal", "cycle(5)"]));
    std::fs::write(&file, toric["result"]["ideal"].to_string()).unwrap();
    let w = json_of(&run(&["--no-cache", "hilbert", "--ideal", file.to_str().unwrap()]));
    assert_eq!(w["result"]["h_vector"], serde_json::json!([1, 5, 5, 1]));
    assert_eq!(run(&["--no-cache", "hilbert"]).status.code(), Some(1));
}

#[test]
fn var_order_and_lex() {
    let v = json_of(&run(&["--no-cache", "--order", "lex", "groebner", "path(3)"]));
    assert!(v["result"]["order"].as_str().unwrap().contains("lex"));
    let v = json_of(&run(&[
        "--no-cache",
        "--var-order",
        "y_{1,3},y_{},y_{1},y_{2},y_{3}",
        "groebner",
        "path(3)",
    ]));
    assert_eq!(v["result"]["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn cache_roundtrip() {
    let dir = scratch("cache");
    let args = ["--cache-dir", dir.to_str().unwrap(), "hilbert", "cycle(7)"];
    let first = run(&args);
    assert!(first.status.success());
    let entries: Vec<_> = walk(&dir);
    assert_eq!(entries.len(), 1, "{entries:?}");
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
    // a result-affecting flag is part of the key
    let mut other = args.to_vec();
    other.insert(0, "--spair-cap");
    other.insert(1, "99999");
    assert!(run(&other).status.success());
    assert_eq!(walk(&dir).len(), 2);
    // the environment variable is honoured too
    let env_dir = scratch("cache-env");
    let out = bin()
        .args(["hilbert", "cycle(5)"])
        .env("KOSZUL_FORGE_CACHE", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(walk(&env_dir).len(), 1);
}

#[test]
fn unusable_cache_degrades() {
    let dir = scratch("cache-bad");
    let file = dir.join("plain-file");
    std::fs::write(&file, b"x").unwrap();
    let out = run(&["--cache-dir", file.join("sub").to_str().unwrap(), "hilbert", "cycle(5)"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn out_file() {
    let dir = scratch("out");
    let path = dir.join("r.json");
    let out = run(&["--no-cache", "--out", path.to_str().unwrap(), "classify", "cycle(5)"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["result"]["almost_bipartite"], true);
}

#[test]
fn suite_single_case() {
    let out = run(&["--no-cache", "--format", "text", "paper-suite", "--case", "stable_sets"]);
    assert!(out.status.success());
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("PASS stable_sets"), "{s}");
}

#[test]
fn enumerate_small() {
    let v = json_of(&run(&["--no-cache", "enumerate", "4", "--classify"]));
    assert_eq!(v["result"]["count"], 11);
}

#[test]
fn deterministic_analyze() {
    let a = json_of(&run(&["--no-cache", "--jobs", "1", "analyze", "cycle(5)"]));
    let b = json_of(&run(&["--no-cache", "--jobs", "3", "analyze", "cycle(5)"]));
    let strip = |mut v: Value| {
        v["result"].as_object_mut().unwrap().remove("timings");
        v
    };
    assert_eq!(strip(a), strip(b));
}

fn walk(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap().flatten() {
        let p = e.path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}
