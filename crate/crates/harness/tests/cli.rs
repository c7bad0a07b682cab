use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

const C4: &str = r#"{"classA":["a1","a2"],"classB":["b1","b2"],"edges":[["a1","b1"],["a1","b2"],["a2","b1"],["a2","b2"]]}"#;
const MATCHING2: &str = r#"{"classA":["a1","a2"],"classB":["b1","b2"],"edges":[["a1","b1"],["a2","b2"]]}"#;
const FANO: &str = r#"{"V1":["x1","x2"],"V2":["y1","y2"],"V3":["z1","z2"],"edges":[["x1","y1","z1"],["x1","y2","z2"],["x2","y1","z2"],["x2","y2","z1"]]}"#;

fn ryser(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ryser")).args(args).env_remove("RYSER_CACHE_DIR").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn file(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn conn_of_four_cycle() {
    let d = tempfile::tempdir().unwrap();
    let g = file(d.path(), "c4.json", C4);
    let o = ryser(&["conn", s(&g)]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["nu"], 2);
    assert_eq!(v["conn"], -1);
    assert_eq!(v["connH"], json!({"exact": -1}));
}

#[test]
fn conn_of_a_hypergraph() {
    let d = tempfile::tempdir().unwrap();
    let h = file(d.path(), "fano.json", FANO);
    let v = stdout_json(&ryser(&["conn", s(&h)]));
    assert_eq!(v["nu"], 1);
    assert_eq!(v["lineGraphVertices"], 4);
}

#[test]
fn cp_find_output_verifies() {
    let d = tempfile::tempdir().unwrap();
    let g = file(d.path(), "c4.json", C4);
    let o = ryser(&["cp-find", s(&g)]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["found"], true);
    let dec = file(d.path(), "d.json", &json!({ "blocks": v["blocks"] }).to_string());
    let o = ryser(&["cp-verify", s(&g), s(&dec)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["accepted"], true);
}

#[test]
fn cp_verify_rejects_a_bad_block() {
    let d = tempfile::tempdir().unwrap();
    let g = file(d.path(), "m.json", MATCHING2);
    // the two edges are disjoint, so they are not a path
    let dec = json!({"blocks":[
        {"kind":"P4","vertices":["a1","b1","a2","b2"],"edges":[0,1],"mEdges":[0,1]}
    ]});
    let dec = file(d.path(), "d.json", &dec.to_string());
    let o = ryser(&["cp-verify", s(&g), s(&dec)]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
    let v = stdout_json(&o);
    assert_eq!(v["accepted"], false);
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn two_disjoint_edges_have_no_good_set_question() {
    // ν = 2 and L(G) has no edges, so conn(L(G)) = 0 > -1: not extremal
    let d = tempfile::tempdir().unwrap();
    let g = file(d.path(), "m.json", MATCHING2);
    let o = ryser(&["good-sets", s(&g)]);
    assert_eq!(code(&o), 2);
    let v = stdout_json(&ryser(&["cp-find", s(&g)]));
    assert_eq!(v["found"], false);
    assert_eq!(v["status"], "Consistent");
}

#[test]
fn good_sets_of_four_cycle() {
    let d = tempfile::tempdir().unwrap();
    let g = file(d.path(), "c4.json", C4);
    let o = ryser(&["good-sets", "--first", s(&g)]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["result"], "none");
    assert_eq!(v["perfectMatching"], true);
    assert_eq!(v["minimalSetsAreC4"], true);
    let all = stdout_json(&ryser(&["good-sets", "--all", s(&g)]));
    assert_eq!(all["candidates"].as_array().unwrap().len(), 6);
    assert_eq!(code(&ryser(&["good-sets", "--all", "--first", s(&g)])), 2);
}

#[test]
fn ryser_check_on_truncated_fano() {
    let d = tempfile::tempdir().unwrap();
    let h = file(d.path(), "fano.json", FANO);
    let o = ryser(&["ryser-check", s(&h)]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!((v["nu"].clone(), v["tau"].clone(), v["extremal"].clone()), (json!(1), json!(2), json!(true)));
    for c in v["links"].as_array().unwrap() {
        assert_eq!(c["linkNu"], 2);
        assert_eq!(c["conn"], -1);
    }
}

#[test]
fn link_and_deficiency() {
    let d = tempfile::tempdir().unwrap();
    let h = file(d.path(), "fano.json", FANO);
    let v = stdout_json(&ryser(&["link", s(&h), "--class", "1", "--subset", "x1"]));
    assert_eq!(v["nu"], 2);
    assert_eq!(v["link"]["edges"].as_array().unwrap().len(), 2);
    let none = stdout_json(&ryser(&["link", s(&h), "--class", "2", "--subset", ""]));
    assert_eq!(none["link"]["edges"].as_array().unwrap().len(), 0);
    let whole = stdout_json(&ryser(&["link", s(&h), "--class", "2", "--subset", "y1,y2"]));
    assert_eq!(whole["link"]["edges"].as_array().unwrap().len(), 4);
    assert_eq!(code(&ryser(&["link", s(&h), "--class", "1", "--subset", "nope"])), 2);
    let o = ryser(&["deficiency", s(&h), "--class", "1", "--d", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["conclusion"], true);
}

#[test]
fn usage_and_guard_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let g = file(d.path(), "c4.json", C4);
    assert_eq!(code(&ryser(&[])), 2);
    assert_eq!(code(&ryser(&["frobnicate"])), 2);
    assert_eq!(code(&ryser(&["conn", "/nonexistent/g.json"])), 2);
    assert_eq!(code(&ryser(&["link", s(&g), "--class", "4"])), 2);
    assert_eq!(code(&ryser(&["psi", "--budget", "1", s(&g)])), 3);
    let o = ryser(&["psi", s(&g)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["psi"], -1);
}

#[test]
fn enumerate_emits_distinct_instances() {
    let o = ryser(&["enumerate", "bipartite", "--max-a", "3", "--max-b", "3", "--max-mult", "1", "--nu", "2"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert!(!lines.is_empty());
    let keys: HashSet<&str> = lines.iter().copied().collect();
    assert_eq!(keys.len(), lines.len());
    let o = ryser(&["enumerate", "hypergraph", "--sizes", "1,1,2"]);
    assert_eq!(code(&o), 0);
    for l in std::str::from_utf8(&o.stdout).unwrap().lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        assert!(v.get("V1").is_some());
    }
}

fn without_timestamp(summary: &Path) -> Value {
    let mut v: Value = serde_json::from_str(&fs::read_to_string(summary).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("timestamp");
    v
}

#[test]
fn batch_is_deterministic_and_reports() {
    let d = tempfile::tempdir().unwrap();
    let cfg = json!({
        "universe": {"kind": "bipartite", "maxA": 2, "maxB": 3, "maxMult": 2, "nu": null},
        "checks": ["line-bound", "characterization", "switch"]
    });
    let cfg = file(d.path(), "cfg.json", &cfg.to_string());
    let (a, b) = (d.path().join("a"), d.path().join("b"));
    assert_eq!(code(&ryser(&["batch", s(&cfg), "--out", s(&a)])), 0);
    assert_eq!(code(&ryser(&["batch", s(&cfg), "--out", s(&b)])), 0);
    let ra = fs::read(a.join("records.jsonl")).unwrap();
    assert!(!ra.is_empty());
    assert_eq!(ra, fs::read(b.join("records.jsonl")).unwrap());
    assert_eq!(without_timestamp(&a.join("summary.json")), without_timestamp(&b.join("summary.json")));
    let summary = without_timestamp(&a.join("summary.json"));
    assert_eq!(summary["withViolations"], 0);
    assert_eq!(summary["instances"].as_u64().unwrap() as usize, ra.iter().filter(|&&c| c == b'\n').count());

    let o = ryser(&["report", s(&a)]);
    assert_eq!(code(&o), 0);
    let svg = fs::read_to_string(a.join("conn_vs_nu.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn batch_overrides_and_cache() {
    let d = tempfile::tempdir().unwrap();
    let cfg = json!({
        "universe": {"kind": "bipartite-sample", "maxA": 4, "maxB": 4, "maxMult": 2, "nu": 2, "count": 5, "seed": 7},
        "checks": ["line-bound"]
    });
    let cfg = file(d.path(), "cfg.json", &cfg.to_string());
    let out = d.path().join("o");
    let cache = d.path().join("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_ryser"))
            .args(["batch", s(&cfg), "--out", s(&out), "--count", "3", "--checks", "line-bound,characterization"])
            .env("RYSER_CACHE_DIR", &cache)
            .output()
            .unwrap()
    };
    let first = run();
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    let summary = without_timestamp(&out.join("summary.json"));
    assert_eq!(summary["instances"], 3);
    assert_eq!(summary["config"]["checks"], json!(["line-bound", "characterization"]));
    assert!(String::from_utf8_lossy(&first.stderr).contains("(0 from cache)"));
    let second = run();
    assert!(String::from_utf8_lossy(&second.stderr).contains("(3 from cache)"));

    let bad = file(d.path(), "bad.json", r#"{"universe":{"kind":"bipartite","maxA":1,"maxB":1,"maxMult":1,"nu":null},"checks":[],"extra":1}"#);
    assert_eq!(code(&ryser(&["batch", s(&bad), "--out", s(&out)])), 2);
    assert_eq!(code(&ryser(&["batch", s(&cfg), "--out", s(&out), "--checks", "nonsense"])), 2);
}

#[test]
fn empty_universe_batch_exits_zero() {
    let d = tempfile::tempdir().unwrap();
    let cfg = file(d.path(), "cfg.json", r#"{"universe":{"kind":"fixtures","names":[]},"checks":["ryser"]}"#);
    let out = d.path().join("o");
    assert_eq!(code(&ryser(&["batch", s(&cfg), "--out", s(&out)])), 0);
    assert_eq!(fs::read_to_string(out.join("records.jsonl")).unwrap(), "");
}
