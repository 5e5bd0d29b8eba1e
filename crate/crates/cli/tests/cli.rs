use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

fn zol(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_zol"))
        .args(args)
        .env_remove("ZOL_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn ok(args: &[&str], stdin: &str) -> String {
    let (code, out, err) = zol(args, stdin);
    assert_eq!(code, 0, "{args:?}: {err}");
    out.trim_end().to_string()
}

fn json(args: &[&str], stdin: &str) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&ok(&full, stdin)).unwrap()
}

#[test]
fn triangle_density() {
    assert_eq!(ok(&["density", "-g", "Bw"], ""), "1/1");
    assert_eq!(json(&["density", "-g", "Bw"], "")["density"], "1/1");
}

#[test]
fn built_g0_is_strictly_balanced() {
    let g0 = ok(&["build", "g0"], "");
    let built: Value = serde_json::from_str(&g0).unwrap();
    assert_eq!(built["counts"], serde_json::json!([21, 39]));
    assert_eq!(ok(&["balance", "-g", "-"], &g0), "strictly-balanced 13/7");
    // The bare graph6 line works too.
    let g6 = built["graph6"].as_str().unwrap();
    assert_eq!(ok(&["balance", "-g", g6], ""), "strictly-balanced 13/7");
    let m = json(&["maxden", "-g", g6], "");
    assert_eq!(m["maxden"], "13/7");
    assert_eq!(m["vertices"].as_array().unwrap().len(), 21);
}

#[test]
fn game_with_extraction() {
    let text = ok(&["game", "--g1", "Bw", "--g2", "Bg", "-k", "2", "--extract"], "");
    assert!(text.starts_with("winner=Spoiler"), "{text}");
    let sentence = text.lines().find_map(|l| l.strip_prefix("sentence=")).unwrap();
    // The separating sentence is false on the triangle and true on the path.
    assert_eq!(ok(&["eval", "-g", "Bw", "-f", sentence], ""), "false");
    assert_eq!(ok(&["eval", "-g", "Bg", "-f", sentence], ""), "true");
    let j = json(&["game", "--g1", "Bw", "--g2", "Bw", "-k", "3", "--extract"], "");
    assert_eq!(j["winner"], "Duplicator");
    assert!(j.get("sentence").is_none());
}

#[test]
fn pair_commands_read_built_pairs() {
    let pair = ok(&["build", "companion:c"], "");
    assert_eq!(ok(&["threshold-alpha", "--pair", "-"], &pair), "3/5");
    let v = json(&["safe", "--pair", "-", "--alpha", "7/13"], &pair);
    assert_eq!(v["safe"], true);
    let v = json(&["safe", "--pair", "-", "--alpha", "3/5"], &pair);
    assert_eq!(v["safe"], false);
}

#[test]
fn sentence_files_are_read() {
    let dir = std::env::temp_dir().join(format!("zol-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("edge.fo");
    std::fs::write(&path, "E x; E y; x~y & !x=y\n").unwrap();
    assert_eq!(ok(&["eval", "-g", "Bw", "-f", path.to_str().unwrap()], ""), "true");
}

#[test]
fn exit_codes() {
    assert_eq!(zol(&["density", "-g", "!!"], "").0, 2);
    assert_eq!(zol(&["density"], "").0, 2);
    assert_eq!(zol(&["density", "-g", "Bw", "--bogus"], "").0, 2);
    assert_eq!(zol(&["build", "case:99"], "").0, 2);
    assert_eq!(zol(&["eval", "-g", "Bw", "-f", "E x; !(E y; x~y)"], "").0, 2);
    let (code, _, err) = zol(&["game", "--g1", "Bw", "--g2", "Bg", "-k", "6"], "");
    assert_eq!(code, 3);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert_eq!(zol(&["eval", "-g", "Bw", "-f", "E x; E y; E z; x~y & y~z & x~z", "--budget", "1"], "").0, 3);
    assert_eq!(zol(&["exp", "poisson", "--params", "{\"pattern\":\"K3\"}"], "").0, 2);
}

#[test]
fn experiments_are_reproducible_json_records() {
    let params = r#"{"pattern":"C4","n":100,"trials":40}"#;
    let a = ok(&["exp", "poisson", "--params", params, "--seed", "9", "--workers", "1"], "");
    let b = ok(&["exp", "poisson", "--params", params, "--seed", "9", "--workers", "3"], "");
    assert_eq!(a, b);
    let rec: Value = serde_json::from_str(&a).unwrap();
    for key in ["experiment", "params", "seed", "trials", "outcomes", "summary"] {
        assert!(rec.get(key).is_some(), "{key}");
    }
    assert_eq!(rec["seed"], 9);
    let csv = ok(&["exp", "poisson", "--params", params, "--seed", "9", "--format", "csv"], "");
    assert!(csv.starts_with("expected_copies,lambda,mean,n,p,tv_distance,variance\n"));

    let dir = std::env::temp_dir().join(format!("zol-exp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("rec.json");
    ok(&["exp", "poisson", "--params", params, "--seed", "9", "-o", out.to_str().unwrap()], "");
    assert_eq!(std::fs::read_to_string(&out).unwrap().trim_end(), a);
}

#[test]
fn seed_defaults_to_the_environment() {
    let params = r#"{"pattern":"K3","n":50,"trials":5}"#;
    let out = Command::new(env!("CARGO_BIN_EXE_zol"))
        .args(["exp", "poisson", "--params", params])
        .env("ZOL_SEED", "77")
        .output()
        .unwrap();
    let rec: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec["seed"], 77);
}

#[test]
fn verify_paper_is_green() {
    let text = ok(&["verify-paper"], "");
    assert!(text.ends_with("15/15 golden checks passed"), "{text}");
    let j = json(&["verify-paper"], "");
    assert_eq!(j["passed"], j["total"]);
}

#[test]
fn json_mode_outputs_parse() {
    for args in [
        vec!["density", "-g", "Bw"],
        vec!["maxden", "-g", "Bw"],
        vec!["balance", "-g", "Bw"],
        vec!["eval", "-g", "Bw", "-f", "E x; x=x"],
        vec!["build", "base-h"],
    ] {
        json(&args, "");
    }
}
