use std::io::Write;
use std::process::{Command, Output};

use respcheck_core::fixtures::{fixture, FixtureName};
use respcheck_core::gen::{random_game, GenParams};
use respcheck_core::{parse_formula, parse_game, truth_set};
use serde_json::Value;

fn respcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_respcheck")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = respcheck(&full);
    assert!(out.status.success(), "{}", stderr(&out));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn truth_names(v: &Value) -> Vec<String> {
    v["result"]["truth_set"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_owned()).collect()
}

#[test]
fn eval_counterfactual_claim() {
    let out = respcheck(&["eval", "montana-a", "C[g] prison"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{w2}\n");
}

#[test]
fn eval_see_to_is_not_idempotent() {
    assert_eq!(truth_names(&json(&["eval", "montana-a", "S[g] prison"])), ["w2"]);
    assert!(truth_names(&json(&["eval", "montana-a", "S[g] S[g] prison"])).is_empty());
}

#[test]
fn eval_top_and_stats() {
    let v = json(&["eval", "montana-a", "true", "--stats"]);
    assert_eq!(truth_names(&v), ["w1", "w2", "w3"]);
    assert!(v["stats"]["node_visits"].is_u64());
    assert_eq!(v["game"]["outcomes"], 3);
    assert_eq!(v["game"]["agents"], serde_json::json!(["b", "g"]));
    assert!(json(&["eval", "montana-a", "true"]).get("stats").is_none());
}

#[test]
fn oracle_and_unpruned_agree() {
    for f in ["S[b] prison", "C[g] free & !S[g] prison", "S[l] C[g] prison"] {
        let fast = truth_names(&json(&["eval", "montana-house", f]));
        assert_eq!(truth_names(&json(&["eval", "montana-house", f, "--oracle"])), fast, "{f}");
        assert_eq!(truth_names(&json(&["eval", "montana-house", f, "--no-prune"])), fast, "{f}");
    }
}

#[test]
fn gap_examples() {
    assert_eq!(stdout(&respcheck(&["gap", "montana-house", "prison", "cs", "1"])), "{w1}\n");
    assert_eq!(stdout(&respcheck(&["gap", "montana-a", "prison", "cs", "1"])), "{}\n");
    let base = json(&["eval", "montana-house", "prison"]);
    let zero = json(&["gap", "montana-house", "prison", "c", "0"]);
    assert_eq!(truth_names(&zero), truth_names(&base));
}

#[test]
fn gap_expansion_and_vanishing() {
    let v = json(&["gap", "montana-house", "prison", "cs", "1", "--expand"]);
    let expansion = v["result"]["expansion"].as_str().unwrap();
    let game = fixture(FixtureName::MontanaHouse, None).unwrap();
    let set = truth_set(&game, &parse_formula(expansion).unwrap());
    assert_eq!(set.names(), truth_names(&v));

    let v = json(&["gap", "hog:3", "p", "cs", "--find-vanishing"]);
    assert_eq!(v["result"]["type"], "vanishing");
    let order = v["result"]["vanishing_order"].as_u64().unwrap();
    assert!(order <= 9);
}

#[test]
fn vanishing_needs_a_proper_base() {
    let out = respcheck(&["gap", "montana-a", "true", "c", "--find-vanishing"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("every outcome"));
}

#[test]
fn verify_passes_on_fixtures() {
    let out = respcheck(&["verify", "montana-a"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v = json(&["verify", "hog", "--param", "3"]);
    assert_eq!(v["result"]["passed"], true);
    for entry in v["result"]["max_vanishing"].as_array().unwrap() {
        if let Some(order) = entry["max_order"].as_u64() {
            assert!(order <= 9, "{entry}");
        }
    }
}

#[test]
fn verify_catches_a_corrupted_engine() {
    let out = respcheck(&["verify", "montana-a", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("FAIL oracle-equivalence"));
}

#[test]
fn verify_reads_formula_files() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# clemency\nprison\nC[g] prison  # inline\n\nS[b] free").unwrap();
    let v = json(&["verify", "montana-a", "--formulas", file.path().to_str().unwrap()]);
    assert_eq!(v["result"]["formulas"], 3);
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn fixture_text() {
    assert_eq!(stdout(&respcheck(&["fixture", "montana-a"])), "(b {prison} (g {prison} {free}))\n");
    let g = parse_game(&stdout(&respcheck(&["fixture", "gn", "--param", "2"]))).unwrap();
    assert_eq!((g.decision_count(), g.outcome_count()), (5, 6));
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--seed", "7", "--depth", "3", "--branching", "2", "--agents", "a,b", "--props", "p"];
    let first = respcheck(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, respcheck(&args).stdout);
    let params = GenParams::new(7, 3, 2, &["a", "b"], &["p"]);
    assert_eq!(stdout(&first).trim_end(), random_game(&params).unwrap().to_string());
}

#[test]
fn json_output_is_stable() {
    let args = ["--format", "json", "verify", "cvs", "--seed", "3", "--count", "5"];
    assert_eq!(respcheck(&args).stdout, respcheck(&args).stdout);
}

#[test]
fn game_files_match_the_library() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..10 {
        let game = random_game(&GenParams::new(seed, 4, 3, &["a", "b", "c"], &["p", "q"])).unwrap();
        let path = dir.path().join(format!("g{seed}.game"));
        std::fs::write(&path, format!("; seed {seed}\n{game}\n")).unwrap();
        for f in ["C[a] p", "S[b] (p | q)", "!C[c] S[a] q"] {
            let v = json(&["eval", path.to_str().unwrap(), f]);
            assert_eq!(truth_names(&v), truth_set(&game, &parse_formula(f).unwrap()).names(), "seed {seed}: {f}");
        }
    }
}

#[test]
fn unknown_names_warn() {
    let out = respcheck(&["eval", "montana-a", "C[x] jail"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{}\n");
    let err = stderr(&out);
    assert!(err.contains("proposition `jail`"), "{err}");
    assert!(err.contains("agent `x`"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["eval", "montana-a", "prison &"][..],
        &["eval", "no-such-game", "p"],
        &["gap", "montana-a", "prison", "x", "1"],
        &["gap", "montana-a", "prison", "c"],
        &["fixture", "gn"],
        &["gen", "--seed", "1", "--density", "2"],
        &["frobnicate"],
    ] {
        let out = respcheck(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn malformed_game_file_reports_position() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "(a {{p}} (b))").unwrap();
    let out = respcheck(&["eval", file.path().to_str().unwrap(), "p"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("1:10"), "{}", stderr(&out));
}
