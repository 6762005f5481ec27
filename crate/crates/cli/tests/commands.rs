use std::fs;
use std::process::Command;

use degree_game::engine::GameTrace;
use degree_game_cli::{run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Out {
    cli_with_input(args, "")
}

fn cli_with_input(args: &[&str], input: &str) -> Out {
    let mut argv = vec!["degree-game"];
    argv.extend_from_slice(args);
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = run(argv, &mut input.as_bytes(), &mut o, &mut e);
    Out { code, stdout: String::from_utf8(o).unwrap(), stderr: String::from_utf8(e).unwrap() }
}

#[test]
fn simulate_builder_wins() {
    let o = cli(&["simulate", "--k", "4", "--n", "6", "--role", "builder", "--opponent", "random", "--games", "100", "--seed", "7"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert!(o.stdout.contains("hamiltonian: 100/100"));
    assert!(o.stdout.contains("path invariant violations: 0"));
}

#[test]
fn simulate_avoider_wins() {
    let o = cli(&["simulate", "--k", "3", "--n", "30", "--role", "avoider", "--opponent", "random", "--games", "100"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.contains("not 2-connected: 100/100"));
    assert!(!o.stdout.contains("FAIL"));
}

#[test]
fn role_preconditions_are_usage_errors() {
    let o = cli(&["simulate", "--k", "3", "--n", "10", "--role", "builder"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(o.stderr.contains("k >= 4"), "{}", o.stderr);
    let o = cli(&["simulate", "--k", "4", "--n", "10", "--role", "avoider"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert_eq!(cli(&["simulate", "--k", "4", "--n", "10", "--role", "builder", "--games", "0"]).code, EXIT_USAGE);
    assert_eq!(cli(&["simulate", "--bogus"]).code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
}

#[test]
fn help_exits_zero() {
    let o = cli(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("check-trace"));
}

#[test]
fn exhaust_examples() {
    let o = cli(&["exhaust", "--k", "4", "--n", "5", "--role", "builder"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.contains("hamiltonian on every line: yes"));
    let o = cli(&["exhaust", "--k", "4", "--n", "6", "--role", "builder", "--first", "opponent"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    let o = cli(&["exhaust", "--k", "3", "--n", "3", "--role", "avoider"]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.stdout.contains("below n0"));
    assert_eq!(cli(&["exhaust", "--k", "4", "--n", "12", "--role", "builder"]).code, EXIT_USAGE);
    let o = cli(&["exhaust", "--k", "4", "--n", "6", "--role", "builder", "--max-nodes", "10", "--pruning", "none"]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.stderr.contains("budget"), "{}", o.stderr);
}

#[test]
fn solve_prints_fixed_keys() {
    let o = cli(&["solve", "--k", "3", "--n", "3"]);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.starts_with(r#"{"k":3,"n":3,"side":"pursuer","objective":"force-hamiltonian","mover_wins":true,"principal_move":[0,1],"nodes":"#), "{}", o.stdout);
    let o = cli(&["solve", "--k", "3", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["mover_wins"], false);
    assert_eq!(cli(&["solve", "--k", "3", "--n", "20"]).code, EXIT_USAGE);
    assert_eq!(cli(&["solve", "--k", "3"]).code, EXIT_USAGE);
}

#[test]
fn classify_files() {
    let dir = tempfile::tempdir().unwrap();
    // K4 with edge 1-2 subdivided by the path 1-4-5-2: type H at 4, 5
    let h = dir.path().join("h.txt");
    fs::write(&h, "6 3\n0 1\n0 2\n0 3\n1 3\n2 3\n1 4\n4 5\n5 2\n").unwrap();
    let o = cli(&["classify", h.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.trim(), r#"{"label":"type-H","evidence":[4,5]}"#);
    let j = dir.path().join("x.json");
    fs::write(&j, r#"{"n":4,"k":3,"edges":[[0,1],[2,3]]}"#).unwrap();
    assert_eq!(cli(&["classify", j.to_str().unwrap(), "--root", "2"]).stdout.trim(), r#"{"label":"other","evidence":[]}"#);
    let k4 = dir.path().join("k4.txt");
    fs::write(&k4, "4 4\n0 1\n").unwrap();
    assert_eq!(cli(&["classify", k4.to_str().unwrap()]).code, EXIT_USAGE);
    assert_eq!(cli(&["classify", "/nonexistent/graph.txt"]).code, EXIT_USAGE);
}

#[test]
fn trace_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.jsonl");
    let p = path.to_str().unwrap();
    let o = cli(&["simulate", "--k", "3", "--n", "26", "--role", "avoider", "--first", "opponent", "--seed", "4", "--trace", p]);
    assert_eq!(o.code, EXIT_OK);
    let o = cli(&["check-trace", "--trace", p]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stdout);
    assert!(o.stdout.contains("replay: ok"));
    assert!(o.stdout.contains("monitor freedom-budget: pass"));

    let text = fs::read_to_string(&path).unwrap();
    let mut t = GameTrace::parse_jsonl(&text).unwrap();
    t.records[3].f_c += 7;
    let bad = dir.path().join("bad.jsonl");
    fs::write(&bad, t.to_jsonl()).unwrap();
    let o = cli(&["check-trace", "--trace", bad.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.stdout.contains("mismatch at move 3"), "{}", o.stdout);

    fs::write(&bad, "not json\n").unwrap();
    assert_eq!(cli(&["check-trace", "--trace", bad.to_str().unwrap()]).code, EXIT_FAIL);
}

#[test]
fn fabricated_equality_fails_the_budget_monitor() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.jsonl");
    let p = path.to_str().unwrap();
    cli(&["simulate", "--k", "3", "--n", "30", "--role", "avoider", "--seed", "11", "--trace", p]);
    let mut t = GameTrace::parse_jsonl(&fs::read_to_string(&path).unwrap()).unwrap();
    // inflate the snapshot after every opponent reply to the value before
    // the avoider's move: equality without an iso-iso reply
    let replies: Vec<usize> = (2..t.records.len()).filter(|&i| t.records[i].player == 2).collect();
    for i in replies {
        let s0 = t.records[i - 2].f_c + t.records[i - 2].e_d;
        t.records[i].e_d = s0 - t.records[i].f_c;
    }
    fs::write(&path, t.to_jsonl()).unwrap();
    let o = cli(&["check-trace", "--trace", p]);
    assert_eq!(o.code, EXIT_FAIL);
    assert!(o.stdout.contains("monitor freedom-budget: FAIL"), "{}", o.stdout);
}

#[test]
fn traces_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        let o = cli(&["simulate", "--k", "3", "--n", "24", "--role", "avoider", "--games", "4", "--seed", "9", "--jobs", "2", "--trace", d.to_str().unwrap()]);
        assert_eq!(o.code, EXIT_OK);
    }
    for i in 0..4u64 {
        let name = format!("game-{i}-seed-{}.jsonl", 9 + i);
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
    }
}

#[test]
fn play_rejects_bad_input_and_ends_on_eof() {
    let o = cli_with_input(&["play", "--n", "8"], "0 0\nhello\nshow\n");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("illegal: self-loop"));
    assert!(o.stdout.contains("expected two vertex numbers"));
    assert!(o.stdout.contains("session ended"));
}

#[test]
fn play_degree_cap_message() {
    let o = cli_with_input(&["play", "--n", "8", "--first", "engine", "--k", "3"], "0 2\n0 3\n0 4\n");
    assert!(o.stdout.contains("illegal: degree cap"), "{}", o.stdout);
}

#[test]
fn play_full_game_as_builder() {
    let n = 20;
    let mut input = String::new();
    for a in 0..n {
        for b in a + 1..n {
            input.push_str(&format!("{a} {b}\n"));
        }
    }
    let o = cli_with_input(&["play", "--n", "20", "--human", "builder"], &input);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("game over"), "{}", o.stdout);
    assert!(o.stdout.contains("not 2-connected: true"));
    assert!(o.stdout.contains("[main-row") || o.stdout.contains("[grow-small]"));
    let quiet = cli_with_input(&["play", "--n", "20", "--quiet"], &input);
    assert!(!quiet.stdout.contains("[grow-small]"));
}

#[test]
fn binary_reads_seed_from_env() {
    let bin = env!("CARGO_BIN_EXE_degree-game");
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.jsonl"), dir.path().join("b.jsonl"));
    let base = ["simulate", "--k", "4", "--n", "9", "--role", "builder", "--trace"];
    let s1 = Command::new(bin).args(base).arg(&a).env("DEGREE_GAME_SEED", "42").output().unwrap();
    let s2 = Command::new(bin).args(base).arg(&b).args(["--seed", "42"]).env_remove("DEGREE_GAME_SEED").output().unwrap();
    assert_eq!((s1.status.code(), s2.status.code()), (Some(0), Some(0)));
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let usage = Command::new(bin).args(["simulate", "--k", "3", "--n", "9", "--role", "builder"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
