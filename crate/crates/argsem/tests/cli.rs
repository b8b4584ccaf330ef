//! End-to-end checks of the command-line interface: output shapes, exit
//! codes, stdin and file input, and the cap override.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str, envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_argsem"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_line(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

const THREE_CYCLE: &str = "arg(a).\narg(b).\narg(c).\natt(a,b).\natt(b,c).\natt(c,a).\n";
const CHAIN: &str = "a :- not b.\nb :- not c.\nc.\n";
const GUARDED: &str = "a :- not b.\nb :- c, not d.\nc.\n";

#[test]
fn af_solve_reports_extensions_as_json() {
    let out = run(&["af-solve", "--sem", "stable"], THREE_CYCLE, &[]);
    assert_eq!(
        stdout_line(&out),
        r#"{"semantics":"stable","extensions":[]}"#
    );
    let out = run(&["af-solve", "--sem", "cf2"], THREE_CYCLE, &[]);
    assert_eq!(
        stdout_line(&out),
        r#"{"semantics":"cf2","extensions":[["a"],["b"],["c"]]}"#
    );
}

#[test]
fn lp_transfer_reports_outcomes_and_repair() {
    let out = run(&["lp-transfer", "--sem", "preferred"], CHAIN, &[]);
    assert_eq!(
        stdout_line(&out),
        r#"{"semantics":"preferred","outcomes":[{"rule_in":["r1","r3"],"in_as":["a","c"],"consistent":true,"derived":["a","c"]}]}"#
    );
    let out = run(&["lp-transfer", "--sem", "preferred", "--repair"], GUARDED, &[]);
    assert_eq!(
        stdout_line(&out),
        r#"{"semantics":"preferred","repair":true,"derived":[["a","c"],["b","c"]]}"#
    );
}

#[test]
fn lp_stable_lists_models() {
    let out = run(&["lp-stable"], CHAIN, &[]);
    assert_eq!(stdout_line(&out), r#"{"stable_models":[["a","c"]]}"#);
}

#[test]
fn text_output_mode_is_supported() {
    let out = run(&["af-solve", "--sem", "preferred", "--output", "text"], THREE_CYCLE, &[]);
    assert_eq!(stdout_line(&out), "preferred: 1 extension(s)\n  {}");
}

#[test]
fn file_input_matches_stdin_input() {
    let dir = std::env::temp_dir().join(format!("argsem-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("chain.lp");
    std::fs::write(&path, CHAIN).unwrap();
    let from_file = run(&["lp-stable", path.to_str().unwrap()], "", &[]);
    let from_stdin = run(&["lp-stable"], CHAIN, &[]);
    assert_eq!(from_file.stdout, from_stdin.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_errors_exit_with_code_one() {
    let out = run(&["lp-stable"], "a :- b\n", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = run(&["af-solve", "--sem", "grounded"], "nonsense\n", &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn hypothesis_cap_exceeded_exits_with_code_two() {
    let out = run(&["hypo", "--sem", "preferred", "--cap", "2"], GUARDED, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn env_var_overrides_hypothesis_cap() {
    let out = run(&["hypo", "--sem", "preferred"], GUARDED, &[("ARGSEM_CAP", "2")]);
    assert_eq!(out.status.code(), Some(2));
    // An explicit --cap wins over the environment.
    let out = run(
        &["hypo", "--sem", "preferred", "--cap", "12"],
        GUARDED,
        &[("ARGSEM_CAP", "2")],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_check_rejects_oversized_instances() {
    let out = run(&["oracle-check", "--max-size", "9"], "", &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn representation_commands_roundtrip_through_text() {
    let to_lp = run(&["to-lp"], THREE_CYCLE, &[]);
    let program = stdout_line(&to_lp);
    assert_eq!(program, "a :- not c.\nb :- not a.\nc :- not b.");
    let from_lp = run(&["from-lp"], &format!("{program}\n"), &[]);
    assert_eq!(
        stdout_line(&from_lp),
        r#"{"valid":true,"framework":{"args":["a","b","c"],"attacks":[["a","b"],["b","c"],["c","a"]]},"violations":[]}"#
    );
}
