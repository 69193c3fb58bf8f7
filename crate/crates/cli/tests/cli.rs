use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_magicchains");

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, envs: &[(&str, &str)]) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .envs(envs.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    // ignore EPIPE: some commands fail before draining stdin
    let _ = child
        .stdin
        .as_mut()
        .expect("stdin")
        .write_all(stdin.as_bytes());
    child.wait_with_output().expect("wait")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn parsed(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn gen_cycle_emits_graph_doc() {
    let out = run(&["gen", "cycle", "4"], "");
    assert_eq!(code(&out), 0);
    assert_eq!(
        parsed(&out),
        json!({"n": 4, "edges": [[0, 1], [0, 3], [1, 2], [2, 3]]})
    );
}

#[test]
fn verify_t1_reports_grid_witness() {
    let g = stdout(&run(&["gen", "grid", "4", "3"], ""));
    let out = run(&["verify-t1", "--centers", "0,4,8,9"], &g);
    assert_eq!(code(&out), 0);
    let v = parsed(&out);
    assert_eq!(v["valid"], json!(true));
    assert_eq!(v["witness"]["v_first"], json!(2));
    assert_eq!(v["witness"]["v_last"], json!(10));
    assert_eq!(v["witness"]["centers"], json!([0, 4, 8, 9]));
}

#[test]
fn verify_t1_rejects_with_reason() {
    let g = stdout(&run(&["gen", "cycle", "4"], ""));
    let out = run(&["verify-t1", "--centers", "0,2"], &g);
    assert_eq!(code(&out), 0);
    let v = parsed(&out);
    assert_eq!(v["valid"], json!(false));
    assert_eq!(v["rejection"]["reason"], json!("end_difference_not_singleton"));
}

#[test]
fn certify_cycle_four_is_magic() {
    let g = stdout(&run(&["gen", "cycle", "4"], ""));
    let out = run(&["certify"], &g);
    assert_eq!(code(&out), 0);
    let v = parsed(&out);
    assert_eq!(v["verdict"], json!("magic"));
    assert_eq!(v["S"], json!(5));
    assert_eq!(v["labeling"], json!([1, 2, 4, 3]));
}

#[test]
fn certify_under_tight_cap_is_inconclusive() {
    let g = stdout(&run(&["gen", "cycle", "4"], ""));
    let out = run(&["certify", "--oracle-cap", "3"], &g);
    assert_eq!(code(&out), 2);
    assert_eq!(parsed(&out)["verdict"], json!("inconclusive"));
}

#[test]
fn certify_cycle_six_finds_forbidden_pair() {
    let g = stdout(&run(&["gen", "cycle", "6"], ""));
    let out = run(&["certify"], &g);
    assert_eq!(code(&out), 0);
    let v = parsed(&out);
    assert_eq!(v["verdict"], json!("not_magic"));
    assert_eq!(
        v["certificate"],
        json!({"kind": "forbidden_pair", "u": 0, "v": 2})
    );
}

#[test]
fn solve_grid_four_three_is_not_magic() {
    let g = stdout(&run(&["gen", "grid", "4", "3"], ""));
    let out = run(&["solve"], &g);
    assert_eq!(code(&out), 0);
    let v = parsed(&out);
    assert_eq!(v["verdict"], json!("not_magic"));
    assert_eq!(v["S"], Value::Null);
    assert_eq!(v["labeling"], Value::Null);
}

#[test]
fn grid_t2_emits_interlock_witnesses() {
    let out = run(&["grid-t2", "3", "5"], "");
    assert_eq!(code(&out), 0);
    let v = parsed(&out);
    assert_eq!(v["pair"]["first"]["centers"], json!([0, 6, 12]));
    assert_eq!(v["pair"]["second"]["centers"], json!([2, 8, 14]));
    assert_eq!(v["pair"]["start"], json!([1]));
    assert_eq!(v["pair"]["end"], json!([13]));
    assert_eq!(v["pair"]["middle"], json!([[7]]));
}

#[test]
fn find_t2_pairs_grid_diagonals() {
    let g = stdout(&run(&["gen", "grid", "3", "5"], ""));
    let out = run(&["find-t2", "--length", "3"], &g);
    assert_eq!(code(&out), 0);
    let v = parsed(&out);
    assert_eq!(v["found"], json!(true));
    assert_eq!(v["pair"]["first"]["centers"], json!([0, 6, 12]));
    assert_eq!(v["pair"]["second"]["centers"], json!([2, 8, 14]));
}

#[test]
fn find_t1_truncated_empty_exits_two() {
    let g = stdout(&run(&["gen", "grid", "4", "6"], ""));
    let out = run(&["find-t1", "--length", "4", "--budget", "2"], &g);
    assert_eq!(code(&out), 2);
    let v = parsed(&out);
    assert_eq!(v["chains"], json!([]));
    assert_eq!(v["complete"], json!(false));
}

#[test]
fn export_json_round_trips_byte_identical() {
    let g = stdout(&run(&["gen", "grid", "3", "4"], ""));
    let again = stdout(&run(&["export"], &g));
    assert_eq!(g, again);
}

#[test]
fn export_text_round_trips_unlabeled_graphs() {
    let g = stdout(&run(&["gen", "cycle", "5"], ""));
    let text = stdout(&run(&["export", "--format", "text"], &g));
    assert!(text.starts_with("n 5\n"));
    let back = stdout(&run(&["export", "--format", "json"], &text));
    assert_eq!(g, back);
}

#[test]
fn certificate_centers_feed_back_into_verify_t1() {
    let g = stdout(&run(&["gen", "grid", "4", "3"], ""));
    let cert = parsed(&run(&["certify"], &g));
    assert_eq!(cert["certificate"]["kind"], json!("even_chain"));
    let centers: Vec<String> = cert["certificate"]["centers"]
        .as_array()
        .expect("centers array")
        .iter()
        .map(|v| v.to_string())
        .collect();
    let out = run(&["verify-t1", "--centers", &centers.join(",")], &g);
    let v = parsed(&out);
    assert_eq!(v["valid"], json!(true));
    assert_eq!(v["witness"]["v_first"], cert["certificate"]["v_first"]);
    assert_eq!(v["witness"]["v_last"], cert["certificate"]["v_last"]);
}

#[test]
fn nsg_extracts_union_subgraph() {
    let g = stdout(&run(&["gen", "grid", "2", "4"], ""));
    let out = run(&["nsg", "--centers", "0,5"], &g);
    assert_eq!(code(&out), 0);
    let v = parsed(&out);
    assert_eq!(v["original_ids"], json!([0, 1, 3, 4, 5, 6]));
    assert_eq!(v["connected"], json!(true));
    assert_eq!(v["graph"]["n"], json!(6));
}

#[test]
fn classify_reads_family_documents() {
    let fam = r#"{"universe":4,"terms":[[0,1],[1,2],[2,3]]}"#;
    let out = run(&["classify", "--format", "text"], fam);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "open_chain\n");
    let short = r#"{"universe":2,"terms":[[0],[1]]}"#;
    assert_eq!(code(&run(&["classify", "--normalize"], short)), 1);
}

#[test]
fn dot_output_marks_chain_centers() {
    let g = stdout(&run(&["gen", "cycle", "4"], ""));
    let out = run(&["export", "--format", "dot", "--centers", "0"], &g);
    let dot = stdout(&out);
    assert!(dot.contains("0 [shape=doublecircle];"));
    assert!(dot.contains("2 -- 3 [style=dashed];"));
}

#[test]
fn files_work_in_place_of_pipes() {
    let dir = std::env::temp_dir();
    let input = dir.join("magicchains_cli_in.json");
    let output = dir.join("magicchains_cli_out.json");
    let g = stdout(&run(&["gen", "cycle", "4"], ""));
    std::fs::write(&input, &g).expect("write input");
    let out = run(
        &[
            "solve",
            "--in",
            input.to_str().expect("path"),
            "--out",
            output.to_str().expect("path"),
        ],
        "",
    );
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value =
        serde_json::from_str(&std::fs::read_to_string(&output).expect("read output")).expect("json");
    assert_eq!(v["verdict"], json!("magic"));
    let _ = std::fs::remove_file(&input);
    let _ = std::fs::remove_file(&output);
}

#[test]
fn thread_count_does_not_change_verdicts() {
    let g = stdout(&run(&["gen", "grid", "4", "3"], ""));
    let solo = parsed(&run(&["solve", "--deterministic"], &g));
    let multi = parsed(&run_env(&["solve"], &g, &[("MAGICCHAINS_THREADS", "4")]));
    assert_eq!(solo["verdict"], multi["verdict"]);
    assert_eq!(solo["verdict"], json!("not_magic"));
}

#[test]
fn bad_usage_and_bad_input_exit_one() {
    assert_eq!(code(&run(&["bogus"], "")), 1);
    assert_eq!(code(&run(&["solve"], "{ not json")), 1);
    assert_eq!(code(&run(&["solve", "--format", "dot"], "0 1")), 1);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"], "")), 0);
    assert_eq!(code(&run(&["--version"], "")), 0);
}
