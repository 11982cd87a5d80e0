//! End-to-end tests of the binary: output goldens, exit codes, determinism
//! and the agreement between the group path and the table file path.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnside"))
        .args(args)
        .env_remove("BURNSIDE_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn run_with_cap(cap: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_burnside"))
        .args(args)
        .env("BURNSIDE_MAX_ORDER", cap)
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("stdout is utf-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

#[test]
fn help_and_version_succeed() {
    for args in [
        &["--help"][..],
        &["--version"][..],
        &["compute", "--help"][..],
    ] {
        let output = run(args);
        assert_eq!(exit_code(&output), 0, "{args:?}");
        assert!(!output.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_one() {
    let cases: Vec<&[&str]> = vec![
        &["compute"],
        &["compute", "--group", "C6", "--tom", "x"],
        &["compute", "--group", "C6", "--json", "--trace"],
        &["compute", "--group", "C6", "--format", "gap"],
        &["nonsense"],
    ];
    for args in cases {
        let output = run(args);
        assert_eq!(exit_code(&output), 1, "{args:?}");
        assert!(!output.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let first = run(&["compute", "--group", "S4", "--trace"]);
    let second = run(&["compute", "--group", "S4", "--trace"]);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn compute_reports_the_golden_json_line() {
    let output = run(&["compute", "--group", "A5", "--json"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(
        stdout_of(&output),
        "{\"L\":[0,0],\"components\":[[1,2,3,4,5,6,7,8],[9]],\"chi\":2}\n"
    );
}

#[test]
fn compute_trace_has_one_record_per_class() {
    let output = run(&["compute", "--group", "C6", "--trace"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    let records = text
        .lines()
        .filter(|l| l.trim_start().starts_with('('))
        .count();
    assert_eq!(records, 4);
    assert!(text.contains("L = [1]\n"));
    assert!(text.contains("components = [[1,2,3,4]]\n"));
    assert!(text.contains("chi = 0\n"));
}

#[test]
fn tom_prints_golden_tables() {
    let c6 = run(&["tom", "--group", "C6"]);
    assert_eq!(exit_code(&c6), 0);
    assert_eq!(stdout_of(&c6), "[[6],[3,3],[2,0,2],[1,1,1,1]]\n");

    let s3 = run(&["tom", "--group", "S3"]);
    assert_eq!(exit_code(&s3), 0);
    assert_eq!(stdout_of(&s3), "[[6],[3,1],[2,0,2],[1,1,1,1]]\n");

    let c1 = run(&["tom", "--group", "C1"]);
    assert_eq!(exit_code(&c1), 0);
    assert_eq!(stdout_of(&c1), "[[1]]\n");
}

#[test]
fn cycext_prints_golden_partitions() {
    let c6 = run(&["cycext", "--group", "C6", "--prime", "2"]);
    assert_eq!(exit_code(&c6), 0);
    assert_eq!(stdout_of(&c6), "[[1,2],[3,4]]\n");

    let a5 = run(&["cycext", "--group", "A5", "--prime", "3"]);
    assert_eq!(exit_code(&a5), 0);
    assert_eq!(stdout_of(&a5), "[[1,3],[2],[4,8],[5],[6],[7],[9]]\n");
}

#[test]
fn cycext_rejects_non_primes() {
    let output = run(&["cycext", "--group", "C6", "--prime", "4"]);
    assert_eq!(exit_code(&output), 1);
    assert!(String::from_utf8_lossy(&output.stderr).contains("not prime"));
}

#[test]
fn oversized_groups_exit_two() {
    let output = run(&["compute", "--group", "C1000000"]);
    assert_eq!(exit_code(&output), 2);
    assert!(String::from_utf8_lossy(&output.stderr).contains("order cap"));
}

#[test]
fn cap_override_is_honored() {
    let blocked = run_with_cap("10", &["compute", "--group", "C12"]);
    assert_eq!(exit_code(&blocked), 2);

    let allowed = run_with_cap("2000", &["compute", "--group", "C1200", "--json"]);
    assert_eq!(exit_code(&allowed), 0);

    let invalid = run_with_cap("abc", &["compute", "--group", "C6"]);
    assert_eq!(exit_code(&invalid), 1);

    let out_of_range = run_with_cap("0", &["compute", "--group", "C6"]);
    assert_eq!(exit_code(&out_of_range), 1);
}

#[test]
fn bad_group_specs_exit_one() {
    for spec in ["", "C0", "Z5", "C6x", "SL2_4", "D7"] {
        let output = run(&["compute", "--group", spec]);
        assert_eq!(exit_code(&output), 1, "{spec:?}");
    }
}

#[test]
fn malformed_tables_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(&str, &str)> = vec![
        ("syntax.tom", "[[6],[3,3]"),
        ("shape.tom", "[[6],[3,3,3]]"),
        ("ragged.tom", "[[6],[3,3],[2,0,2],[1,1,1,0]]"),
        (
            "order.json",
            "{\"order\": 7, \"marks\": [[6],[3,3],[2,0,2],[1,1,1,1]]}",
        ),
        (
            "unknown.json",
            "{\"order\": 1, \"marks\": [[1]], \"extra\": 0}",
        ),
    ];
    for (file_name, text) in cases {
        let path = dir.path().join(file_name);
        std::fs::write(&path, text).unwrap();
        let output = run(&["compute", "--tom", path.to_str().unwrap()]);
        assert_eq!(exit_code(&output), 1, "{file_name}");
        assert!(!output.stderr.is_empty(), "{file_name}");
    }

    let missing = run(&["compute", "--tom", "does-not-exist.tom"]);
    assert_eq!(exit_code(&missing), 1);
}

#[test]
fn format_override_forces_the_parser() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c6.tom");
    std::fs::write(&path, "[[6],[3,3],[2,0,2],[1,1,1,1]]").unwrap();

    let as_gap = run(&[
        "compute",
        "--tom",
        path.to_str().unwrap(),
        "--format",
        "gap",
    ]);
    assert_eq!(exit_code(&as_gap), 0);

    let as_json = run(&[
        "compute",
        "--tom",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&as_json), 1);
}

fn json_result(args: &[&str]) -> String {
    let output = run(args);
    assert_eq!(exit_code(&output), 0, "{args:?}");
    stdout_of(&output).to_owned()
}

#[test]
fn table_files_agree_with_direct_computation() {
    let dir = tempfile::tempdir().unwrap();
    for group in ["C6", "S4", "A5", "Q8", "C2xC6"] {
        let direct = json_result(&["compute", "--group", group, "--json"]);
        for format in ["gap", "json"] {
            let path = dir.path().join(format!("{group}.{format}"));
            let path = path.to_str().unwrap();
            let write = run(&["tom", "--group", group, "--out", path, "--format", format]);
            assert_eq!(exit_code(&write), 0, "{group} {format}");
            let via_file = json_result(&["compute", "--tom", path, "--json"]);
            assert_eq!(via_file, direct, "{group} {format}");
        }
    }
}

#[test]
fn json_tables_carry_the_group_name() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c6.json");
    let path = path.to_str().unwrap();
    let write = run(&["tom", "--group", "C6", "--out", path, "--format", "json"]);
    assert_eq!(exit_code(&write), 0);
    assert!(std::fs::read_to_string(Path::new(path))
        .unwrap()
        .contains("\"name\": \"C6\""));

    let report = run(&["compute", "--tom", path]);
    assert_eq!(exit_code(&report), 0);
    let text = stdout_of(&report);
    assert!(text.starts_with(&format!("table: {path}\n")));
    assert!(text.contains("name: C6\n"));
    assert!(text.contains("method: mark column congruence\n"));
}

#[test]
fn check_passes_on_small_groups() {
    let output = run(&["check", "--max-order", "30"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    assert!(text.contains("all invariants hold"));
    assert!(text.lines().any(|l| l.starts_with("A4 ")));
}
