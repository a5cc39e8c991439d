//! End-to-end command tests against the built binary.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nu-engine"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_c2_prints_structure() {
    let out = run(&["build", "C2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"order_nu\": 8"));
    assert!(text.contains("\"order_theta\": 4"));
}

#[test]
fn build_all_with_trivial_input_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.groups");
    std::fs::write(&path, "group T { gens: ; rels: ; }\n").unwrap();
    let out = run(&["build", "--all", "--corpus", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"order_nu\": 1"));
}

#[test]
fn overflow_exits_three() {
    let out = run(&["build", "S3", "--coset-cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn env_var_overrides_coset_cap() {
    let out = bin()
        .args(["build", "S3"])
        .env("NU_ENGINE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn parse_error_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.groups");
    std::fs::write(&path, "group X { gens a; }").unwrap();
    let out = run(&["build", "--all", "--corpus", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_group_exits_two() {
    let out = run(&["build", "NoSuchGroup"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_c2_all_suites_passes() {
    let out = run(&["verify", "C2", "--suite", "all"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"passed\": true"));
    assert!(!text.contains("\"passed\": false"));
}

#[test]
fn verify_records_sampled_scope_with_seed() {
    let out = run(&["verify", "D4", "--suite", "identities", "--seed", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"kind\": \"sampled\""));
    assert!(text.contains("\"seed\": 7"));
}

#[test]
fn verify_trivial_is_vacuous_pass() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.groups");
    std::fs::write(&path, "group T { gens: ; rels: ; }\n").unwrap();
    let out = run(&[
        "verify",
        "T",
        "--corpus",
        path.to_str().unwrap(),
        "--suite",
        "all",
    ]);
    assert!(out.status.success());
}

#[test]
fn table_dihedral_range() {
    let out = run(&["table", "--family", "dihedral", "--range", "3..8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows = text.matches("\"complete\": true").count();
    assert_eq!(rows, 6);
    assert!(!text.contains("\"max_commutator_class\": 3"));
}

#[test]
fn table_prufer_rows() {
    let out = run(&["table", "--family", "prufer", "--p", "3", "--k", "1..2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("\"complete\": true").count(), 2);
    for line in text.lines() {
        if line.contains("max_tensor_class") {
            let v: u64 = line
                .trim()
                .trim_start_matches("\"max_tensor_class\": ")
                .trim_end_matches(',')
                .parse()
                .unwrap();
            assert!(v <= 4);
        }
    }
}

#[test]
fn table_corpus_single_entry_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.csv");
    let out = run(&[
        "table",
        "--family",
        "corpus",
        "S3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "name,order_g,order_nu,order_h,n_max_tensor_class,order_nu_second_derived,order_g_second_derived,formula_ok"
    );
    let row = lines.next().unwrap();
    assert!(row.starts_with("S3,6,216,6,"));
    assert!(row.ends_with(",true"));
}

#[test]
fn table_with_impossible_cap_exits_three() {
    let out = run(&[
        "table", "--family", "corpus", "D12", "--coset-cap", "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // The row is still reported, marked incomplete.
    assert!(stdout(&out).contains("\"complete\": false"));
}

#[test]
fn identical_invocations_are_byte_identical(){
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            "verify",
            "S3",
            "--suite",
            "all",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn jobs_flag_does_not_change_output() {
    let one = run(&["table", "--family", "dihedral", "--range", "3..10"]);
    let four = run(&[
        "table", "--family", "dihedral", "--range", "3..10", "--jobs", "4",
    ]);
    assert_eq!(stdout(&one), stdout(&four));
}
