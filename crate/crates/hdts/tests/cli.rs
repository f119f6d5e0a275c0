//! End-to-end tests of the command-line surface and its exit codes.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hdts"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("the binary runs")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hdts-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn gen_and_check_roundtrip() {
    let dir = tempdir("gen-check");
    let out = run_in(&dir, &["gen", "cube", "x", "y", "-o", "c2.hdts"]);
    assert_eq!(code(&out), 0, "{out:?}");
    let out = run_in(&dir, &["check", "c2.hdts"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("classes: weak=true cubical=true regular=true"));
}

#[test]
fn check_json_report_is_machine_readable() {
    let dir = tempdir("json");
    run_in(&dir, &["gen", "pure", "x", "y", "-o", "p.hdts"]);
    let out = run_in(&dir, &["check", "p.hdts", "--report", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["weak"], true);
    assert_eq!(v["cubical"], false);
    assert_eq!(v["axioms"]["all_actions_used"]["holds"], false);
    assert_eq!(v["axioms"]["multiset"]["holds"], true);
}

#[test]
fn check_reads_stdin() {
    let dir = tempdir("stdin");
    let mut child = bin()
        .current_dir(&dir)
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"hdts 1\nstate a\nstate b\naction u x\ntrans a u b\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn parse_error_exits_3() {
    let dir = tempdir("parse-err");
    std::fs::write(dir.join("bad.hdts"), "hdts 1\nstate a\ntrans a ghost a\n").unwrap();
    let out = run_in(&dir, &["check", "bad.hdts"]);
    assert_eq!(code(&out), 3);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn precondition_failure_exits_4() {
    let dir = tempdir("precond");
    run_in(&dir, &["gen", "pure", "x", "y", "-o", "p.hdts"]);
    let out = run_in(&dir, &["cyl", "p.hdts", "-o", "out.hdts"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn budget_exhaustion_exits_5() {
    let dir = tempdir("budget");
    run_in(&dir, &["gen", "cube", "x", "x", "x", "-o", "c.hdts"]);
    let out = run_in(&dir, &["iso", "c.hdts", "c.hdts", "--budget", "3"]);
    assert_eq!(code(&out), 5);
}

#[test]
fn weq_distinguishes_the_two_localizations() {
    let dir = tempdir("weq");
    run_in(&dir, &["gen", "wbar2-map", "x", "-o", "g.map"]);
    let out = run_in(&dir, &["weq", "g.map", "--structure", "bl-rts"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "true");
    let out = run_in(&dir, &["weq", "g.map", "--structure", "bl-cts"]);
    assert_eq!(code(&out), 1);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "false");
}

#[test]
fn fibrant_answers_and_ld_needs_sufficient_only() {
    let dir = tempdir("fibrant");
    run_in(&dir, &["gen", "cube", "x", "y", "-o", "good.hdts"]);
    run_in(&dir, &["gen", "cube", "x", "x", "-o", "bad.hdts"]);
    assert_eq!(
        code(&run_in(
            &dir,
            &["fibrant", "good.hdts", "--structure", "bl-cts"]
        )),
        0
    );
    assert_eq!(
        code(&run_in(
            &dir,
            &["fibrant", "bad.hdts", "--structure", "bl-cts"]
        )),
        1
    );
    assert_eq!(
        code(&run_in(
            &dir,
            &["fibrant", "good.hdts", "--structure", "ld"]
        )),
        2
    );
    let out = run_in(
        &dir,
        &[
            "fibrant",
            "bad.hdts",
            "--structure",
            "ld",
            "--sufficient-only",
        ],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "true");
    run_in(&dir, &["gen", "zx", "x", "-o", "zx.hdts"]);
    let out = run_in(
        &dir,
        &[
            "fibrant",
            "zx.hdts",
            "--structure",
            "ld",
            "--sufficient-only",
        ],
    );
    assert_eq!(code(&out), 1);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "unknown");
}

#[test]
fn iso_finds_the_swap_and_rejects_the_boundary() {
    let dir = tempdir("iso");
    run_in(&dir, &["gen", "cube", "x", "y", "-o", "a.hdts"]);
    run_in(&dir, &["gen", "cube", "y", "x", "-o", "b.hdts"]);
    run_in(&dir, &["gen", "boundary", "x", "y", "-o", "d.hdts"]);
    let out = run_in(&dir, &["iso", "a.hdts", "b.hdts"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("hdts-map 1"));
    assert_eq!(code(&run_in(&dir, &["iso", "a.hdts", "d.hdts"])), 1);
}

#[test]
fn pushout_modes_differ_on_the_appendix_fixture() {
    let dir = tempdir("pushout");
    run_in(&dir, &["gen", "p", "x", "-o", "p.map"]);
    run_in(&dir, &["gen", "wbar3-attach", "x", "-o", "att.map"]);
    let out = run_in(
        &dir,
        &[
            "pushout", "p.map", "att.map", "--mode", "cts", "-o", "cts.hdts",
        ],
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let out = run_in(
        &dir,
        &[
            "pushout", "p.map", "att.map", "--mode", "rts", "-o", "rts.hdts",
        ],
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let cts = std::fs::read_to_string(dir.join("cts.hdts")).unwrap();
    let rts = std::fs::read_to_string(dir.join("rts.hdts")).unwrap();
    let states = |doc: &str| doc.lines().filter(|l| l.starts_with("state ")).count();
    assert_eq!(states(&cts), 14);
    assert_eq!(states(&rts), 8);
}

#[test]
fn reflect_emits_system_and_unit_map() {
    let dir = tempdir("reflect");
    run_in(&dir, &["gen", "intro", "3", "-o", "i.hdts"]);
    let out = run_in(
        &dir,
        &[
            "reflect", "csa2", "i.hdts", "-o", "r.hdts", "--unit", "unit.map",
        ],
    );
    assert_eq!(code(&out), 0);
    let doc = std::fs::read_to_string(dir.join("r.hdts")).unwrap();
    assert_eq!(doc.lines().filter(|l| l.starts_with("state ")).count(), 4);
    // The unit map file parses against its referenced endpoints.
    let out = run_in(&dir, &["weq", "unit.map", "--structure", "ld-cts"]);
    assert!(code(&out) == 0 || code(&out) == 1);
}

#[test]
fn coreflect_cub_splits_the_double() {
    let dir = tempdir("coreflect");
    run_in(&dir, &["gen", "double", "x", "-o", "d.hdts"]);
    let out = run_in(&dir, &["coreflect", "cub", "d.hdts", "-o", "c.hdts"]);
    assert_eq!(code(&out), 0);
    let doc = std::fs::read_to_string(dir.join("c.hdts")).unwrap();
    assert_eq!(doc.lines().filter(|l| l.starts_with("action ")).count(), 2);
}

#[test]
fn product_and_cocyl_subcommands_work() {
    let dir = tempdir("product");
    run_in(&dir, &["gen", "cube", "x", "-o", "cx.hdts"]);
    let out = run_in(&dir, &["product", "cx.hdts", "cx.hdts", "-o", "sq.hdts"]);
    assert_eq!(code(&out), 0);
    let doc = std::fs::read_to_string(dir.join("sq.hdts")).unwrap();
    assert_eq!(doc.lines().filter(|l| l.starts_with("state ")).count(), 4);
    assert_eq!(
        code(&run_in(&dir, &["cocyl", "cx.hdts", "-o", "co.hdts"])),
        0
    );
}

#[test]
fn rlp_subcommand_answers() {
    let dir = tempdir("rlp");
    run_in(&dir, &["gen", "p", "x", "-o", "p.map"]);
    run_in(&dir, &["gen", "theta", "x", "-o", "th.map"]);
    let out = run_in(&dir, &["rlp", "p.map", "th.map"]);
    assert_eq!(code(&out), 1);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "false");
}

#[test]
fn duplicate_trans_line_warns_but_parses() {
    let dir = tempdir("dup");
    std::fs::write(
        dir.join("d.hdts"),
        "hdts 1\nstate a\nstate b\naction u x\ntrans a u b\ntrans a u b\n",
    )
    .unwrap();
    let out = run_in(&dir, &["check", "d.hdts"]);
    assert_eq!(code(&out), 0);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("duplicate transition"), "{err}");
}
