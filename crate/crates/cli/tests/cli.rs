//! End-to-end tests of the binary: spawn it exactly as a user would and
//! assert on stdout bytes and exit codes. The byte-identity guarantee is
//! tested by literal comparison of repeated runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keller-forge"))
        .args(args)
        .env_remove("KELLER_FORGE_SEED")
        .output()
        .expect("binary spawns")
}

fn forge_seeded(seed: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_keller-forge"))
        .args(args)
        .env("KELLER_FORGE_SEED", seed)
        .output()
        .expect("binary spawns")
}

fn out(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn err(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

/// Absolute path into the shipped catalog.
fn catalog(rel: &str) -> String {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.push("../../catalog");
    path.push(rel);
    path.to_string_lossy().into_owned()
}

#[test]
fn jac_prints_the_bare_polynomial() {
    let output = forge(&["jac", "--n", "2", "x1", "x1*x2"]);
    assert_eq!(code(&output), 0);
    assert_eq!(out(&output), "x1\n");
}

#[test]
fn kv_format_prints_machine_lines() {
    let output = forge(&["--format", "kv", "jac", "--n", "2", "x1", "x1*x2"]);
    assert_eq!(out(&output), "jac: x1\n");
}

#[test]
fn theorem2_confirms_the_shipped_fixture() {
    let file = catalog("instances/e1.inst");
    let output = forge(&["theorem2", "--instance", &file, "--cap", "4"]);
    assert_eq!(code(&output), 0, "stderr: {}", err(&output));
    let text = out(&output);
    assert!(text.contains("jac_divisible = true"), "{text}");
    assert!(text.contains("witness_degree = 2"), "{text}");
    assert!(text.contains("verdict = EquivalenceConfirmed"), "{text}");
}

#[test]
fn keller_exhibits_a_witness_for_the_product_map() {
    let file = catalog("endos/nk_x_xy.endo");
    let output = forge(&["keller", "--phi", &file]);
    assert_eq!(code(&output), 0, "stderr: {}", err(&output));
    let text = out(&output);
    assert!(text.contains("jac = x1"), "{text}");
    assert!(text.contains("keller = false"), "{text}");
    assert!(text.contains("witness_g = x1"), "{text}");
    assert!(text.contains("verdict = EquivalenceConfirmed"), "{text}");
}

#[test]
fn keller_audits_an_automorphism_cleanly() {
    let file = catalog("endos/aut_tri.endo");
    let output = forge(&["keller", "--phi", &file]);
    assert_eq!(code(&output), 0);
    let text = out(&output);
    assert!(text.contains("keller = true"), "{text}");
    assert!(text.contains("audit = 25/25 square-free images"), "{text}");
    assert!(text.contains("verdict = EquivalenceConfirmed"), "{text}");
}

#[test]
fn automorphism_prints_a_round_tripped_inverse() {
    let output = forge(&["automorphism", "--n", "2", "x1", "x2 + x1^2"]);
    assert_eq!(code(&output), 0);
    let text = out(&output);
    assert!(text.contains("outcome = automorphism"), "{text}");
    assert!(text.contains("inverse1 = x1"), "{text}");
    assert!(text.contains("inverse2 = -x1^2 + x2"), "{text}");

    let output = forge(&["automorphism", "--n", "2", "x1^2", "x2"]);
    assert!(out(&output).contains("outcome = not surjective"));
    let output = forge(&["automorphism", "--n", "2", "x1", "x1*x2"]);
    assert!(out(&output).contains("outcome = not surjective"));
}

#[test]
fn eliminate_and_member_speak_the_tag_ring() {
    let output = forge(&["eliminate", "--n", "2", "--keep", "2", "x1^2 - x2", "x1*x2 - 1"]);
    assert_eq!(out(&output), "y1^3 - 1\n");

    let output = forge(&[
        "member",
        "--n",
        "2",
        "--target",
        "x1^2 + 2*x1*x2^2 + x2^4 + 1",
        "x1 + x2^2",
    ]);
    let text = out(&output);
    assert!(text.contains("member = true"), "{text}");
    assert!(text.contains("expression = y1^2 + 1"), "{text}");
}

#[test]
fn exit_codes_separate_error_classes() {
    // Malformed polynomial: input error.
    let output = forge(&["jac", "--n", "2", "x1 +", "x2"]);
    assert_eq!(code(&output), 2);
    assert!(err(&output).contains("parse error at byte 4"));

    // Variable outside the ring: input error.
    let output = forge(&["jac", "--n", "2", "x3", "x2"]);
    assert_eq!(code(&output), 2);

    // Desk-scale factorization bound: its own code.
    let output = forge(&["factor", "--n", "2", "x1^9 + x2"]);
    assert_eq!(code(&output), 3);
    assert!(err(&output).contains("degree bound exceeded"));

    // Witness search on an input that satisfies the jacobian condition:
    // precondition violation, input error.
    let output = forge(&["witness", "--n", "2", "x1", "x2"]);
    assert_eq!(code(&output), 2);

    // Usage errors are input errors too (clap's native convention).
    let output = forge(&["jac", "--n", "2"]);
    assert_eq!(code(&output), 2);

    // Honest exhaustion is still a computed verdict.
    let output = forge(&["witness", "--cap", "1", "--n", "2", "x1", "x1*x2^3"]);
    assert_eq!(code(&output), 0, "stderr: {}", err(&output));
}

#[test]
fn malformed_files_are_named_with_line() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("broken.inst");
    std::fs::write(&path, "n = 2\nf1 = x1 +\n").expect("write");

    let output = forge(&["theorem2", "--instance", path.to_str().expect("utf8 path")]);
    assert_eq!(code(&output), 2);
    let text = err(&output);
    assert!(text.contains("broken.inst:2"), "{text}");

    let output = forge(&["catalog", dir.path().to_str().expect("utf8 path")]);
    assert_eq!(code(&output), 2);
    assert!(err(&output).contains("broken.inst:2"));
}

#[test]
fn empty_catalog_directory_is_an_empty_table() {
    let dir = tempfile::tempdir().expect("tempdir");
    let output = forge(&["catalog", dir.path().to_str().expect("utf8 path")]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        out(&output),
        "0 file(s): 0 confirmed, 0 inconclusive, 0 counterexample(s)\n"
    );
}

#[test]
fn shipped_catalog_verifies_without_counterexamples() {
    let output = forge(&["catalog", &catalog("")]);
    assert_eq!(code(&output), 0, "stderr: {}", err(&output));
    let text = out(&output);
    assert!(text.contains("48 file(s)"), "{text}");
    assert!(text.contains("0 counterexample(s)"), "{text}");
    assert!(!text.contains("CounterexampleFound"), "{text}");
}

#[test]
fn identical_invocations_produce_identical_bytes() {
    let file = catalog("instances/t2_n3_cycle_x2.inst");
    let first = forge(&["theorem2", "--instance", &file]);
    let second = forge(&["theorem2", "--instance", &file]);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());

    let first = forge(&["--format", "kv", "catalog", &catalog("m1")]);
    let second = forge(&["--format", "kv", "catalog", &catalog("m1")]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn seed_is_validated_and_deterministic() {
    let file = catalog("instances/e1.inst");
    let bad = forge_seeded("not-a-number", &["theorem2", "--instance", &file]);
    assert_eq!(code(&bad), 2);
    assert!(err(&bad).contains("KELLER_FORGE_SEED"));

    let first = forge_seeded("42", &["theorem2", "--instance", &file]);
    let second = forge_seeded("42", &["theorem2", "--instance", &file]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(out(&first).contains("verdict = EquivalenceConfirmed"));
}

#[test]
fn timings_flag_is_the_only_nondeterminism() {
    let output = forge(&["--timings", "jac", "--n", "2", "x1", "x1*x2"]);
    let text = out(&output);
    assert!(text.starts_with("x1\n"), "{text}");
    assert!(text.contains("time: "), "{text}");

    let output = forge(&["--timings", "--format", "kv", "jac", "--n", "2", "x1", "x2"]);
    assert!(out(&output).contains("time_ms: "));
}

#[test]
fn witness_search_cap_precedence_is_cli_over_file() {
    // nk_x_xy carries no cap; the file's hardest witness has degree 2, so
    // capping at 1 from the command line must come back inconclusive.
    let file = catalog("endos/nk_x_xy.endo");
    let output = forge(&["witness", "--phi", &file, "--cap", "1"]);
    assert_eq!(code(&output), 0);
    let text = out(&output);
    assert!(text.contains("witness_w = none"), "{text}");
    assert!(text.contains("verdict = InconclusiveCapReached"), "{text}");
}
