//! End-to-end tests of the command-line surface: commands, file round-trips
//! and the documented exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dualspace"));
    cmd.env_remove("DUALSPACE_SEED");
    cmd
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

#[test]
fn apply_identity_right_to_delta() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.dsv");
    let status = bin()
        .args(["apply", "--side", "right", "--out"])
        .arg(&out_path)
        .arg("--matrix")
        .arg(data("identity2.dsm"))
        .arg("--vector")
        .arg(data("delta0.dsv"))
        .status()
        .unwrap();
    assert!(status.success());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(written, "field: GF(2)\ndim: 2\nkind: sparse\n0 1\n");
}

#[test]
fn apply_left_shifts_prefix_vector() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.dsv");
    // The GF(5) shift applied on the left to a QQ vector is a field mismatch;
    // use a matching matrix written on the fly.
    let matrix = dir.path().join("shift.dsm");
    std::fs::write(&matrix, "field: QQ\nrows: omega\ncols: omega\nkind: shift 1\n").unwrap();
    let status = bin()
        .args(["apply", "--side", "left", "--out"])
        .arg(&out_path)
        .arg("--matrix")
        .arg(&matrix)
        .arg("--vector")
        .arg(data("prefix123.dsv"))
        .status()
        .unwrap();
    assert!(status.success());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(written, "field: QQ\ndim: omega\nkind: prefix\nprefix: 2 3\ntail: repeat 1/2\n");
}

#[test]
fn compose_shifts_has_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("s3.dsm");
    let status = bin()
        .arg("compose")
        .arg(data("shift1.dsm"))
        .arg(data("shift2.dsm"))
        .arg("--out")
        .arg(&out_path)
        .status()
        .unwrap();
    assert!(status.success());
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert!(written.contains("kind: shift 3\n"), "got: {written}");
}

#[test]
fn dual_reports_orientation_flip_and_keeps_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("dual.dsm");
    let output = bin()
        .args(["dual", "--out"])
        .arg(&out_path)
        .arg("--matrix")
        .arg(data("shift1.dsm"))
        .output()
        .unwrap();
    assert!(output.status.success());
    assert!(stdout_of(&output).contains("right-on-finsupp -> left-on-prod"));
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(written, std::fs::read_to_string(data("shift1.dsm")).unwrap());
}

#[test]
fn limit_thread_prints_stages() {
    let output = bin()
        .args(["limit", "--depth", "4", "--mode", "thread", "--vector"])
        .arg(data("prefix123.dsv"))
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(stdout_of(&output), "1\n1 2\n1 2 3\n1 2 3 1/2\n");
}

#[test]
fn limit_roundtrip_verdict() {
    let output = bin()
        .args(["limit", "--depth", "16", "--mode", "roundtrip", "--vector"])
        .arg(data("prefix123.dsv"))
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(stdout_of(&output), "roundtrip depth=16 ok\n");
}

#[test]
fn verify_single_suite_reports_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let output = bin()
        .current_dir(dir.path())
        .args(["verify", "--suite", "adjoint", "--seed", "42", "--cases", "60"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert_eq!(text, "# dualspace verify seed=42 trunc=64 cases=60\nadjoint 60 pass\n");
}

#[test]
fn verify_seed_env_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let output = bin()
        .current_dir(dir.path())
        .env("DUALSPACE_SEED", "7")
        .args(["verify", "--suite", "limits", "--cases", "20", "--trunc", "8"])
        .output()
        .unwrap();
    assert!(stdout_of(&output).starts_with("# dualspace verify seed=7 "));

    let output = bin()
        .current_dir(dir.path())
        .env("DUALSPACE_SEED", "7")
        .args(["verify", "--suite", "limits", "--cases", "20", "--trunc", "8", "--seed", "9"])
        .output()
        .unwrap();
    assert!(stdout_of(&output).starts_with("# dualspace verify seed=9 "));
}

#[test]
fn exit_codes_per_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.dsv");

    // 3: the matrix file does not exist.
    let status = bin()
        .args(["apply", "--side", "right", "--out"])
        .arg(&out_path)
        .arg("--matrix")
        .arg(dir.path().join("missing.dsm"))
        .arg("--vector")
        .arg(data("delta0.dsv"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(3));

    // 4: a stored zero violates a file invariant.
    let status = bin()
        .args(["apply", "--side", "right", "--out"])
        .arg(&out_path)
        .arg("--matrix")
        .arg(data("bad_zero.dsm"))
        .arg("--vector")
        .arg(data("delta0.dsv"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));

    // 5: fields of matrix and vector disagree.
    let status = bin()
        .args(["apply", "--side", "left", "--out"])
        .arg(&out_path)
        .arg("--matrix")
        .arg(data("shift1.dsm"))
        .arg("--vector")
        .arg(data("prefix123.dsv"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(5));

    // 2: unknown flag (clap usage error).
    let status = bin().args(["verify", "--bogus"]).status().unwrap();
    assert_eq!(status.code(), Some(2));

    // 5: composing mismatched inner dimensions.
    let finite = dir.path().join("finite.dsm");
    std::fs::write(&finite, "field: GF(5)\nrows: 2\ncols: 2\nkind: identity\n").unwrap();
    let status = bin()
        .arg("compose")
        .arg(&finite)
        .arg(data("shift1.dsm"))
        .arg("--out")
        .arg(dir.path().join("c.dsm"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(5));
}

#[test]
fn unrepresentable_composite_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let diag = dir.path().join("diag.dsm");
    std::fs::write(
        &diag,
        "field: GF(5)\nrows: omega\ncols: omega\nkind: diagblock\nblock: 2\n",
    )
    .unwrap();
    let output = bin()
        .arg("compose")
        .arg(data("shift1.dsm"))
        .arg(&diag)
        .arg("--out")
        .arg(dir.path().join("c.dsm"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(5));
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("not representable"), "got: {stderr}");
}
