//! Acceptance: report determinism. Two runs of the full verification under
//! the same seed must be byte-identical and must match the checked-in golden
//! file.

use std::path::Path;
use std::process::Command;

fn verify_all_seed42(dir: &Path) -> Vec<u8> {
    let output = Command::new(env!("CARGO_BIN_EXE_dualspace"))
        .env_remove("DUALSPACE_SEED")
        .current_dir(dir)
        .args(["verify", "--suite", "all", "--seed", "42"])
        .output()
        .expect("binary runs");
    assert!(
        output.status.success(),
        "verify exited with {:?}: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stdout)
    );
    output.stdout
}

#[test]
fn criterion_9_cli_determinism() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let first = verify_all_seed42(dir_a.path());
    let second = verify_all_seed42(dir_b.path());
    assert_eq!(first, second, "two runs under one seed must be byte-identical");

    let golden_path =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/verify_all_seed42.txt");
    let golden = std::fs::read(&golden_path).expect("golden file is checked in");
    assert_eq!(
        first,
        golden,
        "report drifted from the golden file {}",
        golden_path.display()
    );

    // A clean pass writes no counterexample files.
    assert_eq!(std::fs::read_dir(dir_a.path()).unwrap().count(), 0);
    println!("criterion 9 (report determinism vs golden): pass");
}
