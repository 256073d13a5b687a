// Binary-level acceptance: byte determinism of rendering and a clean claim
// suite through n = 16.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chebdyn"))
}

#[test]
fn render_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.ppm");
    let second = dir.path().join("second.ppm");
    for path in [&first, &second] {
        let status = bin()
            .args(["render", "--n", "4", "--size", "256x256", "--out"])
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(&first).unwrap();
    let b = std::fs::read(&second).unwrap();
    assert!(a.starts_with(b"P6\n256 256\n255\n"));
    let ok = a == b;
    println!(
        "acceptance render determinism: {} ({} bytes)",
        if ok { "pass" } else { "FAIL" },
        a.len()
    );
    assert!(ok);
}

#[test]
fn verify_suite_passes_through_n_16() {
    let out = bin().args(["verify", "--n-max", "16"]).output().unwrap();
    let ok = out.status.code() == Some(0);
    println!(
        "acceptance verify exit code: {} (status {:?})",
        if ok { "pass" } else { "FAIL" },
        out.status.code()
    );
    assert!(ok, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema_version"], 1);
    let reports = doc["reports"].as_array().unwrap();
    assert!(reports.iter().all(|r| r["verdict"] == "pass"));
}
