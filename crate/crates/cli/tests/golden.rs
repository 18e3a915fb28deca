mod support;

use std::process::Command as Process;

use support::{golden_dir, render, CASES};

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut stale = Vec::new();
    for c in CASES {
        let (text, exit) = render(c);
        assert_eq!(exit, c.exit, "{}: exit code\n{text}", c.name);
        let path = golden_dir().join(format!("{}.txt", c.name));
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_default();
        if expected != text {
            stale.push(c.name);
        }
    }
    assert!(stale.is_empty(), "golden reports differ (rerun with UPDATE_GOLDEN=1): {stale:?}");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_mcdef");
    let dir = support::fixture_dir();
    let status = |args: &[&str]| Process::new(bin).args(args).current_dir(&dir).output().unwrap();
    let out = status(&["check", "sl2_corrupted.fix"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("(h, e, f)"));
    assert_eq!(status(&["monodromy", "--fixture", "jordan21.fix", "--center", "0"]).status.code(), Some(0));
    assert_eq!(status(&["check", "malformed_nesting.fix"]).status.code(), Some(2));
    assert_eq!(status(&["frobnicate", "sl2.fix"]).status.code(), Some(2));
    assert_eq!(status(&["check", "--cap", "x", "sl2.fix"]).status.code(), Some(2));
    let m = status(&["monodromy", "jordan21.fix", "--format", "machine"]);
    let text = String::from_utf8(m.stdout).unwrap();
    assert!(text.contains("artifact.M.jumps: -1 0 1"), "{text}");
    let (golden, _) = render(CASES.iter().find(|c| c.name == "monodromy_jordan21").unwrap());
    assert_eq!(text, golden);
}
