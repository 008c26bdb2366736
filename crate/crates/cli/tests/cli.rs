//! End-to-end tests of the `momentcone` binary: outputs and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::OnceLock;

const DIAMOND: &str = "\
# diamond quiver at unit dimensions
vertices: 4
arrows: 1 2, 1 3, 2 4, 3 4
dims: 1 1 1 1
weight 1: 2
weight 2: 0
weight 3: 0
weight 4: -2
sigma: 1 1 -1 -1
";

const STAR: &str = "\
vertices: 3
arrows: 1 3, 2 3
dims: 2 2 2
weight 1: 1 0
weight 2: 1 0
weight 3: -1 -1
";

const NOT_MEMBER: &str = "\
vertices: 2
arrows: 1 2
dims: 1 1
weight 1: -1
weight 2: 1
";

fn fixture(name: &str, contents: &str) -> PathBuf {
    static DIR: OnceLock<PathBuf> = OnceLock::new();
    let dir = DIR.get_or_init(|| {
        let dir = std::env::temp_dir().join(format!("momentcone-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).expect("create fixture dir");
        dir
    });
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write fixture");
    path
}

fn momentcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momentcone"))
        .args(args)
        .output()
        .expect("run momentcone")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn validate_accepts_a_complete_file() {
    let path = fixture("diamond.txt", DIAMOND);
    let out = momentcone(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("4 vertices"));
    assert!(text.contains("weights dominant"));
}

#[test]
fn validate_rejects_bad_input_with_exit_2() {
    let path = fixture("bad.txt", "vertices: 2\narrows: 1 1\n");
    let out = momentcone(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));

    let path = fixture("cycle.txt", "vertices: 2\narrows: 1 2, 2 1\n");
    let out = momentcone(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = momentcone(&["validate", "/no/such/file"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn membership_answers_with_certificates_and_exit_codes() {
    let path = fixture("diamond-m.txt", DIAMOND);
    let out = momentcone(&["membership", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("MEMBER\n"));
    assert!(text.contains("point:"));

    let path = fixture("notmember.txt", NOT_MEMBER);
    let out = momentcone(&["membership", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.starts_with("NOT-MEMBER\n"));
    assert!(text.contains("certificate:"));
}

#[test]
fn membership_scaling_preserves_the_answer() {
    let path = fixture("diamond-s.txt", DIAMOND);
    for scale in ["2", "3"] {
        let out = momentcone(&["membership", path.to_str().unwrap(), "--scale", scale]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    }
    let out = momentcone(&["membership", path.to_str().unwrap(), "--scale", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn count_prints_the_known_multiplicities() {
    let path = fixture("diamond-c.txt", DIAMOND);
    let out = momentcone(&["count", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "3");

    let path = fixture("star-c.txt", STAR);
    let out = momentcone(&["count", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn count_budget_exhaustion_exits_3() {
    let path = fixture("diamond-b.txt", DIAMOND);
    let out = momentcone(&["count", path.to_str().unwrap(), "--budget", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("exceeded"));
}

#[test]
fn emit_lp_writes_deterministic_text() {
    let path = fixture("diamond-e.txt", DIAMOND);
    let a = momentcone(&["emit-lp", path.to_str().unwrap()]);
    let b = momentcone(&["emit-lp", path.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("vars "));

    let out_path = fixture("lp-out.txt", "");
    let c = momentcone(&["emit-lp", path.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), stdout(&a));
}

#[test]
fn semistable_reports_reduction_and_closed_form() {
    let path = fixture("diamond-ss.txt", DIAMOND);
    let out = momentcone(&["semistable", path.to_str().unwrap()]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text} {}", stderr(&out));
    assert!(text.contains("reduction: SEMISTABLE"));
    assert!(text.contains("closed-form: SEMISTABLE"));

    let unstable = "vertices: 2\narrows: 1 2\ndims: 1 1\nsigma: -1 1\n";
    let path = fixture("path-ss.txt", unstable);
    let out = momentcone(&["semistable", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("reduction: NOT-SEMISTABLE"));
    assert!(!text.contains("closed-form"), "no closed form for the path");
}

#[test]
fn oracle_matches_count_on_the_diamond() {
    let path = fixture("diamond-o.txt", DIAMOND);
    let out = momentcone(&["oracle", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("formula: 3"));
    assert!(text.contains("torus: 3"));
}

#[test]
fn missing_pieces_are_reported() {
    let path = fixture("nodims.txt", "vertices: 2\narrows: 1 2\n");
    for cmd in ["membership", "count", "oracle", "emit-lp"] {
        let out = momentcone(&[cmd, path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{cmd}");
        assert!(stderr(&out).contains("dims"), "{cmd}: {}", stderr(&out));
    }
    let path = fixture("nosigma.txt", "vertices: 2\narrows: 1 2\ndims: 1 1\n");
    let out = momentcone(&["semistable", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sigma"));
}
