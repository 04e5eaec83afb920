use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn csorgo(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csorgo")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn build_into(dir: &Path, pc: &str, out: &str) -> Output {
    csorgo(&["build", "--pc", pc, "--out", out], dir)
}

fn without_timings(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with("time ")).collect::<Vec<_>>().join("\n")
}

#[test]
fn build_writes_all_artifacts() {
    let tmp = TempDir::new().unwrap();
    let o = build_into(tmp.path(), "bundled:g128_731", "out");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    for name in ["delta.txt", "mu.txt", "loop.txt", "report.txt"] {
        assert!(tmp.path().join("out").join(name).is_file(), "{name} missing");
    }
    let report = fs::read_to_string(tmp.path().join("out/report.txt")).unwrap();
    assert!(report.contains("status: pass"));
    assert!(report.contains("Inn [4,4,2,2] (order 64), Mlt 8192"));
}

#[test]
fn verify_accepts_built_tables() {
    let tmp = TempDir::new().unwrap();
    assert!(build_into(tmp.path(), "bundled:g128_742", "out").status.success());
    let o = csorgo(&["verify", "--pc", "bundled:g128_742", "--delta", "out/delta.txt"], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = csorgo(&["verify", "--pc", "bundled:g128_742", "--mu", "out/mu.txt"], tmp.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("status: pass"));
}

#[test]
fn verify_rejects_a_flipped_delta_with_a_witness() {
    let tmp = TempDir::new().unwrap();
    assert!(build_into(tmp.path(), "bundled:g128_731", "out").status.success());
    let text = fs::read_to_string(tmp.path().join("out/delta.txt")).unwrap();
    // Drop the first nonzero entry: δ is no longer constant on Z-cosets.
    let mut lines: Vec<&str> = text.lines().collect();
    lines.remove(1);
    fs::write(tmp.path().join("bad.txt"), lines.join("\n") + "\n").unwrap();
    let o = csorgo(&["verify", "--pc", "bundled:g128_731", "--delta", "bad.txt"], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("status: fail at B"), "{out}");
    let line = out.lines().find(|l| l.contains("FAIL B0 delta constant modulo Z")).expect("B0 failure line");
    assert!(line.contains("witness="), "{line}");
}

#[test]
fn trivial_mu_gives_the_group_itself() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("mu1.txt"), "cocycle 128 2 modulus=1\n").unwrap();
    let o = csorgo(&["verify", "--pc", "bundled:g128_731", "--mu", "mu1.txt", "--format", "kv"], tmp.path());
    let out = stdout(&o);
    for check in ["A1 delta(x,y)", "A2 mu(xy,z)", "A3 mu(x,yz)"] {
        let line = out.lines().find(|l| l.contains(check)).unwrap_or_else(|| panic!("no {check} in {out}"));
        assert!(line.contains("= pass |"), "{line}");
    }
    assert!(out.contains("loop.is_group = true"), "{out}");
    assert!(out.contains("loop.associator_order = 1"), "{out}");
    // A4 cannot hold for δ = 1 on a group of class 3.
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn z2_frame_fails_at_the_frame_stage() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("z2.pc"), "gens 1\n").unwrap();
    let o = csorgo(&["build", "--pc", "z2.pc", "--frame", "Z = g1; R = g1; M = derived"], tmp.path());
    assert_ne!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status: fail at frame"), "{}", stdout(&o));
}

#[test]
fn conflicting_seed_fails_well_definedness() {
    let tmp = TempDir::new().unwrap();
    let frame = "Z = g7; R = g4,g6,g7; M = derived; basis = g1,g2,g2*g3";
    let o = csorgo(&["build", "--pc", "bundled:g128_742", "--frame", frame], tmp.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("status: fail at well-definedness"), "{}", stdout(&o));
}

#[test]
fn builds_are_deterministic() {
    let tmp = TempDir::new().unwrap();
    assert!(build_into(tmp.path(), "bundled:g128_731", "a").status.success());
    assert!(build_into(tmp.path(), "bundled:g128_731", "b").status.success());
    for name in ["delta.txt", "mu.txt", "loop.txt"] {
        let a = fs::read(tmp.path().join("a").join(name)).unwrap();
        let b = fs::read(tmp.path().join("b").join(name)).unwrap();
        assert_eq!(a, b, "{name} differs");
    }
    let a = fs::read_to_string(tmp.path().join("a/report.txt")).unwrap();
    let b = fs::read_to_string(tmp.path().join("b/report.txt")).unwrap();
    assert_eq!(without_timings(&a), without_timings(&b));
}

#[test]
fn kv_report_is_written() {
    let tmp = TempDir::new().unwrap();
    let o = csorgo(&["build", "--pc", "bundled:g128_742", "--format", "kv", "--out", "out"], tmp.path());
    assert!(o.status.success());
    let kv = fs::read_to_string(tmp.path().join("out/report.kv")).unwrap();
    assert!(kv.contains("scenario = iii"));
    assert!(kv.contains("loop.mlt_order = 8192"));
    assert!(kv.contains("status = pass"));
}

#[test]
fn export_writes_a_one_based_cayley_table() {
    let tmp = TempDir::new().unwrap();
    let o = csorgo(&["export", "--pc", "bundled:g128_731", "--out", "q.txt"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(tmp.path().join("q.txt")).unwrap();
    let rows: Vec<Vec<usize>> =
        text.lines().map(|l| l.split_whitespace().map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 128);
    assert_eq!(rows[0], (1..=128).collect::<Vec<_>>());
    for row in &rows {
        let mut sorted = row.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (1..=128).collect::<Vec<_>>());
    }
}

#[test]
fn empty_sweep_has_no_rows() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("space.txt"), "# nothing varies\n").unwrap();
    let o = csorgo(&["sweep", "--pc", "bundled:g128_731", "--params", "space.txt"], tmp.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "rows: 0\n");
}

#[test]
fn sweep_over_budget_is_an_error() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("space.txt"), "vary tau 2 3\nvary tau 2 4\n").unwrap();
    let o = csorgo(&["sweep", "--pc", "bundled:g128_731", "--params", "space.txt", "--budget", "3"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("4 vectors, budget is 3"), "{}", stderr(&o));
}

#[test]
fn unknown_bundled_name_is_an_error() {
    let tmp = TempDir::new().unwrap();
    let o = csorgo(&["build", "--pc", "bundled:g64_1"], tmp.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no bundled presentation named g64_1"));
}
