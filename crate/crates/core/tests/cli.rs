use std::path::Path;
use std::process::{Command, Output};

use isocayley::manifest::file_sha256;

fn isocayley(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isocayley"))
        .args(args)
        .current_dir(dir)
        .env_remove("ISOCAYLEY_MEM_BUDGET")
        .output()
        .expect("spawn isocayley")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gens_first_generator_and_manifest_replay() {
    let dir = tempfile::tempdir().unwrap();
    let o = isocayley(dir.path(), &["gens", "--q", "3", "--d", "5", "--out", "bar.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("242 generators"));

    let set = isocayley::forge::GenSet::read(&dir.path().join("bar.txt")).unwrap();
    let p = isocayley::forge::GenParams::new(3, 5, 1).unwrap();
    let omega = isocayley::forge::build_omega(&p).unwrap();
    assert_eq!(set.len(), 242);
    assert_eq!(set.get(0).mat, omega.get(0).mat);
    assert_eq!(set.get(0).j, 0);

    let first = file_sha256(&dir.path().join("bar.txt")).unwrap();
    std::fs::rename(dir.path().join("bar.txt"), dir.path().join("old.txt")).unwrap();
    let o = isocayley(dir.path(), &["gens", "--config", "bar.txt.manifest"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(file_sha256(&dir.path().join("bar.txt")).unwrap(), first);
}

#[test]
fn moments_compare_with_itself() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["moments", "--q", "5", "--d", "2", "--alpha", "1", "--kmax", "6", "--out", "m.txt"];
    assert_eq!(isocayley(dir.path(), &args).status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("m.txt")).unwrap();
    assert!(text.lines().any(|l| l == "2 6"));
    let o = isocayley(dir.path(), &["compare", "m.txt", "m.txt", "--out", "cmp.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict=equal"));
    assert!(dir.path().join("cmp.txt.manifest").exists());
}

#[test]
fn graph_spectrum_and_iso_compare() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["--q", "5", "--d", "2", "--alpha", "1"];
    let run = |extra: &[&str]| {
        let mut a: Vec<&str> = extra.to_vec();
        a.extend(base);
        isocayley(dir.path(), &a)
    };
    assert_eq!(run(&["graph", "--out", "g.bin"]).status.code(), Some(0));
    assert_eq!(run(&["graph", "--format", "text", "--out", "g.txt"]).status.code(), Some(0));
    let o = isocayley(dir.path(), &["spectrum", "--graph", "g.bin", "--out", "s.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("version=1 n=120 r=6"));
    let o = isocayley(dir.path(), &["compare", "g.bin", "g.txt", "--mode", "iso"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict=isomorphic"));
}

#[test]
fn differing_moments_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    for (alpha, out) in [("1", "a.txt"), ("2", "b.txt")] {
        let o = isocayley(
            dir.path(),
            &["moments", "--q", "7", "--d", "2", "--alpha", alpha, "--kmax", "4", "--out", out],
        );
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read_to_string(dir.path().join("a.txt")).unwrap();
    let b = std::fs::read_to_string(dir.path().join("b.txt")).unwrap();
    let counts = |t: &str| t.lines().skip(1).map(str::to_owned).collect::<Vec<_>>();
    let o = isocayley(dir.path(), &["compare", "a.txt", "b.txt"]);
    let expect = if counts(&a) == counts(&b) { 0 } else { 1 };
    assert_eq!(o.status.code(), Some(expect));
}

#[test]
fn usage_and_resource_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(isocayley(dir.path(), &["bogus"]).status.code(), Some(64));
    assert_eq!(isocayley(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(isocayley(dir.path(), &["gens", "--q", "3"]).status.code(), Some(64));
    assert_eq!(isocayley(dir.path(), &["verify", "--suite", "nope"]).status.code(), Some(64));
    let o = isocayley(
        dir.path(),
        &["graph", "--q", "3", "--d", "5", "--max-vertices", "100", "--out", "g.bin"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("g.bin").exists());
}

#[test]
fn verify_reports_each_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let o = isocayley(dir.path(), &["verify", "--suite", "family"]);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("A11 PASS")));
    assert!(out.lines().any(|l| l.starts_with("A3 FAIL")));
    assert_eq!(o.status.code(), Some(1));
}
