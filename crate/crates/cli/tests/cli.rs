use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use p1f::{emit_line, parse_line};
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data")
        .join(name)
}

fn p1f(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p1f"))
        .args(args)
        .env("P1F_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture_lines() -> Vec<String> {
    fs::read_to_string(data("k16_fixtures.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(str::to_string)
        .collect()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// The `i`th fixture with vertex `v` renamed `15 - v`.
fn reversed_fixture(i: usize) -> String {
    let f = parse_line(&fixture_lines()[i]).unwrap();
    let perm: Vec<usize> = (0..16).rev().collect();
    emit_line(&f.relabel(&perm))
}

#[test]
fn verify_accepts_the_fixtures() {
    let o = p1f(&["verify", arg(&data("k16_fixtures.txt"))]);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with("9 entries, 9 perfect\n"));
}

#[test]
fn verify_rejects_a_non_perfect_factorisation() {
    let dir = TempDir::new().unwrap();
    // Factor d pairs x with x xor d.
    let xor = "abcdefgh acbdegfh adbcehfg aebfcgdh afbechdg agbhcedf ahbgcfde\n";
    let path = write(&dir, "xor.txt", xor);
    let o = p1f(&["verify", arg(&path)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not perfect"));
    assert!(stdout(&o).contains("1 entries, 0 perfect"));
}

#[test]
fn iso_exit_codes() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", &fixture_lines()[6]);
    let b = write(&dir, "b.txt", &reversed_fixture(6));
    let c = write(&dir, "c.txt", &fixture_lines()[7]);
    let same = p1f(&["iso", arg(&a), arg(&b)]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(stdout(&same), "isomorphic\n");
    let different = p1f(&["iso", arg(&a), arg(&c)]);
    assert_eq!(different.status.code(), Some(1));
    assert_eq!(stdout(&different), "not isomorphic\n");
}

#[test]
fn canon_restores_the_canonical_line() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "r.txt", &reversed_fixture(0));
    let o = p1f(&["canon", arg(&path)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim_end(), fixture_lines()[0]);
}

#[test]
fn invariants_of_the_rigid_fixture() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "rigid.txt", &fixture_lines()[6]);
    let o = p1f(&["invariants", "--kind", "indegree", arg(&path)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim_end(), "[598,748,332,102,18,2]");
    for kind in ["train", "pv", "tricolour", "cycles", "profile"] {
        let o = p1f(&["invariants", "--kind", kind, arg(&path)]);
        assert!(o.status.success(), "{kind}");
        assert_eq!(stdout(&o).lines().count(), 1, "{kind}");
    }
}

#[test]
fn latin_checks() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "rigid.txt", &fixture_lines()[6]);
    let o = p1f(&["latin", "--all-folds", "--check", arg(&path)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "symbol-Hamiltonian: 16/16, atomic: 0\n");

    let o = p1f(&["latin", "--fold", "c", arg(&path)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 15);

    let o = p1f(&["latin", "--square", "--check", arg(&data("n15.txt"))]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("row-Hamiltonian: no"));
    assert!(text.contains("symbol-Hamiltonian: yes"));
    assert!(text.contains("atomic: no"));
    assert!(text.contains("Hamilton row pairs: 91/105"));
}

#[test]
fn develop_order7() {
    let o = p1f(&["develop", "--aut", arg(&data("order7_development.txt"))]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("\taut=7 generator=7^2 1^2"));
}

#[test]
fn usage_errors_exit_with_two() {
    let o = p1f(&["verify", "/nonexistent/catalogue.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));
    let o = p1f(&["latin", "--fold", "z", arg(&data("k16_fixtures.txt"))]);
    assert_eq!(o.status.code(), Some(2));
    let o = p1f(&["ingest", "/nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ingest_and_store() {
    let dir = TempDir::new().unwrap();
    let catalogue = dir.path().join("catalogue");
    fs::create_dir(&catalogue).unwrap();
    fs::copy(data("k16_fixtures.txt"), catalogue.join("a.txt")).unwrap();
    let store = dir.path().join("store");
    let o = p1f(&["ingest", arg(&catalogue), "--store", arg(&store)]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("total: 9"));
    let index = fs::read_to_string(store.join("index.tsv")).unwrap();
    assert_eq!(index.lines().count(), 9);
    assert!(index.contains("indegree=[598,748,332,102,18,2]"));
    assert_eq!(fs::read_to_string(store.join("catalogue.txt")).unwrap().lines().count(), 9);

    // A relabelled copy is kept out and reported, with its line number.
    fs::write(catalogue.join("b.txt"), reversed_fixture(2) + "\n").unwrap();
    let o = p1f(&["ingest", arg(&catalogue)]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("total: 9"));
    assert!(text.contains("b.txt:1: isomorphic to the entry at line"));
}

#[test]
fn enumerate_resumes_from_a_checkpoint() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("k10.txt");
    let checkpoint = dir.path().join("k10.ckpt");
    let first = p1f(&[
        "enumerate", "--n", "10", "--seeds", "0..3", "--checkpoint", arg(&checkpoint), "--out",
        arg(&out),
    ]);
    assert!(first.status.success());
    assert!(stdout(&first).starts_with("n=10 seeds=3/6 resumed=0 "));
    let second = p1f(&[
        "enumerate", "--n", "10", "--checkpoint", arg(&checkpoint), "--out", arg(&out),
    ]);
    assert!(second.status.success());
    assert!(stdout(&second).starts_with("n=10 seeds=6/6 resumed=3 classes=1 "));
    let lines = fs::read_to_string(&out).unwrap();
    assert_eq!(lines.lines().count(), 1);
    let o = p1f(&["verify", arg(&out)]);
    assert!(o.status.success());

    // A checkpoint for another order is refused.
    let other = p1f(&[
        "enumerate", "--n", "8", "--checkpoint", arg(&checkpoint), "--out", arg(&out),
    ]);
    assert_eq!(other.status.code(), Some(1));
}

#[test]
fn enumerate_small_orders() {
    let dir = TempDir::new().unwrap();
    for (n, classes) in [(4, 1), (6, 1), (8, 1), (12, 5)] {
        let out = dir.path().join(format!("k{n}.txt"));
        let o = p1f(&["enumerate", "--n", &n.to_string(), "--out", arg(&out)]);
        assert!(o.status.success());
        assert!(stdout(&o).contains(&format!("classes={classes} ")), "{}", stdout(&o));
        assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), classes);
    }
}
