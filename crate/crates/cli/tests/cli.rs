use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const PAIR: &str = "\
poset P
elements 4
cover 1 3 weak
cover 3 4 weak
cover 3 2 strict
labels 1 2 3 4

poset Q
elements 4
cover 1 3 weak
cover 3 4 weak
labels 1 2 3 4
";

fn posetq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_posetq")).args(args).env("POSETQ_WORKERS", "1").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn spec(path: &Path, name: &str) -> String {
    format!("{}:{name}", path.display())
}

#[test]
fn enumerate_prints_both_bases() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "pair.poset", PAIR);
    let o = posetq(&["enumerate", &spec(&file, "P"), "--basis", "both"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "F[2,2] + F[3,1]\nM[2,2] + M[3,1] + M[1,1,2] + M[1,2,1] + 2*M[2,1,1] + 2*M[1,1,1,1]\n");
    // several stanzas get a header each
    let o = posetq(&["enumerate", file.to_str().unwrap()]);
    assert_eq!(stdout(&o), "# P\nF[2,2] + F[3,1]\n# Q\nF[4] + F[1,3] + F[2,2] + F[3,1]\n");
}

#[test]
fn compare_reports_relations_and_battery() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "pair.poset", PAIR);
    let o = posetq(&["compare", &spec(&file, "P"), &spec(&file, "Q")]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("L-CONTAINED: true\nF-POSITIVE: true\n"), "{out}");
    assert!(out.contains("K_Q - K_P = F[4] + F[1,3]"));
    assert!(out.contains("battery (F-support):"));
    let o = posetq(&["compare", &spec(&file, "Q"), &spec(&file, "P"), "--battery", "m"]);
    assert!(stdout(&o).contains("F-POSITIVE: false") && stdout(&o).contains("battery (M-support):"));
}

#[test]
fn rbd_gives_certificates() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "pair.poset", PAIR);
    let o = posetq(&["rbd", &spec(&file, "P"), &spec(&file, "Q")]);
    assert_eq!(stdout(&o), "RBD-REACHABLE: true\ndelete 3 2\ndelete 1 2\n");
    let o = posetq(&["rbd", &spec(&file, "Q"), &spec(&file, "P")]);
    assert_eq!(stdout(&o), "RBD-REACHABLE: false\nmissing 1 2\n");
    let o = posetq(&["rbd", &spec(&file, "P"), &spec(&file, "Q"), "--generalized"]);
    assert!(stdout(&o).starts_with("GRBD-REACHABLE: true"), "{}", stdout(&o));
}

#[test]
fn assembled_output_parses_back() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "pair.poset", PAIR);
    let out = dir.path().join("assembled.poset");
    let p = spec(&file, "P");
    let o = posetq(&["assemble", &spec(&file, "Q"), &p, &p, &p, &p, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("# element 1 = (1,1)"));
    let parsed = posetq::parse_poset(&text).unwrap();
    assert_eq!(parsed.name, "assembled");
    assert_eq!(parsed.poset.len(), 16);
    // and the CLI accepts it as input
    let o = posetq(&["invariants", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("greene shapes: skipped"));
}

#[test]
fn split_branches_are_additive() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "pair.poset", PAIR);
    let o = posetq(&["split", &spec(&file, "Q"), "2", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.ends_with("# ADDITIVE: true\n"), "{out}");
    let stanzas = posetq::parse_posets(&out).unwrap();
    let names: Vec<&str> = stanzas.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, ["Q-ge", "Q-lt"]);
    // comparable elements are a usage error
    let o = posetq(&["split", &spec(&file, "Q"), "1", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fposet_writes_dot_and_validates() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("k5.dot");
    let o = posetq(&["fposet", "--family", "greene-k1", "--k", "5", "--dot", dot.to_str().unwrap(), "--validate"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph fpositivity {"));
    assert_eq!(text.matches(" -> ").count(), 20);
    let o = posetq(&["fposet", "--family", "greene-k1", "--k", "5"]);
    let out = stdout(&o);
    assert!(out.starts_with("nodes 15\nnode 0,2\n") && out.contains("cover 0,2 -> 0,3\n"), "{out}");
    // a strict-spine caterpillar family fails validation
    let o = posetq(&["fposet", "--family", "caterpillar", "--k", "2", "--spine", "s", "--leaves", "1", "--validate"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn verify_exit_codes_and_counterexamples() {
    let o = posetq(&["verify", "--theorem", "rbd", "--max-n", "4", "-q"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let line = stdout(&o);
    assert!(line.starts_with("summary theorem=rbd instances=") && line.contains("failures=0"), "{line}");

    let dir = TempDir::new().unwrap();
    let cex = dir.path().join("cex.poset");
    let o = posetq(&[
        "verify",
        "--theorem",
        "caterpillar",
        "--max-k",
        "2",
        "--max-leaves",
        "1",
        "-q",
        "--counterexamples",
        cex.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("failures=2"));
    // counterexamples feed straight back into compare
    let text = fs::read_to_string(&cex).unwrap();
    assert!(posetq::parse_posets(&text).unwrap().len() >= 2);
    let cfile = write(dir.path(), "first.poset", &text);
    let o = posetq(&["compare", &spec(&cfile, "P"), &spec(&cfile, "Q")]);
    assert!(o.status.success(), "{}", stderr(&o));

    let o = posetq(&["verify", "--theorem", "caterpillar", "--max-k", "3", "--weak-spines-only", "-q"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_exit_with_two_and_point_at_the_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.poset", "poset x\nelements 2\ncover 1 5 weak\n");
    let o = posetq(&["enumerate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.poset:3:"), "{}", stderr(&o));

    let file = write(dir.path(), "pair.poset", PAIR);
    let o = posetq(&["compare", file.to_str().unwrap(), &spec(&file, "Q")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("several posets"));
    assert_eq!(posetq(&["enumerate", &spec(&file, "nope")]).status.code(), Some(2));
    assert_eq!(posetq(&["verify", "--theorem", "nope"]).status.code(), Some(2));
    assert_eq!(posetq(&["enumerate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let file = write(dir.path(), "pair.poset", PAIR);
    let run = || stdout(&posetq(&["invariants", &spec(&file, "P")]));
    assert_eq!(run(), run());
}
