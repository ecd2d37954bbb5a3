use std::fs;
use std::path::Path;
use std::process::Command;

use gapseq::io::{parse_dimacs, parse_graph, parse_ov};
use gapseq::reductions::{solve_kis_bruteforce, solve_ov_bruteforce, solve_sat_bruteforce};
use gapseq_cli::run_cli;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn gapseq(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_gapseq")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn match_prints_witness_positions() {
    let r = gapseq(&["match", "-w", "abacbba", "-p", "aaa", "--witness"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "yes\n1 3 7\n");
    let r = gapseq(&["match", "-w", "abacbba", "-p", "cc"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "no\n"));
}

#[test]
fn set_equality_and_multiplicities_disagree() {
    let r = gapseq(&["analyze", "equ", "-w", "abba", "-W", "abab", "-k", "2"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "yes\n"));
    let r = gapseq(&["equ-mult", "-w", "abba", "-W", "abab", "-k", "2"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.stdout, "no\nab 2 3\n");
}

#[test]
fn counts_and_classical_containment() {
    let r = gapseq(&["count", "-w", "bbaa", "-p", "ba"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "4\n"));
    assert_eq!(gapseq(&["classic-con", "-w", "abba", "-W", "abab", "-k", "2"]).code, 0);
    let r = gapseq(&["classic-con", "-w", "abab", "-W", "abba", "-k", "3"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "no\naab\n"));
}

#[test]
fn errors_exit_with_two_and_print_nothing() {
    let cases: [&[&str]; 6] = [
        &["frobnicate"],
        &["match", "-w", "abc"],
        &["analyze", "uni", "-w", "abcabc", "-k", "20"],
        &["analyze", "con", "-w", "ab", "-k", "2"],
        &["match", "-w", "ab?", "-p", "a", "--alphabet", "ab"],
        &["match", "-w", "abc", "-p", "ab", "-k", "3", "--witness"],
    ];
    for args in cases {
        let r = gapseq(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stdout.is_empty(), "{args:?}: {}", r.stdout);
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn help_exits_cleanly() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    assert_eq!(run_cli(["gapseq", "--help"], &mut out, &mut err), 0);
    assert!(String::from_utf8(out).unwrap().contains("match"));
}

#[test]
fn constraint_files_resolve_dfas_beside_them() {
    let dir = TempDir::new().unwrap();
    // Gaps with an even number of b's.
    fs::write(
        dir.path().join("even.dfa"),
        "states 2\ninitial 0\nfinal 0\nalphabet 2\ntrans 0 1 0\ntrans 0 2 1\ntrans 1 1 1\ntrans 1 2 0\n",
    )
    .unwrap();
    fs::write(dir.path().join("gc"), "# one gap\nk 2\nRL 1 inf even.dfa\n").unwrap();
    let gc = path(&dir, "gc");
    let r = gapseq(&["match", "-w", "abbba", "-p", "aa", "-c", &gc, "--witness"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "no\n"));
    let r = gapseq(&["match", "-w", "abba", "-p", "aa", "-c", &gc, "--witness"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "yes\n1 4\n"));
    for algo in ["naive", "reglen"] {
        assert_eq!(gapseq(&["match", "-w", "abba", "-p", "aa", "-c", &gc, "--algo", algo]).code, 0);
    }
    assert_eq!(gapseq(&["match", "-w", "abba", "-p", "aa", "-c", &gc, "--algo", "length"]).code, 2);

    fs::write(dir.path().join("broken"), "k 2\nR missing.dfa\n").unwrap();
    let r = gapseq(&["match", "-w", "abba", "-p", "aa", "-c", &path(&dir, "broken")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("missing.dfa"));
}

#[test]
fn word_files_and_integer_alphabets() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("w"), "sigma 12\nword 12 3 7 12\n").unwrap();
    let w = path(&dir, "w");
    let r = gapseq(&["match", "-w", &w, "-p", "12 12", "--witness"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "yes\n1 4\n"));
    let r = gapseq(&["count", "-w", "1 2 1", "-p", "1", "--sigma", "2"]);
    assert_eq!(r.stdout, "2\n");
}

fn exit_of(args: &[&str]) -> i32 {
    let r = gapseq(args);
    assert_ne!(r.code, 2, "{args:?}: {}", r.stderr);
    r.code
}

#[test]
fn generated_instances_feed_back_into_the_solvers() {
    let dir = TempDir::new().unwrap();
    for seed in 0..6 {
        let s = seed.to_string();
        let pre = |kind: &str| path(&dir, &format!("{kind}{seed}"));
        let file = |kind: &str, ext: &str| format!("{}{ext}", pre(kind));

        let density = if seed % 2 == 0 { "0.8" } else { "0.4" };
        gapseq(&["gen", "ov", "--out", &pre("ov"), "--seed", &s, "--n", "3", "--d", "3", "--density", density]);
        let inst = parse_ov(&fs::read_to_string(file("ov", ".ov")).unwrap()).unwrap();
        let expected = if solve_ov_bruteforce(&inst) { 0 } else { 1 };
        let (w, p, c) = (file("ov", ".word"), file("ov", ".pattern"), file("ov", ".gc"));
        assert_eq!(exit_of(&["match", "-w", &w, "-p", &p, "-c", &c]), expected);

        for kind in ["sat-nuni", "sat-nuni-bin"] {
            gapseq(&["gen", kind, "--out", &pre(kind), "--seed", &s, "--vars", "3", "--clauses", "5", "--width", "2"]);
            let f = parse_dimacs(&fs::read_to_string(file(kind, ".cnf")).unwrap()).unwrap();
            let expected = if solve_sat_bruteforce(&f, 1 << 20).unwrap() { 1 } else { 0 };
            let (w, t, c) = (file(kind, ".word"), file(kind, ".ref.word"), file(kind, ".gc"));
            assert_eq!(exit_of(&["analyze", "uni", "-w", &w, "-c", &c]), expected, "{kind} {seed}");
            assert_eq!(exit_of(&["analyze", "equ", "-w", &w, "-W", &t, "-c", &c]), expected);
        }

        gapseq(&["gen", "kis-nuni", "--out", &pre("kis"), "--seed", &s, "--n", "4", "-k", "2", "--edge-prob", "0.6"]);
        let g = parse_graph(&fs::read_to_string(file("kis", ".graph")).unwrap()).unwrap();
        let expected = if solve_kis_bruteforce(&g, 2, 1 << 20).unwrap() { 1 } else { 0 };
        let (w, c) = (file("kis", ".word"), file("kis", ".gc"));
        assert_eq!(exit_of(&["analyze", "uni", "-w", &w, "-c", &c]), expected);

        gapseq(&["gen", "sat-eq", "--out", &pre("eq"), "--seed", &s, "--vars", "3", "--clauses", "4"]);
        let f = parse_dimacs(&fs::read_to_string(file("eq", ".cnf")).unwrap()).unwrap();
        let expected = if solve_sat_bruteforce(&f, 1 << 20).unwrap() { 0 } else { 1 };
        let (w, p, c, e) = (file("eq", ".word"), file("eq", ".pattern"), file("eq", ".gc"), file("eq", ".eq"));
        assert_eq!(exit_of(&["match", "-w", &w, "-p", &p, "-c", &c, "--eq", &e]), expected);
    }
}

#[test]
fn gen_reads_instances_from_files() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("f.cnf"), "c tiny\np cnf 1 2\n1 0\n-1 0\n").unwrap();
    let out = path(&dir, "unsat");
    let r = gapseq(&["gen", "sat-nuni", "--in", &path(&dir, "f.cnf"), "--out", &out]);
    assert_eq!(r.code, 0);
    assert!(!Path::new(&format!("{out}.cnf")).exists());
    let (w, c) = (format!("{out}.word"), format!("{out}.gc"));
    assert_eq!(exit_of(&["analyze", "uni", "-w", &w, "-c", &c, "--workers", "2"]), 0);
}

#[test]
fn bench_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv = path(&dir, "bench.csv");
    let r = gapseq(&["bench", "--algo", "length", "--sizes", "100,200,400", "--trials", "2", "--csv", &csv]);
    assert_eq!(r.code, 0);
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "algo,n,k,states,mean_ns,median_ns");
    let sizes: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(sizes, ["100", "200", "400"]);
    assert!(lines[1..].iter().all(|l| l.starts_with("length,")));
}
