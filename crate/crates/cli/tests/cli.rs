// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn mdkit(args: &[&str]) -> Run {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_mdkit")).args(args).output().unwrap();
    Run {
        code: status.code().unwrap_or(-1),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn cover_forced_box() {
    let dir = TempDir::new().unwrap();
    let pts = file(&dir, "p.txt", "2 2\n0 0\n4 2\n");
    let run = mdkit(&["cover", "--points", &pts, "--kh", "1"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.starts_with("cost 8\n"), "{}", run.stdout);
    let json = mdkit(&["cover", "--points", &pts, "--kh", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["cost"], "8");
    assert_eq!(v["variant"], "D");
    assert_eq!(v["placements"][0]["xmax"], serde_json::json!(["4", "2"]));
}

#[test]
fn cover_infeasible_exit_code() {
    let dir = TempDir::new().unwrap();
    let pts = file(&dir, "p.txt", "2 2\n0 0\n4 2\n");
    let run = mdkit(&["cover", "--points", &pts, "--kh", "1", "--lmax", "3,3"]);
    assert_eq!(run.code, 3);
    assert!(run.stderr.contains("infeasible"));
}

#[test]
fn cover_variants_report_same_cost() {
    let dir = TempDir::new().unwrap();
    let pts = file(&dir, "p.txt", "3 6\n0 0 0\n1 5 2\n7 7 1\n3 2 8\n8 0 4\n2 6 6\n");
    let costs: Vec<String> = ["A", "B", "C", "D"]
        .iter()
        .map(|v| {
            let run = mdkit(&["cover", "--points", &pts, "--kh", "2", "--variant", v]);
            assert_eq!(run.code, 0);
            run.stdout.lines().next().unwrap().to_string()
        })
        .collect();
    assert!(costs.windows(2).all(|w| w[0] == w[1]), "{costs:?}");
}

#[test]
fn cover_groups_and_factors() {
    let dir = TempDir::new().unwrap();
    let pts = file(&dir, "p.txt", "2 2\n0 0\n3 4\n");
    let run = mdkit(&["cover", "--points", &pts, "--kh", "1", "--groups", "1,1", "--f", "1,1/2", "--lmin", "0", "--lmax", "inf"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.starts_with("cost 32\n"), "{}", run.stdout);
    let bad = mdkit(&["cover", "--points", &pts, "--groups", "1,x"]);
    assert_eq!(bad.code, 2);
    let mismatch = mdkit(&["cover", "--points", &pts, "--lmin", "0,0,0"]);
    assert_eq!(mismatch.code, 2);
}

#[test]
fn malformed_points_file() {
    let dir = TempDir::new().unwrap();
    let pts = file(&dir, "p.txt", "2 3\n0 0\n4\n");
    assert_eq!(mdkit(&["cover", "--points", &pts]).code, 2);
    assert_eq!(mdkit(&["diameter", "--points", &pts]).code, 2);
    assert_eq!(mdkit(&["cover", "--points", "/nonexistent/file"]).code, 2);
}

#[test]
fn diameter_methods() {
    let dir = TempDir::new().unwrap();
    let pts = file(&dir, "p.txt", "# three points\n2 3\n0 0\n5 3\n9 4\n");
    for m in ["brute", "count-rtree", "count-sweep", "exist"] {
        let run = mdkit(&["diameter", "--points", &pts, "--method", m, "--witness"]);
        assert_eq!(run.code, 0);
        assert!(run.stdout.starts_with("diameter 4\n"), "{m}: {}", run.stdout);
        assert!(run.stdout.contains("witness 1 3"), "{m}: {}", run.stdout);
    }
    let json = mdkit(&["diameter", "--points", &pts, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["value"], 4);
    assert!(v["witness"].is_null());
    let one = file(&dir, "one.txt", "2 1\n1 1\n");
    assert_eq!(mdkit(&["diameter", "--points", &one]).code, 4);
}

#[test]
fn diameter_on_generated_file() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("g.txt");
    let out = out.to_str().unwrap();
    assert_eq!(mdkit(&["gen", "--d", "3", "--n", "50", "--r", "300", "--seed", "4", "-o", out]).code, 0);
    let values: Vec<String> = ["brute", "count-rtree", "count-sweep", "exist"]
        .iter()
        .map(|m| mdkit(&["diameter", "--points", out, "--method", m]).stdout)
        .collect();
    assert!(values.windows(2).all(|w| w[0] == w[1]), "{values:?}");
}

#[test]
fn encode_and_decode() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "s.txt", "abcabcabc\n");
    let run = mdkit(&["encode", "--input", &input]);
    assert_eq!(run.stdout, "3(abc)\nlength 6\n");
    let enc = file(&dir, "e.txt", "3(abc)\n");
    assert_eq!(mdkit(&["decode", "--input", &enc]).stdout, "abcabcabc\n");
    let nested = file(&dir, "n.txt", "2(3(a)b)");
    assert_eq!(mdkit(&["decode", "--input", &nested]).stdout, "aaabaaab\n");
    let strict = file(&dir, "t.txt", "aaaaaabb");
    assert_eq!(mdkit(&["encode", "--input", &strict, "--mode", "strict"]).stdout, "aaaaaabb\nlength 8\n");
    assert_eq!(mdkit(&["encode", "--input", &strict]).stdout, "6(a)bb\nlength 6\n");
    let table = mdkit(&["encode", "--input", &input, "--emit-table"]);
    assert!(table.stdout.contains("\n1: 1 2 3 4 5 6 7 8 6\n"), "{}", table.stdout);
}

#[test]
fn encoder_input_errors() {
    let dir = TempDir::new().unwrap();
    let digits = file(&dir, "d.txt", "ab1");
    assert_eq!(mdkit(&["encode", "--input", &digits]).code, 2);
    let broken = file(&dir, "b.txt", "3(ab");
    assert_eq!(mdkit(&["decode", "--input", &broken]).code, 2);
}

#[test]
fn encode_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    for (i, text) in ["abababab", "xyzxyzxyzq", "aabbaabbaabbc", "q"].iter().enumerate() {
        let input = file(&dir, &format!("in{i}.txt"), text);
        let run = mdkit(&["encode", "--input", &input]);
        let enc = file(&dir, &format!("enc{i}.txt"), run.stdout.lines().next().unwrap());
        assert_eq!(mdkit(&["decode", "--input", &enc]).stdout.trim_end(), *text);
    }
}

fn doubling_file(levels: usize) -> String {
    let mut text = format!("{levels}\n1 'a'\n");
    for x in 2..=levels {
        text.push_str(&format!("2 {} {}\n", x - 1, x - 1));
    }
    text
}

#[test]
fn grammar_count() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.txt", "# Exp = abab\n2\n2 'a' 'b'\n2 1 1\n");
    let run = mdkit(&["grammar-count", "--grammar", &g, "--pattern", "ab", "--oracle-check", "100"]);
    assert_eq!(run.stdout, "count 2\noracle ok\n");
    assert_eq!(mdkit(&["grammar-count", "--grammar", &g, "--pattern", "ababab"]).stdout, "count 0\n");
    let big = file(&dir, "big.txt", &doubling_file(41));
    let run = mdkit(&["grammar-count", "--grammar", &big, "--pattern", "aa", "--oracle-check", "1000"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.starts_with("count 1099511627775\n"));
    assert!(run.stdout.contains("oracle skipped"));
    let m = mdkit(&["grammar-count", "--grammar", &big, "--pattern", "aa", "--mod", "1000", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&m.stdout).unwrap();
    assert_eq!(v["count"], "775");
}

#[test]
fn grammar_input_errors() {
    let dir = TempDir::new().unwrap();
    let fwd = file(&dir, "f.txt", "2\n1 2\n1 'a'\n");
    assert_eq!(mdkit(&["grammar-count", "--grammar", &fwd, "--pattern", "a"]).code, 2);
    let ok = file(&dir, "o.txt", "1\n1 'a'\n");
    assert_eq!(mdkit(&["grammar-count", "--grammar", &ok, "--pattern", ""]).code, 2);
}

#[test]
fn gen_is_deterministic() {
    let a = mdkit(&["gen", "--d", "3", "--n", "14", "--r", "27", "--seed", "1"]);
    let b = mdkit(&["gen", "--d", "3", "--n", "14", "--r", "27", "--seed", "1"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let rows: Vec<&str> = a.stdout.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    let mut uniq = rows.clone();
    uniq.sort();
    uniq.dedup();
    assert_eq!(uniq.len(), 27);
    assert!(a.stdout.contains("# distinct="));
    let full = mdkit(&["gen", "--d", "2", "--n", "3", "--r", "9"]);
    assert_eq!(full.code, 0);
    assert_eq!(mdkit(&["gen", "--d", "2", "--n", "3", "--r", "10"]).code, 2);
}

#[test]
fn small_bench_writes_csv() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("b.csv");
    let csv = csv.to_str().unwrap();
    let run = mdkit(&["bench", "--n", "6", "--trials", "4", "--seed", "2", "--out", csv]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("total A"));
    let text = fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("variant,n,trial,r,millis,cost"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 16);
    for trial in rows.chunks(4) {
        assert!(trial.windows(2).all(|w| w[0][5] == w[1][5] && w[0][3] == w[1][3]));
    }
    let again = mdkit(&["bench", "--n", "6", "--trials", "4", "--seed", "2"]);
    let costs = |t: &str| t.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().to_string()).collect::<Vec<_>>();
    assert_eq!(costs(&text), costs(&again.stdout));
}
