use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repmeasures"))
        .args(args)
        .output()
        .expect("spawn repmeasures")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, data: &[u8]) -> String {
        let p = self.path(name);
        fs::write(&p, data).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        self.0.path().join(name).to_str().unwrap().to_string()
    }
}

fn read(p: impl AsRef<Path>) -> Vec<u8> {
    fs::read(p).unwrap()
}

const EXAMPLE: &[u8] = b"alabaralalabarda";

#[test]
fn generate_fibonacci_as_letters() {
    let d = Dir::new();
    let out = d.path("f");
    ok(&["generate", "--family", "fib", "--k", "6", "--out", &out]);
    assert_eq!(read(&out), b"abaababa");
    ok(&[
        "generate", "--family", "debruijn", "--k", "3", "--sigma", "2", "--out", &out,
    ]);
    assert_eq!(read(&out).len(), 10);
    ok(&["generate", "--family", "lemma35", "--k", "4", "--out", &out]);
    assert!(!read(&out).is_empty());
}

#[test]
fn parse_then_validate() {
    let d = Dir::new();
    let text = d.file("t", EXAMPLE);
    for method in ["lz", "lzno", "lex"] {
        let scheme = d.path(method);
        ok(&[
            "parse", "--method", method, "--text", &text, "--out", &scheme,
        ]);
        let report = ok(&["validate", "--scheme", &scheme, "--text", &text]);
        assert!(report.ends_with("valid\n"), "{method}: {report}");
        assert!(report.contains("acyclic: yes"));
    }
    let head = String::from_utf8(read(d.path("lex"))).unwrap();
    assert!(head.starts_with("SCHEME n=17\n"), "{head}");
}

#[test]
fn exact_scheme_file() {
    let d = Dir::new();
    let text = d.file("t", b"abab");
    let scheme = d.path("s");
    ok(&["parse", "--method", "lz", "--text", &text, "--out", &scheme]);
    assert_eq!(
        String::from_utf8(read(&scheme)).unwrap(),
        "SCHEME n=5\nE 1 97\nE 2 98\nC 3 1 2\nE 5 0\n"
    );
}

#[test]
fn invalid_scheme_exits_two() {
    let d = Dir::new();
    let text = d.file("t", b"abab");
    let scheme = d.file("s", b"SCHEME n=5\nE 1 97\nE 2 97\nC 3 1 2\nE 5 0\n");
    let out = run(&["validate", "--scheme", &scheme, "--text", &text]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).ends_with("invalid\n"));
}

#[test]
fn malformed_scheme_exits_one() {
    let d = Dir::new();
    let text = d.file("t", b"abab");
    let scheme = d.file("s", b"SCHEME n=5\nQ 1\n");
    assert_eq!(code(&["validate", "--scheme", &scheme, "--text", &text]), 1);
}

#[test]
fn order_parse_and_ordered_check() {
    let d = Dir::new();
    let text = d.file("t", b"abab");
    let order = d.file("o", b"1\n2\n3\n4\n5\n");
    let scheme = d.path("s");
    ok(&[
        "parse",
        "--method",
        "order",
        "--order-file",
        &order,
        "--text",
        &text,
        "--out",
        &scheme,
    ]);
    let report = ok(&[
        "validate",
        "--scheme",
        &scheme,
        "--text",
        &text,
        "--order-file",
        &order,
    ]);
    assert!(report.contains("ordered: yes"), "{report}");
    assert_eq!(
        code(&["parse", "--method", "order", "--text", &text, "--out", &scheme]),
        1
    );
    let bad = d.file("bad", b"1\n1\n3\n4\n5\n");
    assert_eq!(
        code(&[
            "parse",
            "--method",
            "order",
            "--order-file",
            &bad,
            "--text",
            &text,
            "--out",
            &scheme
        ]),
        1
    );
}

#[test]
fn grammar_round_trip() {
    let d = Dir::new();
    let text = d.file("t", EXAMPLE);
    let g = d.path("g");
    ok(&["grammar", "--build", "--text", &text, "--out", &g]);
    assert!(read(&g).starts_with(b"RLSLP"));
    assert_eq!(ok(&["grammar", "--expand", &g]).as_bytes(), EXAMPLE);
    let back = d.path("back");
    ok(&["grammar", "--expand", &g, "--out", &back]);
    assert_eq!(read(&back), EXAMPLE);
    assert_eq!(code(&["grammar"]), 1);
}

#[test]
fn collage_round_trip() {
    let d = Dir::new();
    let text = d.file("t", EXAMPLE);
    let c = d.path("c");
    ok(&["collage", "--from-lz", "--text", &text, "--out", &c]);
    assert!(read(&c).starts_with(b"COLLAGE"));
    let scheme = d.path("s");
    ok(&["collage", "--to-scheme", &c, "--out", &scheme]);
    assert!(ok(&["validate", "--scheme", &scheme, "--text", &text]).ends_with("valid\n"));
}

#[test]
fn oracles() {
    let d = Dir::new();
    let text = d.file("t", b"abab");
    let b = ok(&["oracle", "--op", "b", "--text", &text]);
    assert!(b.starts_with("b=4\nSCHEME n=5\n"), "{b}");
    let example = d.file("x", EXAMPLE);
    assert_eq!(
        ok(&["oracle", "--op", "minparse", "--text", &example]),
        "11\n"
    );
    assert_eq!(
        ok(&["oracle", "--op", "minparse", "--text", &example, "--order", "pos"]),
        "11\n"
    );
    let fib = d.file("f", b"abaababa");
    assert_eq!(ok(&["oracle", "--op", "rotation", "--text", &fib]), "8\n");
    let long = d.file("l", &[b'a'; 40]);
    assert_eq!(
        code(&["oracle", "--op", "b", "--text", &long, "--max-n", "10"]),
        1
    );
}

#[test]
fn measure_formats() {
    let d = Dir::new();
    let text = d.file("example", EXAMPLE);
    let json = ok(&["measure", "--format", "json", &text]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["version"], 1);
    let rep = &v["reports"][0];
    assert_eq!(
        (
            rep["n"].as_u64(),
            rep["r"].as_u64(),
            rep["z"].as_u64(),
            rep["v"].as_u64()
        ),
        (Some(17), Some(10), Some(11), Some(11))
    );
    assert!(rep["rlslp_rules"].is_null());

    let tsv = ok(&["measure", "--format", "tsv", "--deep", "--paper-n", &text]);
    let rows: Vec<Vec<&str>> = tsv.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][..5], ["name", "n", "r", "z", "v"]);
    assert!(rows[1][0].ends_with("example"));
    assert_eq!(rows[1][1..5], ["16", "10", "11", "11"]);
    assert!(rows[1].iter().all(|c| *c != "-"));

    let human = ok(&["measure", &text]);
    assert!(human.starts_with("name"));
}

#[test]
fn measure_family_sweep() {
    let a = ok(&[
        "measure", "--format", "tsv", "--family", "fib", "--k", "5..9", "--step", "2",
    ]);
    let names: Vec<&str> = a
        .lines()
        .skip(1)
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(names, ["fib-k5", "fib-k7", "fib-k9"]);
    assert_eq!(
        a,
        ok(&["measure", "--format", "tsv", "--family", "fib", "--k", "5..9", "--step", "2"])
    );
    assert_eq!(code(&["measure", "--family", "fib", "--k", "9..5"]), 1);
    assert_eq!(
        code(&["measure", "--family", "fib", "--k", "5..9", "--step", "0"]),
        1
    );
    let sweep = ok(&[
        "measure", "--format", "tsv", "--family", "debruijn", "--k", "3", "--sigma", "2..3",
    ]);
    assert_eq!(sweep.lines().count(), 3);
}

#[test]
fn dump_sa_header() {
    let d = Dir::new();
    let text = d.file("t", b"ab");
    let dump = ok(&["measure", "--dump-sa", &text]);
    assert!(dump.starts_with("rank\tsa\tlcp\tbwt\n"), "{dump}");
    assert_eq!(dump.lines().count(), 4);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["measure"]), 1);
    assert_eq!(
        code(&["parse", "--method", "nope", "--text", "x", "--out", "y"]),
        1
    );
    assert_eq!(code(&["measure", "/nonexistent/file"]), 1);
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn sentinel_in_input_is_rejected() {
    let d = Dir::new();
    let text = d.file("t", b"ab\0ab");
    assert_eq!(code(&["measure", &text]), 1);
}
