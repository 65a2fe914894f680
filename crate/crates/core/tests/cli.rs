mod common;

use common::*;
use hornsat::cli::{EXIT_DIAGNOSTICS, EXIT_EXHAUSTED, EXIT_FALSE, EXIT_OK};
use hornsat::syntax::{parse_machine, parse_program};

/// Machine output of each command, compared with files under
/// `tests/golden`. Set `HORNSAT_BLESS=1` to rewrite them.
const GOLDEN: &[(&str, &[&str])] = &[
    (
        "sat_false",
        &[
            "sat",
            "@pairs.hn",
            "--goal",
            "p_q(s(s(X)):s(s(X)))",
            "--trace",
        ],
    ),
    (
        "sat_true",
        &[
            "sat",
            "@pairs.hn",
            "--goal",
            "p_q(X:Y)",
            "--witness",
            "--trace",
        ],
    ),
    (
        "intersect",
        &["intersect", "@pairs.hn", "--left", "p", "--right", "q"],
    ),
    ("repr", &["repr", "s(X):s(X)"]),
    (
        "order",
        &["order", "s(X):Y", "s(s(X)):s(Y)", "--global", "@pairs.hn"],
    ),
    (
        "bound",
        &["bound", "@pairs.hn", "--goal", "p_q(s(s(X)):s(s(X)))"],
    ),
    (
        "enum",
        &["enum", "@pairs.hn", "--pred", "q", "--depth", "3"],
    ),
    ("validate", &["validate", "@pairs.hn"]),
    ("validate_broken", &["validate", "@broken.hn"]),
];

fn expand(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => fixture(f),
            None => a.to_string(),
        })
        .collect()
}

#[test]
fn golden_machine_output() {
    let dir = format!("{}/tests/golden", env!("CARGO_MANIFEST_DIR"));
    let bless = std::env::var_os("HORNSAT_BLESS").is_some();
    for (name, args) in GOLDEN {
        let mut argv = expand(args);
        argv.extend(["--format".into(), "machine".into()]);
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        let (code, out, _) = cli(&argv);
        let got = format!("exit={code}\n{out}");
        let path = format!("{dir}/{name}.txt");
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {path}"));
        assert_eq!(got, want, "golden {name}");
    }
}

#[test]
fn exit_codes() {
    let pairs = fixture("pairs.hn");
    assert_eq!(cli(&["validate", &pairs]).0, EXIT_OK);
    assert_eq!(
        cli(&["validate", &fixture("broken.hn")]).0,
        EXIT_DIAGNOSTICS
    );
    assert_eq!(
        cli(&["sat", &pairs, "--goal", "p_q(s(s(X)):s(s(X)))"]).0,
        EXIT_FALSE
    );
    assert_eq!(cli(&["sat", &pairs, "--goal", "q(X:Y)"]).0, EXIT_OK);
    assert_eq!(
        cli(&["sat", &pairs, "--goal", "q(X:Y)", "--max-states", "1"]).0,
        EXIT_EXHAUSTED
    );
    assert_eq!(
        cli(&["sat", "/nonexistent.hn", "--goal", "q(X)"]).0,
        EXIT_DIAGNOSTICS
    );
    assert_eq!(cli(&["sat", &pairs, "--goal", "q(X:"]).0, EXIT_DIAGNOSTICS);
    assert_eq!(cli(&["order", "s(X):s(X)", "X:Y"]).0, EXIT_FALSE);
    assert_eq!(
        cli(&["enum", &fixture("nat.hn"), "--pred", "even", "--depth", "1"]).0,
        EXIT_OK
    );
    assert_eq!(
        cli(&["enum", &fixture("nat.hn"), "--pred", "odd", "--depth", "1"]).0,
        EXIT_FALSE
    );
    assert_eq!(cli(&["frobnicate"]).0, EXIT_DIAGNOSTICS);
}

#[test]
fn exhaustion_is_never_an_answer() {
    let (code, out, _) = cli(&[
        "order",
        "s(X):Y",
        "s(s(X)):s(Y)",
        "--max-states",
        "1",
        "--format",
        "machine",
    ]);
    assert_eq!(code, EXIT_EXHAUSTED);
    let kv = parse_machine(&out);
    assert_eq!(field(&kv, "result"), Some("error"));
    assert_eq!(field(&kv, "diagnostic.1.code"), Some("resource-exhausted"));
    assert_eq!(field(&kv, "leq"), None);
}

#[test]
fn pretty_repr_lists_classes() {
    let (code, out, _) = cli(&["repr", "s(X):s(X)"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("{:.1, :.2}"), "{out}");
}

#[test]
fn order_prints_the_witness() {
    let (code, out, _) = cli(&[
        "order",
        "s(X):Y",
        "s(s(X)):s(Y)",
        "--global",
        &fixture("pairs.hn"),
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains(":.1 <- :.1.s.1, :.2 <- :.2.s.1"), "{out}");
}

#[test]
fn intersect_output_reparses() {
    let dir = std::env::temp_dir().join(format!("hornsat-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_file = dir.join("pq.hn");
    let out_file = out_file.to_str().unwrap();
    let (code, _, err) = cli(&[
        "intersect",
        &fixture("pairs.hn"),
        "--left",
        "p",
        "--right",
        "q",
        "--out",
        out_file,
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let text = std::fs::read_to_string(out_file).unwrap();
    assert!(text.starts_with("% p_q = p & q"));
    let prog = parse_program(&text).unwrap();
    assert!(prog.defines("p_q"));
    let (code, out, _) = cli(&[
        "sat",
        out_file,
        "--goal",
        "p_q(X:Y)",
        "--witness",
        "--format",
        "machine",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("witness=0:0"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn syntax_errors_are_located() {
    let dir = std::env::temp_dir().join(format!("hornsat-syntax-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.hn");
    std::fs::write(&f, "p(X).\nq(X <- p(X).\n").unwrap();
    let (code, out, _) = cli(&["validate", f.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(code, EXIT_DIAGNOSTICS);
    let kv = parse_machine(&out);
    assert_eq!(field(&kv, "diagnostic.1.code"), Some("syntax"));
    assert_eq!(field(&kv, "diagnostic.1.line"), Some("2"));
    assert_eq!(field(&kv, "diagnostic.1.column"), Some("5"));
    std::fs::remove_dir_all(dir).unwrap();
}
