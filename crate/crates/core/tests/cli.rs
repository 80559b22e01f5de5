mod common;

use std::fs;
use std::process::{Command, Output};

use spantag::cli::{run, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn spantag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spantag"))
        .args(args)
        .current_dir(common::fixture(""))
        .output()
        .unwrap()
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("spantag").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("spantag-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn binary_and_library_entry_point_agree() {
    let fixture = common::fixture("malformed.iobes");
    let path = fixture.to_str().unwrap();
    let args = ["validate", path, "--scheme", "iobes"];
    let out = Command::new(env!("CARGO_BIN_EXE_spantag"))
        .args(args)
        .output()
        .unwrap();
    let (code, stdout, stderr) = in_process(&args);
    assert_eq!(out.status.code(), Some(code));
    assert_eq!(String::from_utf8_lossy(&out.stdout), stdout);
    assert_eq!(String::from_utf8_lossy(&out.stderr), stderr);
    assert_eq!(code, EXIT_DOMAIN);
}

#[test]
fn malformed_convert_writes_no_output_file() {
    let target = scratch("malformed.bio");
    let _ = fs::remove_file(&target);
    let out = spantag(&[
        "convert",
        "malformed.iobes",
        "--from",
        "iobes",
        "--to",
        "bio",
        "-o",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(EXIT_DOMAIN));
    assert!(!target.exists());
    assert!(out.stdout.is_empty());
}

#[test]
fn convert_to_file_then_back_is_lossless() {
    let bilou = scratch("clean.bilou");
    let out = spantag(&[
        "convert",
        "clean.iobes",
        "--from",
        "iobes",
        "--to",
        "bilou",
        "-o",
        bilou.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&bilou).unwrap();
    assert!(text.contains("Madrid L-ORG") && text.contains("Spain U-LOC"));

    let back = spantag(&[
        "convert",
        bilou.to_str().unwrap(),
        "--from",
        "bilou",
        "--to",
        "iobes",
    ]);
    assert_eq!(back.status.code(), Some(EXIT_OK));
    let original = fs::read_to_string(common::fixture("clean.iobes")).unwrap();
    assert_eq!(String::from_utf8(back.stdout).unwrap(), original);
}

#[test]
fn validate_and_convert_agree_on_well_formedness() {
    let cases = [
        ("clean.iobes", "iobes"),
        ("malformed.iobes", "iobes"),
        ("dangling.iobes", "iobes"),
        ("bad_prefix.bio", "bio"),
        ("bad_begin.iob", "iob"),
        ("all_o.bio", "bio"),
        ("bank_gold.iobes", "iobes"),
        ("bank_pred.iobes", "iobes"),
    ];
    for (file, scheme) in cases {
        let validate = spantag(&["validate", file, "--scheme", scheme]);
        let convert = spantag(&["convert", file, "--from", scheme, "--to", "bio"]);
        assert_eq!(validate.status.code(), convert.status.code(), "{file}");
        assert_eq!(validate.stderr, convert.stderr, "{file}");
    }
}

#[test]
fn strict_parse_agrees_with_validate() {
    for (file, scheme) in [
        ("clean.iobes", "iobes"),
        ("malformed.iobes", "iobes"),
        ("bad_begin.iob", "iob"),
    ] {
        let validate = spantag(&["validate", file, "--scheme", scheme]);
        let parse = spantag(&["parse", file, "--scheme", scheme, "--strict"]);
        assert_eq!(validate.status.code(), parse.status.code(), "{file}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["validate"][..],
        &["validate", "clean.iobes"],
        &["validate", "clean.iobes", "--scheme", "bilu"],
        &[
            "parse",
            "clean.iobes",
            "--scheme",
            "iobes",
            "--policy",
            "greedy",
        ],
        &["score", "clean.iobes", "--scheme", "iobes"],
        &["frobnicate"],
        &[
            "validate",
            "clean.iobes",
            "--scheme",
            "iobes",
            "--label-column",
            "seven",
        ],
        &[
            "validate",
            "clean.iobes",
            "--scheme",
            "iobes",
            "--label-column",
            "5",
        ],
    ] {
        let (code, stdout, stderr) = in_process(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {stderr}");
        assert!(stdout.is_empty(), "{args:?}");
        assert!(!stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    let (code, stdout, _) = in_process(&["--help"]);
    assert_eq!(code, EXIT_OK);
    for sub in ["validate", "convert", "parse", "score", "transitions"] {
        assert!(stdout.contains(sub), "help lacks {sub}");
    }
    let (code, stdout, _) = in_process(&["--version"]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn label_column_selects_a_middle_column() {
    let path = scratch("two_labels.txt");
    fs::write(&path, "John B-PER O\nSmith I-PER O\n\n").unwrap();
    let (code, stdout, _) = in_process(&[
        "parse",
        path.to_str().unwrap(),
        "--scheme",
        "bio",
        "--label-column",
        "1",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(stdout, "0 PER 0 2 John Smith\n");
    let (code, stdout, _) = in_process(&["parse", path.to_str().unwrap(), "--scheme", "bio"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(stdout, "");
}

#[test]
fn uppercase_prefixes_accepts_lowercase_input() {
    let path = scratch("lower.bio");
    fs::write(&path, "John b-PER\nSmith i-PER\n").unwrap();
    let (code, _, _) = in_process(&["validate", path.to_str().unwrap(), "--scheme", "bio"]);
    assert_eq!(code, EXIT_DOMAIN);
    let (code, stdout, stderr) = in_process(&[
        "validate",
        path.to_str().unwrap(),
        "--scheme",
        "bio",
        "--uppercase-prefixes",
    ]);
    assert_eq!(code, EXIT_OK, "{stderr}");
    assert!(stdout.contains("1 spans, 0 errors"));
}

#[test]
fn score_of_a_file_against_itself_is_perfect() {
    let (code, stdout, _) = in_process(&[
        "score",
        common::fixture("conll2003_iob.txt").to_str().unwrap(),
        common::fixture("conll2003_iob.txt").to_str().unwrap(),
        "--scheme",
        "iob",
        "--skip-docstart",
        "--machine",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("metric.micro.f1=1.0000"));
    assert!(stdout.contains("metric.micro.gold=6"));
}

#[test]
fn transitions_example_queries() {
    let (code, stdout, _) = in_process(&["transitions", "--scheme", "iobes", "--types", "PER,LOC"]);
    assert_eq!(code, EXIT_OK);
    assert!(stdout.contains("B-PER -> E-PER : legal\n"));
    assert!(stdout.contains("B-PER -> O : illegal\n"));
    assert!(stdout.contains("B-PER -> E-LOC : illegal\n"));
    assert!(stdout.contains("START -> I-LOC : illegal\n"));
    assert!(stdout.contains("S-LOC -> END : legal\n"));

    let (code, _, stderr) = in_process(&["transitions", "--scheme", "bio", "--types", "A,A"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(stderr.contains("A"));
}
