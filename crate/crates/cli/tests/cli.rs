//! End-to-end tests driving the compiled binary.

use std::collections::BTreeSet;
use std::process::{Command, Output};

use cyfib::enumerate::{enumerate_all, EnumerationReport};
use cyfib::surface::preset_projective_plane;

fn cyfib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyfib"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn json_report_matches_library() {
    let out = cyfib(&["--preset", "p2", "--d", "1", "--format", "json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: EnumerationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.pairs.len(), 15);
    let expected = enumerate_all(&preset_projective_plane(1).unwrap()).unwrap();
    assert_eq!(report, expected);
}

#[test]
fn formats_carry_the_same_pairs() {
    let args = ["--preset", "delpezzo", "--k", "8", "--m", "2"];
    let json_out = cyfib(&[&args[..], &["--format", "json"]].concat());
    let csv_out = cyfib(&[&args[..], &["--format", "csv"]].concat());
    let text_out = cyfib(&[&args[..], &["--format", "text"]].concat());
    assert!(json_out.status.success() && csv_out.status.success() && text_out.status.success());

    let report: EnumerationReport = serde_json::from_str(&stdout(&json_out)).unwrap();
    let json_pairs: BTreeSet<(i64, i64)> =
        report.pairs.iter().map(|r| (r.pair.a, r.pair.b)).collect();

    let csv_pairs: BTreeSet<(i64, i64)> = stdout(&csv_out)
        .lines()
        .skip(1)
        .map(|line| {
            let mut cols = line.split(',');
            (
                cols.next().unwrap().parse().unwrap(),
                cols.next().unwrap().parse().unwrap(),
            )
        })
        .collect();

    let text = stdout(&text_out);
    let text_pairs: BTreeSet<(i64, i64)> = text
        .lines()
        .filter_map(|line| {
            let t = line.trim_start();
            let rest = t.strip_prefix('(')?;
            let (a, rest) = rest.split_once(',')?;
            let (b, _) = rest.split_once(')')?;
            Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
        })
        .collect();

    assert_eq!(json_pairs.len(), 10);
    assert_eq!(csv_pairs, json_pairs);
    assert_eq!(text_pairs, json_pairs);
}

#[test]
fn text_report_for_d2() {
    let out = cyfib(&["--preset", "p2", "--d", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(0, 0)"));
    assert!(text.contains("(1, 1)"));
    assert!(text.contains("total 2"));
}

#[test]
fn descriptor_input_with_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quadric.json");
    std::fs::write(
        &path,
        r#"{"name": "P1xP1, L = f1 + 2f2", "L2": 4, "c1L": 6, "c1sq": 8, "c2": 4, "n0": 3}"#,
    )
    .unwrap();
    let out = cyfib(&[
        "--input",
        path.to_str().unwrap(),
        "--verify",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: EnumerationReport = serde_json::from_str(&stdout(&out)).unwrap();
    let candidates: Vec<(i64, i64)> = report.candidates().map(|r| (r.pair.a, r.pair.b)).collect();
    assert_eq!(candidates, vec![(2, 0)]);
    assert!(report
        .notes
        .iter()
        .any(|n| n.contains("verification") && n.contains("confirms")));
}

#[test]
fn unknown_descriptor_key_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name": "x", "L2": 1, "c1L": 3, "c1sq": 9, "c2": 3, "n0": 4, "xyzzy": 7}"#,
    )
    .unwrap();
    let out = cyfib(&["--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("malformed descriptor"));
}

#[test]
fn invalid_surface_exits_2() {
    let out = cyfib(&[
        "--l2", "1", "--c1l", "1", "--c1sq", "9", "--c2", "3", "--n0", "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Hodge index violation"));
}

#[test]
fn conflicting_sources_exit_1() {
    let out = cyfib(&["--preset", "p2", "--d", "1", "--l2", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("exactly one input source"));
}

#[test]
fn incomplete_inline_profile_exits_1() {
    let out = cyfib(&["--l2", "4", "--c1l", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("missing"));
}

#[test]
fn preset_requires_its_parameters() {
    let out = cyfib(&["--preset", "p2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = cyfib(&["--preset", "delpezzo", "--k", "8"]);
    assert_eq!(out.status.code(), Some(1));
    let out = cyfib(&["--preset", "delpezzo", "--k", "8", "--m", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("does not divide"));
}

#[test]
fn figure_is_written_and_report_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let fig = dir.path().join("octant.svg");
    let with_figure = cyfib(&[
        "--preset",
        "p2",
        "--d",
        "1",
        "--figure",
        fig.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(with_figure.status.success(), "{}", stderr(&with_figure));
    let svg = std::fs::read_to_string(&fig).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("candidate-calabi-yau"));
    assert!(svg.contains("</svg>"));

    let without_figure = cyfib(&["--preset", "p2", "--d", "1", "--format", "json"]);
    assert_eq!(stdout(&with_figure), stdout(&without_figure));
}

#[test]
fn hyperbola_figure_for_irreducible_branch() {
    let dir = tempfile::tempdir().unwrap();
    let fig = dir.path().join("hyperbola.svg");
    let out = cyfib(&[
        "--l2",
        "4",
        "--c1l",
        "6",
        "--c1sq",
        "8",
        "--c2",
        "4",
        "--n0",
        "3",
        "--figure",
        fig.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let svg = std::fs::read_to_string(&fig).unwrap();
    assert!(svg.contains("polyline"), "hyperbola branch missing");
}

#[test]
fn scan_box_flag_accepted() {
    let out = cyfib(&[
        "--preset",
        "p2",
        "--d",
        "3",
        "--verify",
        "--scan-box",
        "50",
        "--format",
        "csv",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 6); // header + 5 pairs
}
