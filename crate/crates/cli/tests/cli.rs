use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use revassign_cli::commands::{
    cmd_assign, cmd_similarity, AlgorithmChoice, AssignArgs, MatrixSource, MethodSpec,
    SimilarityArgs,
};
use revassign_cli::formats::{read_matrix, read_outcomes, read_path, write_outcomes};
use revassign_core::{Algorithm, BidScale, SimilarityMethod, TopicMeasure};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn revassign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revassign"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8_lossy(bytes).into_owned()
}

fn source(method: &str) -> MatrixSource {
    MatrixSource {
        method: method.parse().unwrap(),
        ratings: None,
        weights: None,
    }
}

fn similarity(dataset: &str, method: &str, dir: &Path) -> String {
    let out = dir.join("m.tsv");
    cmd_similarity(&SimilarityArgs {
        dataset: fixture(dataset),
        source: source(method),
        out: out.clone(),
    })
    .unwrap();
    fs::read_to_string(out).unwrap()
}

#[test]
fn worked_examples_match_golden_matrices() {
    let dir = tempfile::tempdir().unwrap();
    for (dataset, method, golden) in [
        (
            "worked_binary.jsonl",
            "jaccard",
            "worked_binary.jaccard.tsv",
        ),
        ("worked_binary.jsonl", "dice", "worked_binary.dice.tsv"),
        (
            "worked_weighted.jsonl",
            "weighted-relative",
            "worked_weighted.weighted-relative.tsv",
        ),
        (
            "worked_weighted.jsonl",
            "weighted-absolute",
            "worked_weighted.weighted-absolute.tsv",
        ),
    ] {
        let expected = fs::read_to_string(fixture(golden)).unwrap();
        assert_eq!(
            similarity(dataset, method, dir.path()),
            expected,
            "{golden}"
        );
    }
}

#[test]
fn weighted_measures_on_binary_data_equal_jaccard() {
    let dir = tempfile::tempdir().unwrap();
    let jaccard = similarity("worked_binary.jsonl", "jaccard", dir.path());
    assert_eq!(
        similarity("worked_binary.jsonl", "weighted-relative", dir.path()),
        jaccard
    );
    assert_eq!(
        similarity("worked_binary.jsonl", "weighted-absolute", dir.path()),
        jaccard
    );
}

#[test]
fn figure2_matrix_is_reproduced_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.tsv");
    let summary = cmd_similarity(&SimilarityArgs {
        dataset: fixture("figure2_dataset.jsonl"),
        source: MatrixSource {
            method: MethodSpec::Given,
            ratings: None,
            weights: Some(fixture("figure2_weights.tsv")),
        },
        out: out.clone(),
    })
    .unwrap();
    assert_eq!(
        fs::read(&out).unwrap(),
        fs::read(fixture("figure2_weights.tsv")).unwrap()
    );
    assert_eq!(
        summary,
        "paper\tcandidates\np1\t5\np2\t5\np3\t5\np4\t3\np5\t3\n"
    );
}

#[test]
fn method_names_parse() {
    assert_eq!("matrix".parse::<MethodSpec>(), Ok(MethodSpec::Given));
    assert_eq!(
        "combined:dice".parse::<MethodSpec>(),
        Ok(MethodSpec::Computed(SimilarityMethod::Combined(
            TopicMeasure::Dice,
            BidScale::default()
        )))
    );
    assert_eq!(
        "easychair".parse::<MethodSpec>(),
        Ok(MethodSpec::Computed(SimilarityMethod::EasyChairCoarse))
    );
    assert!("cosine".parse::<MethodSpec>().is_err());
    assert_eq!("all".parse::<AlgorithmChoice>(), Ok(AlgorithmChoice::All));
    assert_eq!(
        "greedy".parse::<AlgorithmChoice>(),
        Ok(AlgorithmChoice::One(Algorithm::Greedy))
    );
}

fn assign_args(matrix: PathBuf, algorithm: &str, m: usize, capacity: usize) -> AssignArgs {
    AssignArgs {
        matrix: Some(matrix),
        dataset: None,
        source: source("jaccard"),
        m,
        capacity: Some(capacity),
        algorithm: algorithm.parse().unwrap(),
        out: None,
    }
}

#[test]
fn figure2_hungarian_reaches_the_oracle() {
    let exact = cmd_assign(&assign_args(
        fixture("figure2_weights.tsv"),
        "brute-force",
        1,
        1,
    ))
    .unwrap();
    let hungarian = cmd_assign(&assign_args(
        fixture("figure2_weights.tsv"),
        "hungarian",
        1,
        1,
    ))
    .unwrap();
    assert!((exact.outcomes[0].total_weight - 1.23).abs() < 1e-9);
    assert!((hungarian.outcomes[0].total_weight - exact.outcomes[0].total_weight).abs() < 1e-9);
}

#[test]
fn trap_report_shows_greedy_stranding_a_paper() {
    let run = cmd_assign(&assign_args(fixture("greedy_trap.tsv"), "all", 1, 1)).unwrap();
    let uncovered: Vec<(&str, usize)> = run
        .outcomes
        .iter()
        .map(|o| (o.algorithm.as_str(), o.uncovered.len()))
        .collect();
    assert_eq!(
        uncovered,
        vec![("hungarian", 0), ("greedy", 1), ("heuristic", 0)]
    );
    let greedy_row = run
        .report
        .lines()
        .find(|l| l.starts_with("greedy"))
        .unwrap();
    assert_eq!(greedy_row.split_whitespace().nth(3), Some("1"));
    let json = run.report.split("--- json\n").nth(1).unwrap();
    let v: serde_json::Value = serde_json::from_str(json.trim()).unwrap();
    assert_eq!(v["results"][2]["uncovered"], 0);
}

#[test]
fn infeasible_capacities_warn_but_succeed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.jsonl");
    let output = revassign(&[
        "assign",
        "--matrix",
        fixture("figure2_weights.tsv").to_str().unwrap(),
        "--capacity",
        "1",
        "--m",
        "2",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(text(&output.stderr).contains("warning: Σ capacities 5 < 10"));
    let outcomes = read_path(&out, |i, s| read_outcomes(i, s)).unwrap();
    assert!(outcomes[0].infeasible);
    assert!(!outcomes[0].uncovered.is_empty());
}

#[test]
fn zero_reviewers_per_paper_is_a_usage_error() {
    let output = revassign(&[
        "assign",
        "--matrix",
        fixture("greedy_trap.tsv").to_str().unwrap(),
        "--capacity",
        "1",
        "--m",
        "0",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(text(&output.stderr).contains("--m"));
}

#[test]
fn randomized_commands_require_a_seed() {
    for args in [
        vec!["gen", "-o", "-"],
        vec!["bench"],
        vec!["irm", "--dataset", "d", "--truth", "t"],
    ] {
        let output = revassign(&args);
        assert_eq!(output.status.code(), Some(2), "{args:?}");
        assert!(text(&output.stderr).contains("--seed"));
    }
}

#[test]
fn empty_reviewer_set_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let ds = dir.path().join("d.jsonl");
    fs::write(&ds, "{\"kind\":\"topic\",\"label\":\"a\"}\n{\"kind\":\"paper\",\"id\":\"p1\",\"topics\":[\"a\"]}\n").unwrap();
    let output = revassign(&["similarity", "--dataset", ds.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(text(&output.stderr).contains("no reviewers"));
}

#[test]
fn malformed_inputs_name_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let ds = dir.path().join("d.jsonl");
    let cases = [
        ("{\"kind\":\"topic\",\"label\":\"a\"}\n\n{\"kind\":\"paper\",\"id\":\"p1\",\"topics\":7}\n", ":3: field `topics`"),
        ("{\"kind\":\"topic\",\"label\":\"a\"}\n{\"kind\":\"paper\",\"id\":\"p1\",\"topics\":[\"zz\"]}\n", ":2: field `topics`: unknown topic \"zz\""),
        ("{\"kind\":\"reviewer\",\"id\":\"r1\",\"topics\":[]}\n", ":1: missing field `capacity`"),
        ("{\"kind\":\"paper\",\"id\":\"p1\",\"topics\":[],\"colour\":1}\n", ":1: field `colour`: unknown field `colour`"),
        ("{\"kind\":\"topic\",\"label\":\"a\"}\n{\"kind\":\"paper\",\"id\":\"p1\",\"topics\":{\"a\":1.5}}\n", ":2: field `topics.a`: weight 1.5"),
        ("{\"kind\":\"reviewer\",\"id\":\"r1\",\"capacity\":1,\"topics\":[],\"conflicts\":[\"p9\"]}\n", ":1: field `conflicts`: unknown paper \"p9\""),
        ("not json\n", ":1: "),
    ];
    for (content, needle) in cases {
        fs::write(&ds, content).unwrap();
        let output = revassign(&["similarity", "--dataset", ds.to_str().unwrap()]);
        assert_eq!(output.status.code(), Some(1), "{content}");
        let err = text(&output.stderr);
        assert!(err.contains(needle), "{err} lacks {needle}");
        assert!(output.stdout.is_empty());
    }

    let m = dir.path().join("m.tsv");
    fs::write(&m, "reviewer\tp1\tp2\nr1\t0.5\tx\n").unwrap();
    let err = read_path(&m, |i, s| read_matrix(i, s))
        .unwrap_err()
        .to_string();
    assert!(
        err.ends_with(":2: column `p2`: invalid weight \"x\""),
        "{err}"
    );
    fs::write(&m, "reviewer\tp1\tp2\nr1\t0.5\n").unwrap();
    let err = read_path(&m, |i, s| read_matrix(i, s))
        .unwrap_err()
        .to_string();
    assert!(err.contains(":2: expected 3 fields, found 2"), "{err}");
}

#[test]
fn gen_is_deterministic_and_respects_density() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, density: &str| {
        let out = dir.path().join(name);
        let o = revassign(&[
            "gen",
            "--seed",
            "42",
            "--papers",
            "8",
            "--reviewers",
            "5",
            "--topics",
            "6",
            "--density",
            density,
            "-o",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", text(&o.stderr));
        fs::read_to_string(out).unwrap()
    };
    assert_eq!(run("a.jsonl", "0.3"), run("b.jsonl", "0.3"));
    let full = run("c.jsonl", "1");
    let all = "[\"topic-0\",\"topic-1\",\"topic-2\",\"topic-3\",\"topic-4\",\"topic-5\"]";
    assert!(full
        .lines()
        .filter(|l| !l.contains("\"topic\""))
        .all(|l| l.contains(all)));
}

#[test]
fn gen_rejects_bad_sizes() {
    for args in [["--papers", "0"], ["--density", "0"], ["--density", "1.5"]] {
        let o = revassign(&["gen", "--seed", "1", args[0], args[1], "-o", "-"]);
        assert!(!o.status.success());
    }
}

#[test]
fn irm_is_reproducible_and_labels_single_pass() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.jsonl");
    let t = dir.path().join("t.jsonl");
    let g = revassign(&[
        "gen",
        "--seed",
        "5",
        "--papers",
        "30",
        "--reviewers",
        "20",
        "--weighted",
        "-o",
        d.to_str().unwrap(),
        "--truth",
        t.to_str().unwrap(),
    ]);
    assert!(g.status.success());
    let irm = |iterations: &str, snaps: &str| {
        revassign(&[
            "irm",
            "--dataset",
            d.to_str().unwrap(),
            "--truth",
            t.to_str().unwrap(),
            "--seed",
            "9",
            "--iterations",
            iterations,
            "-k",
            "4",
            "--snapshots",
            dir.path().join(snaps).to_str().unwrap(),
        ])
    };
    let one = irm("1", "s1");
    assert!(one.status.success());
    assert!(text(&one.stdout).starts_with("mode: single-pass"));
    let a = irm("3", "a");
    let b = irm("3", "b");
    assert_eq!(a.stdout, b.stdout);
    for i in 1..=3 {
        let name = format!("ratings-{i}.jsonl");
        assert_eq!(
            fs::read(dir.path().join("a").join(&name)).unwrap(),
            fs::read(dir.path().join("b").join(&name)).unwrap()
        );
    }
    assert_eq!(irm("0", "z").status.code(), Some(2));
}

#[test]
fn written_files_read_back_identically() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_str().unwrap().to_owned();
    assert!(revassign(&[
        "gen",
        "--seed",
        "3",
        "--papers",
        "12",
        "--reviewers",
        "6",
        "--weighted",
        "--conflict-rate",
        "0.1",
        "-o",
        &p("d.jsonl"),
        "--truth",
        &p("t.jsonl")
    ])
    .status
    .success());
    assert!(revassign(&[
        "irm",
        "--dataset",
        &p("d.jsonl"),
        "--truth",
        &p("t.jsonl"),
        "--seed",
        "1",
        "-k",
        "3",
        "-o",
        &p("r.jsonl")
    ])
    .status
    .success());
    assert!(revassign(&[
        "similarity",
        "--dataset",
        &p("d.jsonl"),
        "--method",
        "combined:weighted-relative",
        "--ratings",
        &p("r.jsonl"),
        "-o",
        &p("m.tsv")
    ])
    .status
    .success());
    assert!(revassign(&[
        "assign",
        "--dataset",
        &p("d.jsonl"),
        "--matrix",
        &p("m.tsv"),
        "--m",
        "2",
        "--algorithm",
        "all",
        "-o",
        &p("a.jsonl")
    ])
    .status
    .success());

    // Feeding each file back through the tool reproduces it byte for byte.
    assert!(revassign(&[
        "similarity",
        "--dataset",
        &p("d.jsonl"),
        "--method",
        "matrix",
        "--weights",
        &p("m.tsv"),
        "-o",
        &p("m2.tsv")
    ])
    .status
    .success());
    assert_eq!(
        fs::read(p("m.tsv")).unwrap(),
        fs::read(p("m2.tsv")).unwrap()
    );
    assert!(revassign(&[
        "irm",
        "--dataset",
        &p("d.jsonl"),
        "--truth",
        &p("t.jsonl"),
        "--seed",
        "1",
        "-k",
        "1",
        "--iterations",
        "1",
        "--ratings",
        &p("r.jsonl"),
        "-o",
        &p("r2.jsonl")
    ])
    .status
    .success());

    let outcomes = read_path(Path::new(&p("a.jsonl")), |i, s| read_outcomes(i, s)).unwrap();
    assert_eq!(outcomes.len(), 3);
    let mut again = Vec::new();
    write_outcomes(&mut again, &outcomes).unwrap();
    assert_eq!(again, fs::read(p("a.jsonl")).unwrap());
}
