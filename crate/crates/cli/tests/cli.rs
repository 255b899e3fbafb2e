//! Black-box tests of the mcdm binary: exit codes, flag surface,
//! artifact writing, and stream hygiene.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/airline").join(file)
}

fn mcdm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcdm")).args(args).output().unwrap()
}

fn run_on_metrics(extra: &[&str]) -> Output {
    let input = data("metrics.csv");
    let mut args: Vec<&str> = vec![extra[0], "--input", input.to_str().unwrap()];
    args.extend(&extra[1..]);
    mcdm(&args)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn version_and_help_succeed() {
    let version = mcdm(&["--version"]);
    assert_eq!(code(&version), 0);
    assert!(stdout(&version).starts_with("mcdm "));
    let help = mcdm(&["--help"]);
    assert_eq!(code(&help), 0);
    for sub in ["weights", "rank", "aism", "sensitivity", "pipeline"] {
        assert!(stdout(&help).contains(sub), "help must list {sub}");
    }
}

#[test]
fn subcommand_help_documents_every_flag() {
    let mut union = String::new();
    for sub in ["weights", "rank", "aism", "sensitivity", "pipeline"] {
        let out = mcdm(&[sub, "--help"]);
        assert_eq!(code(&out), 0);
        union.push_str(&stdout(&out));
    }
    for flag in [
        "--input",
        "--from",
        "--format",
        "--weights",
        "--k",
        "--out",
        "--profile",
        "--mode",
        "--dot",
        "--matrices",
        "--dominance-eps",
        "--k-grid",
        "--reference",
    ] {
        assert!(union.contains(flag), "subcommand help must document {flag}");
    }
}

#[test]
fn usage_errors_exit_with_one() {
    let unknown = mcdm(&["frobnicate"]);
    assert_eq!(code(&unknown), 1);
    let missing_required = mcdm(&["rank"]);
    assert_eq!(code(&missing_required), 1);
    assert!(stderr(&missing_required).contains("--input"));
}

#[test]
fn unreadable_input_exits_with_two_and_names_the_path() {
    let out = mcdm(&["rank", "--input", "/nonexistent/scores.csv"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("/nonexistent/scores.csv"));
}

#[test]
fn out_of_range_strategy_weight_is_a_data_error() {
    let out = run_on_metrics(&["rank", "--k", "1.5"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_grid_is_a_data_error() {
    for grid in ["0:1", "0:1:0", "a:b:c", "0.6:0.4:0.1", "0:2:0.5"] {
        let out = run_on_metrics(&["sensitivity", "--k-grid", grid]);
        assert_eq!(code(&out), 2, "grid {grid} must be rejected");
    }
}

#[test]
fn off_grid_reference_is_a_data_error() {
    let out = run_on_metrics(&["sensitivity", "--reference", "0.33"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("rank shift"));
}

#[test]
fn ranking_without_out_goes_to_stdout_only() {
    let out = run_on_metrics(&["rank"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("alternative,sdr_plus,sdr_minus,a,b,q,rank,note"));
    let report = stdout(&out);
    assert!(report.lines().nth(1).unwrap().starts_with("Qatar Airways,"));
    assert!(stderr(&out).is_empty(), "clean runs must not write to stderr");
}

#[test]
fn rank_out_writes_metrics_and_ranking() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_on_metrics(&["rank", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let metrics = std::fs::read_to_string(dir.path().join("metrics.csv")).unwrap();
    assert!(metrics.starts_with("alternative,S+:cost,S-:benefit,D+:cost"));
    let ranking = std::fs::read_to_string(dir.path().join("ranking.csv")).unwrap();
    assert!(ranking.lines().last().unwrap().starts_with("Turkish Airlines,"));
    for file in ["metrics.csv", "ranking.csv"] {
        assert!(stderr(&out).contains(&format!("wrote {}", dir.path().join(file).display())));
    }
}

#[test]
fn weights_refuses_metric_tables_unless_forced() {
    let refused = run_on_metrics(&["weights"]);
    assert_eq!(code(&refused), 2);
    assert!(stderr(&refused).contains("--from raw"));
    let forced = run_on_metrics(&["weights", "--from", "raw"]);
    assert_eq!(code(&forced), 0);
    assert!(stdout(&forced).contains("S+"));
}

#[test]
fn weights_reports_both_formats() {
    let input = data("scores.csv");
    let text = mcdm(&["weights", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&text), 0);
    assert!(stdout(&text).lines().next().unwrap().starts_with("criterion"));
    assert!(stdout(&text).contains('%'));
    let csv = mcdm(&["weights", "--input", input.to_str().unwrap(), "--format", "csv"]);
    assert!(stdout(&csv).starts_with("criterion,weight,percent\n"));
    let weight_sum: f64 = stdout(&csv)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((weight_sum - 1.0).abs() <= 1e-5);
}

#[test]
fn near_unit_weight_files_are_renormalized_with_a_note() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("weights.csv");
    let rows: String = (1..=15).map(|j| format!("C{j},{}\n", 0.999 / 15.0)).collect();
    std::fs::write(&path, rows).unwrap();
    let input = data("scores.csv");
    let out = mcdm(&[
        "rank",
        "--input",
        input.to_str().unwrap(),
        "--weights",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stderr(&out).contains("renormalizing"));
}

#[test]
fn far_from_unit_weight_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("weights.csv");
    let rows: String = (1..=15).map(|j| format!("C{j},{}\n", 0.5 / 15.0)).collect();
    std::fs::write(&path, rows).unwrap();
    let input = data("scores.csv");
    let out = mcdm(&[
        "rank",
        "--input",
        input.to_str().unwrap(),
        "--weights",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("away from 1"));
}

#[test]
fn aism_prints_dot_to_stdout_by_default() {
    let out = run_on_metrics(&["aism", "--mode", "up"]);
    assert_eq!(code(&out), 0);
    let dot = stdout(&out);
    assert!(dot.starts_with("digraph {"));
    assert!(dot.contains("rank=same"));
    assert!(dot.contains("Qatar Airways"));
    assert!(stderr(&out).is_empty());
}

#[test]
fn aism_both_mode_writes_suffixed_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("airline.dot");
    let out = run_on_metrics(&["aism", "--dot", dot.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let up = std::fs::read_to_string(dir.path().join("airline.up.dot")).unwrap();
    let down = std::fs::read_to_string(dir.path().join("airline.down.dot")).unwrap();
    assert!(up.starts_with("digraph {") && down.starts_with("digraph {"));
    assert_ne!(up, down, "adversarial layouts must differ");
    assert!(!dot.exists(), "unsuffixed file must not be written in both mode");
}

#[test]
fn aism_matrix_dump_matches_the_reference_adjacency() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_on_metrics(&["aism", "--matrices", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let a = std::fs::read_to_string(dir.path().join("A.csv")).unwrap();
    assert_eq!(
        a,
        "0,0,0,0,0,0,0,0,0,0\n\
         0,0,0,0,0,0,0,1,0,0\n\
         0,0,0,0,0,0,0,1,0,0\n\
         0,0,0,0,0,0,0,1,0,0\n\
         0,0,0,0,0,1,0,1,0,0\n\
         0,0,0,0,0,0,0,0,0,0\n\
         1,1,0,1,0,1,0,1,0,0\n\
         0,0,0,0,0,0,0,0,0,0\n\
         1,1,0,1,0,1,0,1,0,0\n\
         1,0,0,1,0,1,0,1,0,0\n"
    );
    for file in ["A.csv", "B.csv", "R.csv", "S.csv"] {
        assert!(dir.path().join(file).exists(), "{file} missing");
    }
}

#[test]
fn aggregated_questionnaires_match_the_averaged_sheet() {
    let scores = data("scores.csv");
    let single = mcdm(&["rank", "--input", scores.to_str().unwrap()]);
    assert_eq!(code(&single), 0);
    let sheets: Vec<PathBuf> =
        (1..=4).map(|e| data(&format!("questionnaires/expert-{e:02}.csv"))).collect();
    let mut args = vec!["rank"];
    for sheet in &sheets {
        args.push("--input");
        args.push(sheet.to_str().unwrap());
    }
    let aggregated = mcdm(&args);
    assert_eq!(code(&aggregated), 0);
    assert_eq!(stdout(&single), stdout(&aggregated));
}

#[test]
fn sensitivity_reports_the_shift_summary_on_stderr() {
    let out = run_on_metrics(&["sensitivity"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("k,alternative,q,rank"));
    assert_eq!(stdout(&out).lines().count(), 1 + 21 * 10);
    assert!(stderr(&out).contains("max rank shift relative to k=0.500000: 1"));
}

#[test]
fn pipeline_writes_the_full_artifact_tree() {
    let dir = tempfile::tempdir().unwrap();
    let input = data("scores.csv");
    let out = mcdm(&[
        "pipeline",
        "--input",
        input.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let mut expected = vec![
        "weights.csv".to_string(),
        "metrics.csv".into(),
        "ranking.csv".into(),
        "sweep.csv".into(),
    ];
    for profile in ["sixmetric", "sdr", "q"] {
        for file in ["A.csv", "B.csv", "R.csv", "S.csv", "up.dot", "down.dot"] {
            expected.push(format!("aism/{profile}/{file}"));
        }
    }
    for rel in expected {
        assert!(dir.path().join(&rel).exists(), "pipeline must write {rel}");
    }
}

#[test]
fn pipeline_on_metric_input_skips_the_weight_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_on_metrics(&["pipeline", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(!dir.path().join("weights.csv").exists());
    assert!(dir.path().join("ranking.csv").exists());
}
