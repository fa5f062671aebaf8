use std::path::Path;
use std::process::{Command, Output};

use pedsafe::cli::read_grid;

fn pedsafe(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pedsafe"))
        .args(args)
        .current_dir(dir)
        .env_remove("PEDSAFE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Parse a one-row CSV report into (column, value) pairs.
fn row(text: &str) -> Vec<(String, String)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers().unwrap().iter().map(str::to_string).collect();
    let rec = r.records().next().unwrap().unwrap();
    header.into_iter().zip(rec.iter().map(str::to_string)).collect()
}

fn get<'a>(row: &'a [(String, String)], key: &str) -> &'a str {
    &row.iter().find(|(k, _)| k == key).unwrap_or_else(|| panic!("no column {key}")).1
}

#[test]
fn fold_confidence_from_flags() {
    let dir = tempfile::tempdir().unwrap();
    let o = pedsafe(
        dir.path(),
        &["confidence", "--mode", "fold", "--treat", "4/100", "--control", "1/100", "--ref-diff", "0.03", "--fold", "2"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = row(&stdout(&o));
    assert_eq!(get(&r, "tool"), "pedsafe");
    assert_eq!(get(&r, "subcommand"), "confidence");
    assert_eq!(get(&r, "fold"), "2");
    assert_eq!(get(&r, "threshold"), "0.06");
    let c: f64 = get(&r, "confidence").parse().unwrap();
    assert!((0.0..=1.0).contains(&c));
}

#[test]
fn missing_fold_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = pedsafe(dir.path(), &["confidence", "--mode", "fold", "--treat", "4/100", "--control", "1/100", "--ref-diff", "0.03"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("fold"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = pedsafe(dir.path(), &["min-fold", "--bogus", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn flag_overrides_config_file_and_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.toml"), "ref_rate = 0.01\ntarget = 0.95\nevents = 0\nn = 150\n").unwrap();
    let o = pedsafe(dir.path(), &["min-fold", "--config", "run.toml", "--target", "0.8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = row(&stdout(&o));
    assert_eq!(get(&r, "target"), "0.8");
    assert_eq!(get(&r, "ref-rate"), "0.01");
}

#[test]
fn min_fold_zero_events() {
    let dir = tempfile::tempdir().unwrap();
    let o = pedsafe(dir.path(), &["min-fold", "--events", "0", "--n", "150", "--ref-rate", "0.01", "--target", "0.80"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = row(&stdout(&o));
    let f: f64 = get(&r, "min_fold").parse().unwrap();
    // Beta(1, 151): P(theta < 0.01 f) = 1 - (1 - 0.01 f)^151 = 0.8
    let root = (1.0 - 0.2f64.powf(1.0 / 151.0)) / 0.01;
    assert!((f - root).abs() < 1e-4, "{f} vs {root}");
    assert!((f - 1.06).abs() < 0.01);
}

#[test]
fn contour_grid_cell_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let o = pedsafe(
        dir.path(),
        &["contour", "--rate", "0.01", "--n", "10:300:10", "--r", "0:5", "--quantity", "at-least-r", "--output", "report.csv"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let grid_path = dir.path().join("contour_grid.csv");
    let (ns, rs, values) = read_grid(&grid_path).unwrap();
    assert_eq!(ns.len(), 30);
    assert_eq!(rs, vec![0, 1, 2, 3, 4, 5]);
    let i = ns.iter().position(|&n| n == 300).unwrap();
    let v = values[i * rs.len() + 1];
    assert!((v - (1.0 - 0.99f64.powi(300))).abs() < 1e-12);
    assert_eq!(format!("{v:.4}"), "0.9510");

    let grid = pedsafe::precision::contour_grid(
        &ns,
        &rs,
        pedsafe::precision::ContourQuantity::AtLeastR { true_rate: 0.01 },
    )
    .unwrap();
    assert_eq!(grid.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), values.iter().map(|v| v.to_bits()).collect::<Vec<_>>());

    let r = row(&std::fs::read_to_string(dir.path().join("report.csv")).unwrap());
    assert_eq!(get(&r, "cells"), "180");
}

#[test]
fn sds_deltas_centred_on_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("subject_id,time_label,sds_value\n");
    for (i, v) in [-0.9, -0.1, -0.7, -0.3, -0.5, 0.2, -1.2].iter().enumerate() {
        text.push_str(&format!("{i},12,{v}\n"));
    }
    std::fs::write(dir.path().join("deltas.csv"), text).unwrap();
    let o = pedsafe(dir.path(), &["sds", "--input", "deltas.csv", "--tau", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = row(&stdout(&o));
    let c: f64 = get(&r, "confidence").parse().unwrap();
    assert!((c - 0.5).abs() < 1e-12, "{c}");
    assert_eq!(get(&r, "n"), "7");
}

#[test]
fn sds_levels_pair_first_and_last_visit() {
    let dir = tempfile::tempdir().unwrap();
    let text = "subject_id,time_label,sds_value\na,0,0.5\na,12,0.1\nb,0,-0.2\nb,12,-0.2\nc,0,1.0\nc,12,0.4\n";
    std::fs::write(dir.path().join("levels.csv"), text).unwrap();
    let o = pedsafe(dir.path(), &["sds", "--input", "levels.csv", "--tau", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = row(&stdout(&o));
    let mean: f64 = get(&r, "mean_change").parse().unwrap();
    assert!((mean - (-1.0 / 3.0)).abs() < 1e-12);
}

#[test]
fn schema_error_names_row_and_column() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.csv"), "subject_id,time_label,sds_value\n1,12,0.1\n2,12,oops\n").unwrap();
    let o = pedsafe(dir.path(), &["sds", "--input", "bad.csv", "--tau", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("row 3") && e.contains("sds_value"), "{e}");
}

#[test]
fn ragged_win_odds_file_names_the_row() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("w.csv"), "subject_id,arm,death,days\n1,test,0,3\n2,control,1\n").unwrap();
    let o = pedsafe(dir.path(), &["win-odds", "--input", "w.csv", "--directions", "smaller,larger"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("row 3"), "{}", stderr(&o));
}

#[test]
fn missing_input_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = pedsafe(dir.path(), &["sds", "--input", "absent.csv", "--tau", "0.5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("absent.csv"));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = pedsafe(
        dir.path(),
        &["min-fold", "--events", "0", "--n", "150", "--ref-rate", "0.01", "--target", "0.8", "--output", "no/such/dir/out.csv"],
    );
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn domain_error_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = pedsafe(dir.path(), &["min-fold", "--events", "0", "--n", "150", "--ref-rate", "1.5", "--target", "0.8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = pedsafe(dir.path(), &["min-fold", "--events", "0", "--n", "150", "--ref-rate", "0.01", "--target", "0.8", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["subcommand"], "min-fold");
    assert_eq!(doc["config"]["n"], "150");
    assert!(doc["version"].is_string());
    assert!(doc["result"]["min_fold"].as_f64().unwrap() > 1.0);
}

#[test]
fn win_odds_seeded_run_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("subject_id,arm,death,score\n");
    for i in 0..12 {
        let arm = if i % 2 == 0 { "test" } else { "control" };
        text.push_str(&format!("{i},{arm},{},{}\n", i % 3 == 0, (i * 7) % 5).replace("true", "1").replace("false", "0"));
    }
    std::fs::write(dir.path().join("w.csv"), text).unwrap();
    let args = ["win-odds", "--input", "w.csv", "--directions", "smaller,larger", "--seed", "17", "--replicates", "500"];
    let a = pedsafe(dir.path(), &args);
    let b = pedsafe(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let r = row(&stdout(&a));
    assert_eq!(get(&r, "seed"), "17");
}

#[test]
fn help_exits_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let o = pedsafe(dir.path(), &["--help"]);
    assert_eq!(o.status.code(), Some(0));
    for sub in ["confidence", "solve-n", "min-fold", "contour", "sds", "win-odds"] {
        assert!(stdout(&o).contains(sub), "{sub}");
    }
}
