//! Command-line front end. Every subcommand resolves a [`RunConfig`],
//! runs one analysis and writes one report (plus a grid file for
//! `contour`).
//!
//! Exit status: 0 on success, 2 for usage, domain and input-schema errors,
//! 3 for I/O failures.

pub mod config;
pub mod repro;
pub mod report;
pub mod table;

use std::collections::HashMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

pub use config::{parse_config, Parsed, RunConfig, Subcommand, SEED_ENV};
pub use report::{format_number, Report, Value};
pub use table::{load_table, Records, Schema};

use crate::development::{bin_change, sds_threshold_confidence, BinScheme, SdsSample};
use crate::error::{Error, Result};
use crate::montecarlo::{predictive_confidence, RngStream};
use crate::posteriors::{near_zero_prior, ArmCounts, BetaParams, EvalMethod, NearZeroPriorSpec};
use crate::precision::{
    confidence, confidence_curve, contour_grid, min_fold, solve_sample_size, win_odds, Bootstrap,
    ConfidenceResult, ConsistencyQuery, ContourGrid, ContourQuantity, CountMode, CurvePoint,
    DesignScenario, Direction, Hypothesis, ReferenceEstimate, ReferenceKind, SolveOptions,
    WinOddsTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_IO: i32 = 3;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_DOMAIN,
    }
}

/// Files produced by one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub report: Report,
    /// Rendered report text, as written.
    pub text: String,
    pub grid_file: Option<PathBuf>,
}

/// Parse `argv`, run, and map the outcome to an exit status. Diagnostics go
/// to stderr.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match parse_config(argv) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("pedsafe: {e}");
            return exit_code(&e);
        }
    };
    match parsed {
        Parsed::Info(text) => {
            print!("{text}");
            EXIT_OK
        }
        Parsed::Run(cfg) => match run(&cfg) {
            Ok(_) => EXIT_OK,
            Err(e) => {
                eprintln!("pedsafe: {e}");
                exit_code(&e)
            }
        },
    }
}

/// Run a resolved configuration and write its outputs.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    let mut grid_file = None;
    let report = match cfg.subcommand {
        Subcommand::Confidence => run_confidence(cfg)?,
        Subcommand::SolveN => run_solve(cfg)?,
        Subcommand::MinFold => run_min_fold(cfg)?,
        Subcommand::Contour => {
            let (report, grid, path) = run_contour(cfg)?;
            report::write_text(Some(&path), &grid_to_csv(&grid)?)?;
            grid_file = Some(path);
            report
        }
        Subcommand::Sds => run_sds(cfg)?,
        Subcommand::WinOdds => run_win_odds(cfg)?,
    };
    let text = report.render(cfg.json)?;
    report::write_text(cfg.output(), &text)?;
    Ok(RunOutput { report, text, grid_file })
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

/// `events/n`.
pub fn parse_counts(key: &str, text: &str) -> Result<(u64, u64)> {
    let (r, n) = text
        .split_once('/')
        .ok_or_else(|| usage(format!("key '{key}': counts are written events/n, got {text:?}")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| usage(format!("key '{key}': bad count {s:?}")))
    };
    let (r, n) = (parse(r)?, parse(n)?);
    if r > n {
        return Err(usage(format!("key '{key}': events {r} exceed n {n}")));
    }
    Ok((r, n))
}

/// `a,b` or `near-zero:<p_a^2>`.
pub fn parse_prior(key: &str, text: &str) -> Result<BetaParams> {
    let text = text.trim();
    if let Some(p) = text.strip_prefix("near-zero:") {
        let p_a_sq = p
            .trim()
            .parse()
            .map_err(|_| usage(format!("key '{key}': bad near-zero weight {p:?}")))?;
        return near_zero_prior(NearZeroPriorSpec { p_a_sq });
    }
    if text == "uniform" {
        return Ok(BetaParams::uniform());
    }
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| usage(format!("key '{key}': prior is 'a,b' or 'near-zero:<p>', got {text:?}")))?;
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| usage(format!("key '{key}': bad shape {s:?}")))
    };
    BetaParams::new(num(a)?, num(b)?)
}

/// `lo:hi[:step]` (inclusive) or a single value.
pub fn parse_range(key: &str, text: &str) -> Result<Vec<u64>> {
    let bad = || usage(format!("key '{key}': expected lo:hi[:step] or a number, got {text:?}"));
    let parts: Vec<u64> = text
        .split(':')
        .map(|p| p.trim().parse::<u64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let (lo, hi, step) = match parts.as_slice() {
        [v] => (*v, *v, 1),
        [lo, hi] => (*lo, *hi, 1),
        [lo, hi, step] => (*lo, *hi, *step),
        _ => return Err(bad()),
    };
    if step == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).step_by(step as usize).collect())
}

fn method(cfg: &RunConfig) -> Result<EvalMethod> {
    let m = match cfg.require("method")? {
        "convolution" => EvalMethod::Convolution {
            grid_points: cfg.parse_required("grid-points")?,
        },
        "closed-form" => EvalMethod::ClosedForm,
        "monte-carlo" => EvalMethod::MonteCarlo {
            samples: cfg.parse_required("mc-samples")?,
            seed: cfg.seed()?,
        },
        "normal" => EvalMethod::NormalApprox,
        other => return Err(usage(format!("key 'method': unknown method {other:?}"))),
    };
    m.validate()?;
    Ok(m)
}

fn query(cfg: &RunConfig, method: EvalMethod) -> Result<ConsistencyQuery> {
    let reference = match (cfg.parse::<f64>("ref-diff")?, cfg.parse::<f64>("ref-rate")?) {
        (Some(_), Some(_)) => return Err(usage("give either 'ref-diff' or 'ref-rate', not both")),
        (Some(d), None) => ReferenceEstimate::difference(d)?,
        (None, Some(p)) => ReferenceEstimate::proportion(p)?,
        (None, None) => return Err(usage("missing required key 'ref-diff' (two-arm) or 'ref-rate' (single-arm)")),
    };
    let reference = match cfg.get("label") {
        Some(l) => reference.labelled(l),
        None => reference,
    };
    let hypothesis = match cfg.require("mode")? {
        "margin" => Hypothesis::Margin(cfg.parse_required("margin")?),
        "fold" => Hypothesis::Fold(cfg.parse_required("fold")?),
        other => return Err(usage(format!("key 'mode': expected margin or fold, got {other:?}"))),
    };
    let q = ConsistencyQuery { hypothesis, reference, method };
    q.validate()?;
    Ok(q)
}

fn priors(cfg: &RunConfig) -> Result<(BetaParams, BetaParams)> {
    Ok((
        parse_prior("prior-treat", cfg.require("prior-treat")?)?,
        parse_prior("prior-control", cfg.require("prior-control")?)?,
    ))
}

/// Runs `f` with the query's method; a closed-form series failure is retried
/// on the default convolution route and noted.
fn with_fallback<T>(
    query: &mut ConsistencyQuery,
    mut f: impl FnMut(&ConsistencyQuery) -> Result<T>,
) -> Result<(T, String)> {
    match f(query) {
        Err(e) if query.method == EvalMethod::ClosedForm && e.is_series_failure() => {
            query.method = EvalMethod::default();
            let v = f(query)?;
            Ok((v, format!("closed-form series failed ({e}); fell back to convolution")))
        }
        other => other.map(|v| (v, String::new())),
    }
}

fn scenario(cfg: &RunConfig, query: ConsistencyQuery, target: f64) -> Result<DesignScenario> {
    let single = query.reference.kind == ReferenceKind::Proportion;
    let (prior_treat, prior_control) = priors(cfg)?;
    let control_rate = if single {
        0.0
    } else {
        cfg.parse_required("control-rate")?
    };
    let s = DesignScenario {
        control_rate,
        treat_rate: cfg.parse_required("treat-rate")?,
        allocation: cfg.parse_required("allocation")?,
        prior_treat,
        prior_control,
        target,
        query,
        count_mode: CountMode::PlugIn,
    };
    s.validate()?;
    Ok(s)
}

fn push_result(report: &mut Report, c: &ConfidenceResult, note: &str) {
    report
        .field("threshold", c.threshold)
        .field("confidence", c.confidence)
        .field("computed_by", c.method.to_string())
        .field("error_estimate", c.error_estimate)
        .field("note", note);
}

fn run_confidence(cfg: &RunConfig) -> Result<Report> {
    let mut q = query(cfg, method(cfg)?)?;
    let single = q.reference.kind == ReferenceKind::Proportion;
    let mut report = Report::new(cfg);

    if let Some(ns) = cfg.get("n") {
        if cfg.has("treat") || cfg.has("control") {
            return Err(usage("observed counts ('treat', 'control') and a curve range ('n') are exclusive"));
        }
        let totals = parse_range("n", ns)?;
        let base = scenario(cfg, q.clone(), 0.0)?;
        let (points, note) = with_fallback(&mut q, |q| {
            let mut s = base.clone();
            s.query = q.clone();
            confidence_curve(&s, &totals)
        })?;
        report
            .field("threshold", q.threshold())
            .field("computed_by", q.method.name())
            .field("note", note);
        report.table = Some(curve_table(&points));
        return Ok(report);
    }

    let (r_t, n_t) = parse_counts("treat", cfg.require("treat")?)?;
    let treat = ArmCounts::treatment(r_t, n_t)?;
    let control = if single {
        None
    } else {
        let (r_c, n_c) = parse_counts("control", cfg.require("control")?)?;
        Some(ArmCounts::control(r_c, n_c)?)
    };
    let pri = priors(cfg)?;
    let (c, note) = with_fallback(&mut q, |q| confidence(q, treat, control, pri))?;
    push_result(&mut report, &c, &note);
    Ok(report)
}

fn curve_table(points: &[CurvePoint]) -> (Vec<String>, Vec<Vec<Value>>) {
    let cols = ["n_total", "n_treat", "n_control", "r_treat", "r_control", "confidence"];
    let rows = points
        .iter()
        .map(|p| {
            vec![
                p.n_total.into(),
                p.n_treat.into(),
                p.n_control.into(),
                p.r_treat.into(),
                p.r_control.into(),
                p.confidence.into(),
            ]
        })
        .collect();
    (cols.iter().map(|c| c.to_string()).collect(), rows)
}

fn run_solve(cfg: &RunConfig) -> Result<Report> {
    let mut q = query(cfg, method(cfg)?)?;
    let target: f64 = cfg.parse_required("target")?;
    let base = scenario(cfg, q.clone(), target)?;
    let opts = SolveOptions {
        cap: cfg.parse_required("cap")?,
    };
    let (sol, note) = with_fallback(&mut q, |q| {
        let mut s = base.clone();
        s.query = q.clone();
        solve_sample_size(&s, opts)
    })?;
    let mut report = Report::new(cfg);
    report
        .field("threshold", q.threshold())
        .field("n_total", sol.n_total)
        .field("n_treat", sol.n_treat)
        .field("n_control", sol.n_control)
        .field("r_treat", sol.r_treat)
        .field("r_control", sol.r_control)
        .field("achieved", sol.achieved)
        .field("evaluations", sol.evaluations)
        .field("computed_by", q.method.name())
        .field("note", note);

    let trials: usize = cfg.parse_required("assurance-trials")?;
    if trials > 0 {
        let mut s = base;
        s.query = q;
        s.count_mode = CountMode::Predictive;
        let est = predictive_confidence(&s, sol.n_total, &RngStream::new(cfg.seed()?, 0), trials)?;
        report
            .field("assurance", est.p)
            .field("assurance_se", est.se)
            .field("assurance_trials", est.count);
    }
    Ok(report)
}

fn run_min_fold(cfg: &RunConfig) -> Result<Report> {
    let reference = ReferenceEstimate::proportion(cfg.parse_required("ref-rate")?)?;
    let target: f64 = cfg.parse_required("target")?;
    let prior = parse_prior("prior", cfg.require("prior")?)?;
    let events = parse_range("events", cfg.require("events")?)?;
    let ns = parse_range("n", cfg.require("n")?)?;
    let mut report = Report::new(cfg);

    if events.len() == 1 && ns.len() == 1 {
        let data = ArmCounts::treatment(events[0], ns[0])?;
        let f = min_fold(data, prior, &reference, target)?;
        let c = crate::precision::confidence_fold_single_arm(data, prior, &reference, f)?;
        report
            .field("min_fold", f)
            .field("confidence_at_min_fold", c.confidence)
            .field("computed_by", c.method.to_string());
        return Ok(report);
    }

    let mut rows = Vec::new();
    for &n in &ns {
        for &r in &events {
            if r > n {
                continue;
            }
            let data = ArmCounts::treatment(r, n)?;
            let f = match min_fold(data, prior, &reference, target) {
                Ok(f) => f,
                Err(Error::Unsatisfiable(_)) => f64::NAN,
                Err(e) => return Err(e),
            };
            rows.push(vec![Value::from(n), Value::from(r), Value::from(f)]);
        }
    }
    report.field("computed_by", "exact");
    report.table = Some((vec!["n".into(), "events".into(), "min_fold".into()], rows));
    Ok(report)
}

fn contour_quantity(cfg: &RunConfig) -> Result<ContourQuantity> {
    let prior = || parse_prior("prior", cfg.require("prior")?);
    Ok(match cfg.require("quantity")? {
        "at-least-r" => ContourQuantity::AtLeastR {
            true_rate: cfg.parse_required("rate")?,
        },
        "confidence" => ContourQuantity::Confidence {
            prior: prior()?,
            reference_rate: cfg.parse_required("ref-rate")?,
            fold: cfg.parse_required("fold")?,
        },
        "min-fold" => ContourQuantity::MinFold {
            prior: prior()?,
            reference_rate: cfg.parse_required("ref-rate")?,
            target: cfg.parse_required("target")?,
        },
        other => return Err(usage(format!("key 'quantity': unknown quantity {other:?}"))),
    })
}

fn run_contour(cfg: &RunConfig) -> Result<(Report, ContourGrid, PathBuf)> {
    let quantity = contour_quantity(cfg)?;
    let ns = parse_range("n", cfg.require("n")?)?;
    let rs = parse_range("r", cfg.require("r")?)?;
    let grid = contour_grid(&ns, &rs, quantity)?;
    let path = PathBuf::from(cfg.require("grid-output")?);
    let mut report = Report::new(cfg);
    report
        .field("cells", grid.values.len())
        .field("grid_file", path.display().to_string());
    Ok((report, grid, path))
}

/// Grid file: one row per (n, r) cell.
pub fn grid_to_csv(grid: &ContourGrid) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let err = |e: csv::Error| usage(format!("grid encoding failed: {e}"));
    w.write_record(["n", "r", grid.quantity.name()]).map_err(err)?;
    for (n, r, v) in grid.cells() {
        w.write_record([n.to_string(), r.to_string(), format_number(v)]).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| usage(format!("grid encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("ASCII output"))
}

/// Read a grid file written by [`grid_to_csv`] back into axes and values.
pub fn read_grid(path: &Path) -> Result<(Vec<u64>, Vec<u64>, Vec<f64>)> {
    let io = |source| Error::Io {
        path: path.display().to_string(),
        source,
    };
    let text = std::fs::read_to_string(path).map_err(io)?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let (mut ns, mut rs, mut values) = (Vec::new(), Vec::new(), Vec::new());
    for (i, rec) in reader.records().enumerate() {
        let row = i + 2;
        let schema = |column: &str, message: String| Error::Schema {
            path: path.display().to_string(),
            row,
            column: column.into(),
            message,
        };
        let rec = rec.map_err(|e| schema("", e.to_string()))?;
        let n: u64 = rec[0].parse().map_err(|_| schema("n", "not an integer".into()))?;
        let r: u64 = rec[1].parse().map_err(|_| schema("r", "not an integer".into()))?;
        let v: f64 = rec[2].parse().map_err(|_| schema("value", "not a number".into()))?;
        if !ns.contains(&n) {
            ns.push(n);
        }
        if !rs.contains(&r) {
            rs.push(r);
        }
        values.push(v);
    }
    Ok((ns, rs, values))
}

/// Per-subject changes in SDS from an SDS table.
///
/// With `levels` input each subject contributes follow-up minus baseline,
/// where baseline and follow-up are the rows with the given time labels (the
/// subject's first and last rows when no label is given). With `deltas`
/// input each row already holds a change; a follow-up label, if given,
/// selects the rows used. `auto` reads the table as deltas when every subject
/// has exactly one row and as levels otherwise. Either way each subject
/// contributes exactly once.
fn sds_changes(cfg: &RunConfig, path: &Path) -> Result<Vec<f64>> {
    let rows = table::load_sds(path)?;
    let schema = |row: usize, column: &str, message: String| Error::Schema {
        path: path.display().to_string(),
        row,
        column: column.into(),
        message,
    };
    let mut order: Vec<&str> = Vec::new();
    let mut by_subject: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, r) in rows.iter().enumerate() {
        by_subject
            .entry(r.subject_id.as_str())
            .or_insert_with(|| {
                order.push(r.subject_id.as_str());
                Vec::new()
            })
            .push(i);
    }
    let baseline_label = cfg.get("baseline-label");
    let followup_label = cfg.get("followup-label");
    let pick = |idx: &[usize], label: Option<&str>, first: bool, what: &str| -> Result<Option<usize>> {
        match label {
            None => Ok(Some(if first { idx[0] } else { idx[idx.len() - 1] })),
            Some(l) => {
                let hits: Vec<usize> = idx.iter().copied().filter(|&i| rows[i].time_label == l).collect();
                match hits.as_slice() {
                    [] => Ok(None),
                    [one] => Ok(Some(*one)),
                    [_, second, ..] => Err(schema(
                        second + 2,
                        "time_label",
                        format!("subject {} has more than one {what} row labelled {l:?}", rows[*second].subject_id),
                    )),
                }
            }
        }
    };

    let mut deltas = Vec::new();
    let kind = match cfg.require("input-kind")? {
        "auto" if by_subject.values().all(|idx| idx.len() == 1) => "deltas",
        "auto" => "levels",
        k => k,
    };
    match kind {
        "deltas" => {
            for s in &order {
                let idx = &by_subject[s];
                if followup_label.is_none() && idx.len() > 1 {
                    return Err(schema(
                        idx[1] + 2,
                        "subject_id",
                        format!("subject {s} has several change rows; pass followup-label to pick one"),
                    ));
                }
                if let Some(i) = pick(idx, followup_label, false, "follow-up")? {
                    deltas.push(rows[i].sds_value);
                }
            }
        }
        "levels" => {
            for s in &order {
                let idx = &by_subject[s];
                let base = pick(idx, baseline_label, true, "baseline")?;
                let follow = pick(idx, followup_label, false, "follow-up")?;
                match (base, follow) {
                    (Some(b), Some(f)) if b != f => {
                        deltas.push(crate::development::sds_change(rows[b].sds_value, rows[f].sds_value))
                    }
                    (Some(b), Some(_)) => {
                        return Err(schema(b + 2, "time_label", format!("subject {s} has a single visit")))
                    }
                    _ => {}
                }
            }
        }
        other => return Err(usage(format!("key 'input-kind': expected levels, deltas or auto, got {other:?}"))),
    }
    Ok(deltas)
}

fn run_sds(cfg: &RunConfig) -> Result<Report> {
    let path = PathBuf::from(cfg.require("input")?);
    let tau: f64 = cfg.parse_required("tau")?;
    let deltas = sds_changes(cfg, &path)?;
    let scheme = BinScheme::default();
    let mut groups = vec![0u64; scheme.change_bins()];
    for &d in &deltas {
        groups[bin_change(d, &scheme)] += 1;
    }
    let sample = SdsSample::from_values(deltas)?;
    let c = sds_threshold_confidence(&sample, tau)?;
    let mut report = Report::new(cfg);
    report
        .field("n", sample.n())
        .field("mean_change", sample.mean())
        .field("s_sq", sample.s_sq())
        .field("df", (sample.n() - 1) as u64)
        .field("t_statistic", (sample.mean() + tau) / sample.scale());
    push_result(&mut report, &c, "");
    let edges: Vec<String> = scheme.change_edges().iter().map(|&e| format_number(e)).collect();
    report.field("change_group_edges", edges.join(";"));
    for (j, count) in groups.into_iter().enumerate() {
        report.field(&format!("change_group_{}", j + 1), count);
    }
    Ok(report)
}

fn run_win_odds(cfg: &RunConfig) -> Result<Report> {
    let path = PathBuf::from(cfg.require("input")?);
    let (names, rows) = table::load_outcomes(&path)?;
    let directions: Vec<Direction> = cfg
        .require("directions")?
        .split(',')
        .map(str::parse)
        .collect::<Result<_>>()?;
    if directions.len() != names.len() {
        return Err(usage(format!(
            "key 'directions': {} given for {} components ({})",
            directions.len(),
            names.len(),
            names.join(",")
        )));
    }
    let test_arm = cfg.require("test-arm")?;
    let control_arm = cfg.require("control-arm")?;
    let (mut test, mut control) = (Vec::new(), Vec::new());
    for (i, r) in rows.into_iter().enumerate() {
        if r.arm == test_arm {
            test.push(r.components);
        } else if r.arm == control_arm {
            control.push(r.components);
        } else {
            return Err(Error::Schema {
                path: path.display().to_string(),
                row: i + 2,
                column: "arm".into(),
                message: format!("arm {:?} is neither {test_arm:?} nor {control_arm:?}", r.arm),
            });
        }
    }
    let (n_test, n_control) = (test.len(), control.len());
    let table = WinOddsTable::new(test, control, directions)?;
    let bootstrap = Bootstrap {
        replicates: cfg.parse_required("replicates")?,
        seed: cfg.seed()?,
    };
    let r = win_odds(&table, cfg.parse_required("margin")?, bootstrap)?;
    let mut report = Report::new(cfg);
    report
        .field("n_test", n_test)
        .field("n_control", n_control)
        .field("wins", r.wins)
        .field("losses", r.losses)
        .field("ties", r.ties)
        .field("psi_hat", r.psi_hat)
        .field("ci_low", r.ci_low)
        .field("ci_high", r.ci_high)
        .field("reject", r.reject);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_ranges() {
        assert_eq!(parse_counts("treat", "4/100").unwrap(), (4, 100));
        assert!(parse_counts("treat", "5/4").is_err());
        assert!(parse_counts("treat", "0.04").is_err());
        assert_eq!(parse_range("n", "10:30:10").unwrap(), vec![10, 20, 30]);
        assert_eq!(parse_range("n", "7").unwrap(), vec![7]);
        assert!(parse_range("n", "5:1").is_err());
        assert!(parse_range("n", "1:5:0").is_err());
    }

    #[test]
    fn priors_parse() {
        assert_eq!(parse_prior("p", "1,1").unwrap(), BetaParams::uniform());
        let nz = parse_prior("p", "near-zero:0.01").unwrap();
        assert!((nz.a() - 0.01 / 0.99).abs() < 1e-15);
        assert!(parse_prior("p", "0,1").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Usage("x".into())), 2);
        let io = Error::Io {
            path: "p".into(),
            source: std::io::Error::from(std::io::ErrorKind::NotFound),
        };
        assert_eq!(exit_code(&io), 3);
    }
}
