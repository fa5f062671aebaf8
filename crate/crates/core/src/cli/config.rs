//! Command-line and config-file resolution into a flat key/value map.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::parser::ValueSource;
use clap::{Arg, ArgAction, ArgMatches, Command};

use crate::error::{Error, Result};

/// Environment variable consulted for a seed when neither flag nor config
/// file supplies one.
pub const SEED_ENV: &str = "PEDSAFE_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subcommand {
    Confidence,
    SolveN,
    MinFold,
    Contour,
    Sds,
    WinOdds,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::Confidence,
        Subcommand::SolveN,
        Subcommand::MinFold,
        Subcommand::Contour,
        Subcommand::Sds,
        Subcommand::WinOdds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Confidence => "confidence",
            Subcommand::SolveN => "solve-n",
            Subcommand::MinFold => "min-fold",
            Subcommand::Contour => "contour",
            Subcommand::Sds => "sds",
            Subcommand::WinOdds => "win-odds",
        }
    }

    fn about(self) -> &'static str {
        match self {
            Subcommand::Confidence => "Consistency confidence from observed counts, or a confidence curve over n",
            Subcommand::SolveN => "Smallest total sample size reaching a target confidence",
            Subcommand::MinFold => "Minimum fold ruled out at a probability threshold (single arm)",
            Subcommand::Contour => "Dense (n, r) grid of single-arm probabilities for contour plots",
            Subcommand::Sds => "Posterior confidence that the mean change in SDS stays above -tau",
            Subcommand::WinOdds => "Win odds with a bootstrap non-inferiority decision",
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Subcommand::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Keys accepted by this subcommand, in report order.
    pub fn keys(self) -> &'static [KeySpec] {
        match self {
            Subcommand::Confidence => CONFIDENCE_KEYS,
            Subcommand::SolveN => SOLVE_KEYS,
            Subcommand::MinFold => MIN_FOLD_KEYS,
            Subcommand::Contour => CONTOUR_KEYS,
            Subcommand::Sds => SDS_KEYS,
            Subcommand::WinOdds => WIN_ODDS_KEYS,
        }
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct KeySpec {
    pub name: &'static str,
    pub help: &'static str,
    pub default: Option<&'static str>,
}

const fn key(name: &'static str, help: &'static str) -> KeySpec {
    KeySpec { name, help, default: None }
}

const fn keyd(name: &'static str, help: &'static str, default: &'static str) -> KeySpec {
    KeySpec { name, help, default: Some(default) }
}

const OUTPUT: KeySpec = key("output", "Report path (stdout when absent)");
const SEED: KeySpec = key("seed", "Random seed (falls back to the PEDSAFE_SEED environment variable)");
const METHOD: KeySpec = keyd("method", "convolution | closed-form | monte-carlo | normal", "convolution");
const GRID_POINTS: KeySpec = keyd("grid-points", "Quadrature nodes per half interval (odd, >= 65)", "4097");
const MC_SAMPLES: KeySpec = keyd("mc-samples", "Monte Carlo draws for the monte-carlo method", "1000000");
const PRIOR_TREAT: KeySpec = keyd("prior-treat", "Treatment prior: 'a,b' or 'near-zero:<p_a^2>'", "1,1");
const PRIOR_CONTROL: KeySpec = keyd("prior-control", "Control prior: 'a,b' or 'near-zero:<p_a^2>'", "1,1");
const MODE: KeySpec = key("mode", "margin | fold");
const REF_DIFF: KeySpec = key("ref-diff", "Reference placebo-corrected difference (two-arm)");
const REF_RATE: KeySpec = key("ref-rate", "Reference incidence proportion (single-arm)");
const MARGIN: KeySpec = key("margin", "Absolute margin epsilon (margin mode)");
const FOLD: KeySpec = key("fold", "Fold f (fold mode)");
const ALLOCATION: KeySpec = keyd("allocation", "Treatment:control allocation ratio", "1:1");

const CONFIDENCE_KEYS: &[KeySpec] = &[
    MODE,
    key("treat", "Observed treatment counts as events/n"),
    key("control", "Observed control counts as events/n"),
    REF_DIFF,
    REF_RATE,
    MARGIN,
    FOLD,
    key("treat-rate", "Assumed treatment rate (curve mode)"),
    key("control-rate", "Assumed control rate (curve mode)"),
    key("n", "Total sample sizes lo:hi[:step] (curve mode)"),
    ALLOCATION,
    PRIOR_TREAT,
    PRIOR_CONTROL,
    METHOD,
    GRID_POINTS,
    MC_SAMPLES,
    key("label", "Adverse-event label echoed in the report"),
    SEED,
    OUTPUT,
];

const SOLVE_KEYS: &[KeySpec] = &[
    MODE,
    key("treat-rate", "Assumed treatment rate"),
    key("control-rate", "Assumed control (background) rate"),
    REF_DIFF,
    REF_RATE,
    MARGIN,
    FOLD,
    keyd("target", "Target confidence", "0.8"),
    ALLOCATION,
    PRIOR_TREAT,
    PRIOR_CONTROL,
    METHOD,
    GRID_POINTS,
    MC_SAMPLES,
    keyd("cap", "Largest total sample size considered", "100000"),
    keyd("assurance-trials", "Simulated trials for assurance at the solution (0 skips)", "0"),
    SEED,
    OUTPUT,
];

const MIN_FOLD_KEYS: &[KeySpec] = &[
    key("events", "Observed events, or a range lo:hi[:step]"),
    key("n", "Patients, or a range lo:hi[:step]"),
    REF_RATE,
    keyd("target", "Probability threshold C", "0.8"),
    keyd("prior", "Prior: 'a,b' or 'near-zero:<p_a^2>'", "1,1"),
    OUTPUT,
];

const CONTOUR_KEYS: &[KeySpec] = &[
    keyd("quantity", "at-least-r | confidence | min-fold", "at-least-r"),
    key("rate", "True event rate (at-least-r)"),
    REF_RATE,
    FOLD,
    keyd("target", "Probability threshold (min-fold)", "0.8"),
    keyd("prior", "Prior: 'a,b' or 'near-zero:<p_a^2>'", "1,1"),
    key("n", "Sample sizes lo:hi[:step]"),
    key("r", "Event counts lo:hi[:step]"),
    keyd("grid-output", "Grid file path", "contour_grid.csv"),
    OUTPUT,
];

const SDS_KEYS: &[KeySpec] = &[
    key("input", "SDS table with columns subject_id,time_label,sds_value"),
    key("tau", "Threshold tau > 0"),
    keyd(
        "input-kind",
        "levels (SDS per visit) | deltas (changes already formed) | auto (deltas when every subject has one row)",
        "auto",
    ),
    key("baseline-label", "time_label of the baseline visit (first row per subject when absent)"),
    key("followup-label", "time_label of the follow-up visit (last row per subject when absent)"),
    OUTPUT,
];

const WIN_ODDS_KEYS: &[KeySpec] = &[
    key("input", "Outcome table with columns subject_id,arm,<components...>"),
    key("directions", "Per-component winner direction, e.g. smaller,larger"),
    keyd("margin", "Non-inferiority margin psi_0 in (0, 1]", "1"),
    keyd("test-arm", "Arm label of the test group", "test"),
    keyd("control-arm", "Arm label of the control group", "control"),
    keyd("replicates", "Bootstrap replicates", "2000"),
    SEED,
    OUTPUT,
];

/// A fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    /// Resolved keys in declaration order; keys without a value are absent.
    pub values: Vec<(String, String)>,
    pub json: bool,
    /// Config file the values were partly read from.
    pub config_file: Option<PathBuf>,
}

impl RunConfig {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.values
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    pub fn has(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn require(&self, name: &str) -> Result<&str> {
        self.get(name)
            .ok_or_else(|| Error::Usage(format!("missing required key '{name}' for {}", self.subcommand)))
    }

    pub fn parse<T: FromStr>(&self, name: &str) -> Result<Option<T>> {
        match self.get(name) {
            None => Ok(None),
            Some(v) => v
                .trim()
                .parse::<T>()
                .map(Some)
                .map_err(|_| Error::Usage(format!("key '{name}': cannot parse {v:?}"))),
        }
    }

    pub fn parse_required<T: FromStr>(&self, name: &str) -> Result<T> {
        self.require(name)?;
        self.parse(name).map(|v| v.expect("checked present"))
    }

    pub fn output(&self) -> Option<&Path> {
        self.get("output").map(Path::new)
    }

    /// The seed, which stochastic routes must have.
    pub fn seed(&self) -> Result<u64> {
        self.parse::<u64>("seed")?.ok_or_else(|| {
            Error::Usage(format!(
                "missing required key 'seed' (pass --seed, set it in the config file, or export {SEED_ENV})"
            ))
        })
    }
}

pub fn command() -> Command {
    let mut cmd = Command::new("pedsafe")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Bayesian precision analytics for pediatric safety extrapolation")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for sub in Subcommand::ALL {
        let mut sc = Command::new(sub.name())
            .about(sub.about())
            .arg(
                Arg::new("config")
                    .long("config")
                    .value_name("FILE")
                    .help("TOML file of keys; command-line flags override it"),
            )
            .arg(
                Arg::new("json")
                    .long("json")
                    .action(ArgAction::SetTrue)
                    .help("Write the report as one JSON document instead of CSV"),
            );
        for k in sub.keys() {
            let mut help = k.help.to_string();
            if let Some(d) = k.default {
                help.push_str(&format!(" [default: {d}]"));
            }
            sc = sc.arg(Arg::new(k.name).long(k.name).value_name("VALUE").help(help));
        }
        cmd = cmd.subcommand(sc);
    }
    cmd
}

fn toml_scalar(key: &str, v: &toml::Value) -> Result<String> {
    Ok(match v {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => f.to_string(),
        toml::Value::Boolean(b) => b.to_string(),
        _ => {
            return Err(Error::Usage(format!(
                "config key '{key}' must be a string, number or boolean"
            )))
        }
    })
}

fn read_config_file(path: &Path, sub: Subcommand) -> Result<(BTreeMap<String, String>, bool)> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| Error::Usage(format!("config file {}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    let mut json = false;
    for (raw_key, value) in &table {
        let name = raw_key.replace('_', "-");
        if name == "json" {
            json = value
                .as_bool()
                .ok_or_else(|| Error::Usage("config key 'json' must be a boolean".into()))?;
            continue;
        }
        if !sub.keys().iter().any(|k| k.name == name) {
            return Err(Error::Usage(format!(
                "unknown key '{raw_key}' in config file {} for {sub}",
                path.display()
            )));
        }
        out.insert(name, toml_scalar(raw_key, value)?);
    }
    Ok((out, json))
}

fn resolve(sub: Subcommand, m: &ArgMatches) -> Result<RunConfig> {
    let config_file = m.get_one::<String>("config").map(PathBuf::from);
    let (file_values, file_json) = match &config_file {
        Some(p) => read_config_file(p, sub)?,
        None => (BTreeMap::new(), false),
    };
    let mut values = Vec::new();
    for k in sub.keys() {
        let from_flag = match m.value_source(k.name) {
            Some(ValueSource::CommandLine) => m.get_one::<String>(k.name).cloned(),
            _ => None,
        };
        let resolved = from_flag
            .or_else(|| file_values.get(k.name).cloned())
            .or_else(|| {
                if k.name == "seed" {
                    std::env::var(SEED_ENV).ok().filter(|s| !s.trim().is_empty())
                } else {
                    None
                }
            })
            .or_else(|| k.default.map(str::to_string));
        if let Some(v) = resolved {
            values.push((k.name.to_string(), v));
        }
    }
    Ok(RunConfig {
        subcommand: sub,
        values,
        json: m.get_flag("json") || file_json,
        config_file,
    })
}

/// Outcome of argument parsing: either a runnable config or text that
/// clap produced for --help / --version.
#[derive(Debug)]
pub enum Parsed {
    Run(RunConfig),
    Info(String),
}

pub fn parse_config<I, T>(argv: I) -> Result<Parsed>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(Parsed::Info(e.to_string())),
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Err(Error::Usage(e.to_string())),
                _ => Err(Error::Usage(e.to_string().trim_end().to_string())),
            };
        }
    };
    let (name, sub_matches) = matches
        .subcommand()
        .ok_or_else(|| Error::Usage("a subcommand is required".into()))?;
    let sub = Subcommand::from_name(name).expect("clap only accepts declared subcommands");
    resolve(sub, sub_matches).map(Parsed::Run)
}
