//! Reproduction scripts for the reference scenario grids. Each script is a
//! list of command lines whose outputs are plot-ready CSV files written to
//! paths relative to the working directory.

use std::path::Path;

use super::{parse_config, run, Parsed};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub name: &'static str,
    pub description: &'static str,
    /// Argument vectors, without the program name.
    pub invocations: Vec<Vec<String>>,
}

fn args(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

fn figure2() -> Script {
    let mut inv = Vec::new();
    for (bg, treat) in [("0.003", "0.033"), ("0.01", "0.04")] {
        let out = format!("figure2_bg{bg}.csv");
        inv.push(args(&[
            "confidence", "--mode", "margin", "--control-rate", bg, "--treat-rate", treat, "--ref-diff", "0.03",
            "--margin", "0.005", "--n", "20:600:2", "--output", &out,
        ]));
        let out = format!("figure2_bg{bg}_solve.csv");
        inv.push(args(&[
            "solve-n", "--mode", "margin", "--control-rate", bg, "--treat-rate", treat, "--ref-diff", "0.03",
            "--margin", "0.005", "--target", "0.8", "--output", &out,
        ]));
    }
    Script {
        name: "figure2",
        description: "Confidence of ruling out a 0.005 absolute increase over a 0.03 difference, by total n",
        invocations: inv,
    }
}

fn figure3() -> Script {
    let mut inv = Vec::new();
    for (bg, treat) in [("0.0025", "0.0125"), ("0.01", "0.02"), ("0.005", "0.015"), ("0.03", "0.04")] {
        for fold in ["2", "3"] {
            let out = format!("figure3_bg{bg}_fold{fold}.csv");
            inv.push(args(&[
                "confidence", "--mode", "fold", "--control-rate", bg, "--treat-rate", treat, "--ref-diff", "0.01",
                "--fold", fold, "--n", "20:600:2", "--output", &out,
            ]));
        }
    }
    Script {
        name: "figure3",
        description: "Confidence of ruling out a 2- or 3-fold increase over a 0.01 difference, by total n",
        invocations: inv,
    }
}

fn figure4() -> Script {
    let inv = ["0.7", "0.8", "0.9", "0.95"]
        .iter()
        .map(|c| {
            let out = format!("figure4_threshold{c}.csv");
            args(&[
                "min-fold", "--events", "0:5", "--n", "10:300:10", "--ref-rate", "0.01", "--target", c, "--output",
                &out,
            ])
        })
        .collect();
    Script {
        name: "figure4",
        description: "Minimum fold ruled out against a 0.01 reference rate, by n and observed events",
        invocations: inv,
    }
}

fn figure5() -> Script {
    let inv = ["0.001", "0.0025", "0.005", "0.01"]
        .iter()
        .map(|rate| {
            let grid = format!("figure5_rate{rate}_grid.csv");
            let out = format!("figure5_rate{rate}.csv");
            args(&[
                "contour", "--quantity", "at-least-r", "--rate", rate, "--n", "10:300:10", "--r", "0:5",
                "--grid-output", &grid, "--output", &out,
            ])
        })
        .collect();
    Script {
        name: "figure5",
        description: "Probability of observing at least r events at an assumed true rate, by n and r",
        invocations: inv,
    }
}

pub fn scripts() -> Vec<Script> {
    vec![figure2(), figure3(), figure4(), figure5()]
}

pub fn script(name: &str) -> Option<Script> {
    scripts().into_iter().find(|s| s.name == name)
}

/// Run every invocation of `script` in-process with outputs rooted at `dir`.
pub fn run_script(script: &Script, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    for inv in &script.invocations {
        let mut argv = vec!["pedsafe".to_string()];
        for (i, a) in inv.iter().enumerate() {
            let is_path = i > 0 && matches!(inv[i - 1].as_str(), "--output" | "--grid-output");
            argv.push(if is_path { dir.join(a).display().to_string() } else { a.clone() });
        }
        match parse_config(argv)? {
            Parsed::Run(cfg) => {
                run(&cfg)?;
            }
            Parsed::Info(_) => unreachable!("scripts never ask for help"),
        }
    }
    Ok(())
}
