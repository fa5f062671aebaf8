//! Win odds for prioritized outcome vectors, with a seeded percentile
//! bootstrap for the non-inferiority decision.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::montecarlo::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    LargerWins,
    SmallerWins,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "larger" | "higher" | "+" => Ok(Direction::LargerWins),
            "smaller" | "lower" | "-" => Ok(Direction::SmallerWins),
            other => Err(Error::domain(format!(
                "direction must be 'larger' or 'smaller', got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LargerWins => "larger",
            Direction::SmallerWins => "smaller",
        })
    }
}

/// Outcome vectors for the test and control arms. Components are ordered
/// most serious first.
#[derive(Debug, Clone, PartialEq)]
pub struct WinOddsTable {
    test: Vec<Vec<f64>>,
    control: Vec<Vec<f64>>,
    directions: Vec<Direction>,
}

impl WinOddsTable {
    pub fn new(test: Vec<Vec<f64>>, control: Vec<Vec<f64>>, directions: Vec<Direction>) -> Result<Self> {
        if test.is_empty() || control.is_empty() {
            return Err(Error::domain("each arm needs at least one subject"));
        }
        if directions.is_empty() {
            return Err(Error::domain("at least one outcome component is required"));
        }
        let k = directions.len();
        for (arm, rows) in [("test", &test), ("control", &control)] {
            for (i, row) in rows.iter().enumerate() {
                if row.len() != k {
                    return Err(Error::domain(format!(
                        "{arm} subject {i} has {} components, expected {k}",
                        row.len()
                    )));
                }
                if row.iter().any(|v| v.is_nan()) {
                    return Err(Error::domain(format!("{arm} subject {i} has a NaN component")));
                }
            }
        }
        Ok(WinOddsTable { test, control, directions })
    }

    pub fn test(&self) -> &[Vec<f64>] {
        &self.test
    }

    pub fn control(&self) -> &[Vec<f64>] {
        &self.control
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn swapped(&self) -> Self {
        WinOddsTable {
            test: self.control.clone(),
            control: self.test.clone(),
            directions: self.directions.clone(),
        }
    }

    /// Outcome of test subject `a` against control subject `b`: the first
    /// component that differs decides.
    fn compare(&self, a: &[f64], b: &[f64]) -> Ordering {
        for ((x, y), dir) in a.iter().zip(b).zip(&self.directions) {
            let ord = x.partial_cmp(y).unwrap_or(Ordering::Equal);
            if ord != Ordering::Equal {
                return match dir {
                    Direction::LargerWins => ord,
                    Direction::SmallerWins => ord.reverse(),
                };
            }
        }
        Ordering::Equal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairCounts {
    pub wins: u64,
    pub losses: u64,
    pub ties: u64,
}

impl PairCounts {
    pub fn total(&self) -> u64 {
        self.wins + self.losses + self.ties
    }

    /// Ψ = (W + T/2) / (L + T/2); infinite when the denominator vanishes.
    pub fn psi(&self) -> f64 {
        let t = self.ties as f64 * 0.5;
        (self.wins as f64 + t) / (self.losses as f64 + t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bootstrap {
    pub replicates: usize,
    pub seed: u64,
}

impl Bootstrap {
    pub const DEFAULT_REPLICATES: usize = 2000;

    pub fn new(seed: u64) -> Self {
        Bootstrap {
            replicates: Self::DEFAULT_REPLICATES,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WinOddsResult {
    pub wins: u64,
    pub losses: u64,
    pub ties: u64,
    pub psi_hat: f64,
    /// 2.5% bootstrap percentile (the one-sided 97.5% lower bound).
    pub ci_low: f64,
    pub ci_high: f64,
    pub margin: f64,
    pub reject: bool,
}

/// Pairwise outcome matrix: +1 win, −1 loss, 0 tie, row-major over test.
fn outcome_matrix(table: &WinOddsTable) -> Vec<i8> {
    let mut m = Vec::with_capacity(table.test.len() * table.control.len());
    for a in &table.test {
        for b in &table.control {
            m.push(match table.compare(a, b) {
                Ordering::Greater => 1,
                Ordering::Less => -1,
                Ordering::Equal => 0,
            });
        }
    }
    m
}

pub fn pair_counts(table: &WinOddsTable) -> PairCounts {
    tally(&outcome_matrix(table), None, None, table.control.len())
}

fn tally(m: &[i8], rows: Option<&[u64]>, cols: Option<&[u64]>, n_control: usize) -> PairCounts {
    let mut c = PairCounts::default();
    for (idx, &o) in m.iter().enumerate() {
        let (i, j) = (idx / n_control, idx % n_control);
        let w = rows.map_or(1, |r| r[i]) * cols.map_or(1, |c| c[j]);
        if w == 0 {
            continue;
        }
        match o {
            1 => c.wins += w,
            -1 => c.losses += w,
            _ => c.ties += w,
        }
    }
    c
}

/// Nearest-rank quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let n = sorted.len();
    let rank = ((q * n as f64).ceil() as usize).clamp(1, n);
    sorted[rank - 1]
}

/// Win odds of test over control with a non-inferiority decision against
/// margin ψ₀: reject H0 (Ψ ≤ ψ₀) when the bootstrap 2.5% percentile exceeds ψ₀.
///
/// Each replicate resamples both arms with replacement on its own RNG
/// substream, so the result depends only on the seed.
pub fn win_odds(table: &WinOddsTable, margin: f64, bootstrap: Bootstrap) -> Result<WinOddsResult> {
    if !(margin > 0.0 && margin <= 1.0) {
        return Err(Error::domain(format!("margin must lie in (0, 1], got {margin}")));
    }
    if bootstrap.replicates < 1 {
        return Err(Error::domain("bootstrap needs at least one replicate"));
    }
    let m = outcome_matrix(table);
    let (n_test, n_control) = (table.test.len(), table.control.len());
    let counts = tally(&m, None, None, n_control);
    if counts.losses * 2 + counts.ties == 0 {
        return Err(Error::Degenerate(format!(
            "no losses or ties among {} pairs; win odds are unbounded",
            counts.total()
        )));
    }

    let root = RngStream::new(bootstrap.seed, 0);
    let mut psis: Vec<f64> = (0..bootstrap.replicates as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = root.substream(k);
            let mut rows = vec![0u64; n_test];
            let mut cols = vec![0u64; n_control];
            for _ in 0..n_test {
                rows[rng.index(n_test)] += 1;
            }
            for _ in 0..n_control {
                cols[rng.index(n_control)] += 1;
            }
            tally(&m, Some(&rows), Some(&cols), n_control).psi()
        })
        .collect();
    psis.sort_by(f64::total_cmp);
    let ci_low = quantile(&psis, 0.025);
    let ci_high = quantile(&psis, 0.975);

    Ok(WinOddsResult {
        wins: counts.wins,
        losses: counts.losses,
        ties: counts.ties,
        psi_hat: counts.psi(),
        ci_low,
        ci_high,
        margin,
        reject: ci_low > margin,
    })
}
