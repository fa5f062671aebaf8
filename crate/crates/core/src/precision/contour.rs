//! Dense (n, r) grids for contour plots of single-arm quantities.

use rayon::prelude::*;

use super::{confidence_fold_single_arm, min_fold, ReferenceEstimate};
use crate::error::{Error, Result};
use crate::posteriors::{ArmCounts, BetaParams};
use crate::specfun::inc_beta;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourQuantity {
    /// P(at least r events among n) when the true rate is `true_rate`.
    AtLeastR { true_rate: f64 },
    /// Confidence P(θ < f·θ̂₁) after observing r events among n.
    Confidence {
        prior: BetaParams,
        reference_rate: f64,
        fold: f64,
    },
    /// Minimum fold f_C ruled out at probability `target`.
    MinFold {
        prior: BetaParams,
        reference_rate: f64,
        target: f64,
    },
}

impl ContourQuantity {
    pub fn name(&self) -> &'static str {
        match self {
            ContourQuantity::AtLeastR { .. } => "at-least-r",
            ContourQuantity::Confidence { .. } => "confidence",
            ContourQuantity::MinFold { .. } => "min-fold",
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            ContourQuantity::AtLeastR { true_rate } => {
                if !(0.0..=1.0).contains(&true_rate) {
                    return Err(Error::domain(format!("true rate must lie in [0, 1], got {true_rate}")));
                }
            }
            ContourQuantity::Confidence { reference_rate, fold, .. } => {
                ReferenceEstimate::proportion(reference_rate)?;
                if !(fold > 0.0) || fold * reference_rate > 1.0 {
                    return Err(Error::domain(format!(
                        "fold {fold} must be positive with f·θ̂₁ ≤ 1"
                    )));
                }
            }
            ContourQuantity::MinFold { reference_rate, target, .. } => {
                ReferenceEstimate::proportion(reference_rate)?;
                if !(0.0..=1.0).contains(&target) {
                    return Err(Error::domain(format!("target must lie in [0, 1], got {target}")));
                }
            }
        }
        Ok(())
    }

    /// Value at one cell; NaN where r > n or the quantity is undefined.
    fn cell(&self, n: u64, r: u64) -> f64 {
        if r > n {
            return f64::NAN;
        }
        match *self {
            ContourQuantity::AtLeastR { true_rate } => at_least(r, n, true_rate),
            ContourQuantity::Confidence { prior, reference_rate, fold } => {
                let reference = match ReferenceEstimate::proportion(reference_rate) {
                    Ok(r) => r,
                    Err(_) => return f64::NAN,
                };
                ArmCounts::treatment(r, n)
                    .and_then(|d| confidence_fold_single_arm(d, prior, &reference, fold))
                    .map_or(f64::NAN, |c| c.confidence)
            }
            ContourQuantity::MinFold { prior, reference_rate, target } => {
                let reference = match ReferenceEstimate::proportion(reference_rate) {
                    Ok(r) => r,
                    Err(_) => return f64::NAN,
                };
                ArmCounts::treatment(r, n)
                    .and_then(|d| min_fold(d, prior, &reference, target))
                    .unwrap_or(f64::NAN)
            }
        }
    }
}

/// P(X ≥ r) for X ~ Binomial(n, p), via the identity P(X ≥ r) = I_p(r, n − r + 1).
fn at_least(r: u64, n: u64, p: f64) -> f64 {
    if r == 0 {
        return 1.0;
    }
    if p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    if r == 1 {
        // 1 − (1 − p)^n without cancellation
        return -((n as f64) * (-p).ln_1p()).exp_m1();
    }
    inc_beta(r as f64, (n - r + 1) as f64, p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourGrid {
    pub quantity: ContourQuantity,
    pub ns: Vec<u64>,
    pub rs: Vec<u64>,
    /// Row-major: `values[i * rs.len() + j]` is the cell (ns[i], rs[j]).
    pub values: Vec<f64>,
}

impl ContourGrid {
    pub fn get(&self, n_index: usize, r_index: usize) -> f64 {
        self.values[n_index * self.rs.len() + r_index]
    }

    /// Cell lookup by axis value rather than index.
    pub fn at(&self, n: u64, r: u64) -> Option<f64> {
        let i = self.ns.iter().position(|&x| x == n)?;
        let j = self.rs.iter().position(|&x| x == r)?;
        Some(self.get(i, j))
    }

    /// Cells in emission order: for each n, every r.
    pub fn cells(&self) -> impl Iterator<Item = (u64, u64, f64)> + '_ {
        self.ns.iter().enumerate().flat_map(move |(i, &n)| {
            self.rs.iter().enumerate().map(move |(j, &r)| (n, r, self.get(i, j)))
        })
    }
}

pub fn contour_grid(ns: &[u64], rs: &[u64], quantity: ContourQuantity) -> Result<ContourGrid> {
    if ns.is_empty() || rs.is_empty() {
        return Err(Error::domain("contour axes must be nonempty"));
    }
    quantity.validate()?;
    let values = ns
        .par_iter()
        .flat_map_iter(|&n| rs.iter().map(move |&r| quantity.cell(n, r)))
        .collect();
    Ok(ContourGrid {
        quantity,
        ns: ns.to_vec(),
        rs: rs.to_vec(),
        values,
    })
}
