//! Consistency confidence for adverse-event rates relative to a reference
//! population, and the design quantities derived from it.
//!
//! Two-arm (placebo-controlled) queries work on the difference
//! ϑ = θ_treat − θ_control; single-arm queries work on θ_treat alone. The
//! reference estimate (ϑ̂₁ or θ̂₁) is conditioned on as a known constant.
//!
//! The margin hypothesis is printed in its source as
//! `H0: ϑ₂ ≥ ϑ̂₁ − ε  vs  H1: ϑ₂ < ϑ̂₁ + ε`; the quantity computed here is the
//! probability of ruling out more than an ε absolute increase,
//! C = P(ϑ₂ < ϑ̂₁ + ε). The fold hypothesis gives C = P(ϑ₂ < f·ϑ̂₁).

mod contour;
mod design;
mod winodds;

pub use contour::{contour_grid, ContourGrid, ContourQuantity};
pub use design::{
    confidence_curve, confidence_for_counts, plug_in_confidence, plug_in_count, solve_sample_size,
    Allocation, CountMode, CurvePoint, DesignScenario, DesignSolution, SolveOptions,
};
pub use winodds::{pair_counts, win_odds, Bootstrap, Direction, PairCounts, WinOddsResult, WinOddsTable};

use std::fmt;

use crate::error::{Error, Result};
use crate::posteriors::{
    diff_cdf_estimate, update_beta, ArmCounts, BetaDifference, BetaParams, EvalMethod,
};
use crate::specfun::inc_beta;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceKind {
    /// Placebo-corrected difference ϑ̂₁ in (−1, 1).
    Difference,
    /// Single-arm incidence proportion θ̂₁ in (0, 1).
    Proportion,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceEstimate {
    pub value: f64,
    pub kind: ReferenceKind,
    pub ae_id: String,
}

impl ReferenceEstimate {
    pub fn difference(value: f64) -> Result<Self> {
        if !(value > -1.0 && value < 1.0) {
            return Err(Error::domain(format!(
                "reference difference must lie in (-1, 1), got {value}"
            )));
        }
        Ok(ReferenceEstimate {
            value,
            kind: ReferenceKind::Difference,
            ae_id: String::new(),
        })
    }

    pub fn proportion(value: f64) -> Result<Self> {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::domain(format!(
                "reference proportion must lie in (0, 1), got {value}"
            )));
        }
        Ok(ReferenceEstimate {
            value,
            kind: ReferenceKind::Proportion,
            ae_id: String::new(),
        })
    }

    pub fn labelled(mut self, ae_id: impl Into<String>) -> Self {
        self.ae_id = ae_id.into();
        self
    }

    fn expect(&self, kind: ReferenceKind) -> Result<()> {
        if self.kind != kind {
            return Err(Error::domain(format!(
                "reference estimate is a {:?}, expected a {:?}",
                self.kind, kind
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Hypothesis {
    /// Rule out an absolute increase of more than ε over the reference.
    Margin(f64),
    /// Rule out an f-fold multiple of the reference.
    Fold(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyQuery {
    pub hypothesis: Hypothesis,
    pub reference: ReferenceEstimate,
    pub method: EvalMethod,
}

impl ConsistencyQuery {
    pub fn validate(&self) -> Result<()> {
        match self.hypothesis {
            Hypothesis::Margin(eps) => {
                if !(eps >= 0.0) {
                    return Err(Error::domain(format!("margin must be nonnegative, got {eps}")));
                }
                if self.reference.kind != ReferenceKind::Difference {
                    return Err(Error::domain("the margin hypothesis needs a two-arm difference reference"));
                }
            }
            Hypothesis::Fold(f) => {
                if !(f > 1.0) {
                    return Err(Error::domain(format!("fold must exceed 1, got {f}")));
                }
            }
        }
        self.method.validate()
    }

    /// The value the target-population parameter must stay below.
    pub fn threshold(&self) -> f64 {
        match self.hypothesis {
            Hypothesis::Margin(eps) => self.reference.value + eps,
            Hypothesis::Fold(f) => f * self.reference.value,
        }
    }
}

/// How a confidence was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComputedBy {
    /// Closed-form distribution function (incomplete beta or Student t).
    Exact,
    Method(EvalMethod),
}

impl fmt::Display for ComputedBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComputedBy::Exact => f.write_str("exact"),
            ComputedBy::Method(m) => f.write_str(m.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfidenceResult {
    pub confidence: f64,
    pub threshold: f64,
    pub method: ComputedBy,
    /// Quadrature error estimate, Monte Carlo standard error, or zero for
    /// exact evaluations (NaN when the route has no estimate).
    pub error_estimate: f64,
}

fn two_arm(
    treat: ArmCounts,
    control: ArmCounts,
    priors: (BetaParams, BetaParams),
    threshold: f64,
    method: EvalMethod,
) -> Result<ConfidenceResult> {
    let d = BetaDifference::from_counts(treat, control, priors.0, priors.1);
    let est = diff_cdf_estimate(&d, threshold, method)?;
    Ok(ConfidenceResult {
        confidence: est.value,
        threshold,
        method: ComputedBy::Method(method),
        error_estimate: est.error,
    })
}

/// C = P(ϑ₂ < ϑ̂₁ + ε).
pub fn confidence_margin(
    treat: ArmCounts,
    control: ArmCounts,
    priors: (BetaParams, BetaParams),
    reference: &ReferenceEstimate,
    eps: f64,
    method: EvalMethod,
) -> Result<ConfidenceResult> {
    reference.expect(ReferenceKind::Difference)?;
    if !(eps >= 0.0) {
        return Err(Error::domain(format!("margin must be nonnegative, got {eps}")));
    }
    two_arm(treat, control, priors, reference.value + eps, method)
}

/// C = P(ϑ₂ < f·ϑ̂₁). With the closed-form route the integral is taken over
/// (−1, f·ϑ̂₁] when the threshold is negative and as one minus the upper
/// tail when it is nonnegative.
pub fn confidence_fold_two_arm(
    treat: ArmCounts,
    control: ArmCounts,
    priors: (BetaParams, BetaParams),
    reference: &ReferenceEstimate,
    f: f64,
    method: EvalMethod,
) -> Result<ConfidenceResult> {
    reference.expect(ReferenceKind::Difference)?;
    if !(f > 1.0) {
        return Err(Error::domain(format!("fold must exceed 1, got {f}")));
    }
    two_arm(treat, control, priors, f * reference.value, method)
}

/// C = P(θ₂ < f·θ̂₁) = I_{f·θ̂₁}(r + a′, n − r + b′).
pub fn confidence_fold_single_arm(
    treat: ArmCounts,
    prior: BetaParams,
    reference: &ReferenceEstimate,
    f: f64,
) -> Result<ConfidenceResult> {
    reference.expect(ReferenceKind::Proportion)?;
    if !(f > 0.0) {
        return Err(Error::domain(format!("fold must be positive, got {f}")));
    }
    let threshold = f * reference.value;
    if threshold > 1.0 {
        return Err(Error::domain(format!(
            "f·θ̂₁ = {threshold} exceeds 1; the fold is not meaningful"
        )));
    }
    let post = update_beta(prior, treat);
    Ok(ConfidenceResult {
        confidence: inc_beta(post.a(), post.b(), threshold),
        threshold,
        method: ComputedBy::Exact,
        error_estimate: 0.0,
    })
}

/// Dispatch on the query's hypothesis and reference kind. `control` is
/// required for difference references and ignored for proportions.
pub fn confidence(
    query: &ConsistencyQuery,
    treat: ArmCounts,
    control: Option<ArmCounts>,
    priors: (BetaParams, BetaParams),
) -> Result<ConfidenceResult> {
    query.validate()?;
    match (query.reference.kind, query.hypothesis) {
        (ReferenceKind::Proportion, Hypothesis::Fold(f)) => {
            confidence_fold_single_arm(treat, priors.0, &query.reference, f)
        }
        (ReferenceKind::Proportion, Hypothesis::Margin(_)) => unreachable!("rejected by validate"),
        (ReferenceKind::Difference, hyp) => {
            let control = control.ok_or_else(|| Error::domain("a two-arm query needs control counts"))?;
            match hyp {
                Hypothesis::Margin(eps) => {
                    confidence_margin(treat, control, priors, &query.reference, eps, query.method)
                }
                Hypothesis::Fold(f) => {
                    confidence_fold_two_arm(treat, control, priors, &query.reference, f, query.method)
                }
            }
        }
    }
}

/// Smallest fold f ≥ 1 whose exceedance is ruled out with probability at
/// least `target`, given single-arm data: the f_C of a probability
/// threshold C.
pub fn min_fold(
    treat: ArmCounts,
    prior: BetaParams,
    reference: &ReferenceEstimate,
    target: f64,
) -> Result<f64> {
    reference.expect(ReferenceKind::Proportion)?;
    if !(0.0..=1.0).contains(&target) {
        return Err(Error::domain(format!("target must lie in [0, 1], got {target}")));
    }
    let post = update_beta(prior, treat);
    let theta = reference.value;
    let conf = |f: f64| inc_beta(post.a(), post.b(), (f * theta).min(1.0));

    let mut lo = 1.0;
    let mut hi = 1.0 / theta;
    if conf(lo) >= target {
        return Ok(lo);
    }
    if conf(hi) < target {
        return Err(Error::Unsatisfiable(format!(
            "confidence {target} is not reached even at f = 1/θ̂₁ = {hi}"
        )));
    }
    // invariant: conf(lo) < target <= conf(hi)
    while hi - lo > 1e-12 * hi {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if conf(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
