//! Design-stage computations: plug-in confidence at expected event counts,
//! confidence-versus-sample-size curves, and the sample-size solver.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{confidence, ConfidenceResult, ConsistencyQuery, Hypothesis, ReferenceKind};
use crate::error::{Error, Result};
use crate::posteriors::{diff_cdf, update_beta, ArmCounts, BetaDifference, BetaParams, EvalMethod};

/// Treatment:control allocation as a ratio of positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Allocation {
    pub treat: u32,
    pub control: u32,
}

impl Allocation {
    pub const BALANCED: Allocation = Allocation { treat: 1, control: 1 };

    pub fn new(treat: u32, control: u32) -> Result<Self> {
        if treat == 0 || control == 0 {
            return Err(Error::domain("allocation parts must be positive"));
        }
        Ok(Allocation { treat, control })
    }

    pub fn block(&self) -> u64 {
        u64::from(self.treat) + u64::from(self.control)
    }
}

impl FromStr for Allocation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (t, c) = s
            .split_once(':')
            .ok_or_else(|| Error::domain(format!("allocation must look like 2:1, got {s:?}")))?;
        let parse = |p: &str| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::domain(format!("bad allocation part {p:?}")))
        };
        Allocation::new(parse(t)?, parse(c)?)
    }
}

impl fmt::Display for Allocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.treat, self.control)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    /// Evaluate at the expected counts round(rate · n_arm).
    PlugIn,
    /// Average over simulated trial outcomes (assurance).
    Predictive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DesignScenario {
    /// Background (placebo) incidence; unused for single-arm queries.
    pub control_rate: f64,
    pub treat_rate: f64,
    pub allocation: Allocation,
    pub prior_treat: BetaParams,
    pub prior_control: BetaParams,
    pub target: f64,
    pub query: ConsistencyQuery,
    pub count_mode: CountMode,
}

impl DesignScenario {
    pub fn validate(&self) -> Result<()> {
        for (name, r) in [("treat_rate", self.treat_rate), ("control_rate", self.control_rate)] {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::domain(format!("{name} must lie in [0, 1], got {r}")));
            }
        }
        if !(0.0..1.0).contains(&self.target) {
            return Err(Error::domain(format!("target must lie in [0, 1), got {}", self.target)));
        }
        self.query.validate()
    }

    pub fn is_single_arm(&self) -> bool {
        self.query.reference.kind == ReferenceKind::Proportion
    }

    /// Patients per arm for a total of `n_total`; single-arm designs put
    /// everyone on treatment.
    pub fn split(&self, n_total: u64) -> Result<(u64, u64)> {
        if n_total == 0 {
            return Err(Error::domain("sample size must be positive"));
        }
        if self.is_single_arm() {
            return Ok((n_total, 0));
        }
        let share = f64::from(self.allocation.treat) / self.allocation.block() as f64;
        let n_treat = (n_total as f64 * share + 0.5).floor() as u64;
        let n_treat = n_treat.clamp(1, n_total.saturating_sub(1).max(1));
        Ok((n_treat, n_total - n_treat))
    }

    /// Smallest total the allocation can express.
    pub fn unit(&self) -> u64 {
        if self.is_single_arm() {
            1
        } else {
            self.allocation.block()
        }
    }
}

/// Expected event count, rounded half up.
pub fn plug_in_count(rate: f64, n_arm: u64) -> u64 {
    let r = (rate * n_arm as f64 + 0.5).floor() as u64;
    r.min(n_arm)
}

pub fn confidence_for_counts(
    scenario: &DesignScenario,
    r_treat: u64,
    n_treat: u64,
    r_control: u64,
    n_control: u64,
) -> Result<ConfidenceResult> {
    let treat = ArmCounts::treatment(r_treat, n_treat)?;
    let control = if scenario.is_single_arm() {
        None
    } else {
        Some(ArmCounts::control(r_control, n_control)?)
    };
    confidence(
        &scenario.query,
        treat,
        control,
        (scenario.prior_treat, scenario.prior_control),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub n_total: u64,
    pub n_treat: u64,
    pub n_control: u64,
    pub r_treat: u64,
    pub r_control: u64,
    pub confidence: f64,
}

fn plug_in_point(scenario: &DesignScenario, n_total: u64) -> Result<CurvePoint> {
    let (n_treat, n_control) = scenario.split(n_total)?;
    let r_treat = plug_in_count(scenario.treat_rate, n_treat);
    let r_control = plug_in_count(scenario.control_rate, n_control);
    let c = confidence_for_counts(scenario, r_treat, n_treat, r_control, n_control)?;
    Ok(CurvePoint {
        n_total,
        n_treat,
        n_control,
        r_treat,
        r_control,
        confidence: c.confidence,
    })
}

/// Plug-in confidence at `n_total` patients.
pub fn plug_in_confidence(scenario: &DesignScenario, n_total: u64) -> Result<ConfidenceResult> {
    let (n_treat, n_control) = scenario.split(n_total)?;
    confidence_for_counts(
        scenario,
        plug_in_count(scenario.treat_rate, n_treat),
        n_treat,
        plug_in_count(scenario.control_rate, n_control),
        n_control,
    )
}

/// Plug-in confidence at each requested total, evaluated in parallel.
pub fn confidence_curve(scenario: &DesignScenario, totals: &[u64]) -> Result<Vec<CurvePoint>> {
    scenario.validate()?;
    totals.par_iter().map(|&n| plug_in_point(scenario, n)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Largest total sample size considered.
    pub cap: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { cap: 100_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignSolution {
    pub n_total: u64,
    pub n_treat: u64,
    pub n_control: u64,
    pub r_treat: u64,
    pub r_control: u64,
    pub achieved: f64,
    /// Candidates evaluated exactly.
    pub evaluations: usize,
}

const SCAN_CHUNK: usize = 32;
/// Posterior shapes above which the normal approximation is trusted to
/// screen out candidates.
const SCREEN_MIN_SHAPE: f64 = 20.0;
/// Candidates whose normal-approximate confidence falls this far below the
/// target are skipped without exact evaluation.
const SCREEN_MARGIN: f64 = 0.05;

/// Smallest total sample size whose plug-in confidence reaches the target.
///
/// Rounding of the expected counts makes the confidence saw-toothed in n,
/// so no bisection on n is valid on its own. Every allocation block from
/// the smallest expressible design up to the cap is scanned in order, in
/// parallel chunks, and the first success is returned. For two-arm designs
/// with large posterior shapes a candidate is screened with the normal
/// approximation first and only evaluated exactly when it could plausibly
/// succeed.
pub fn solve_sample_size(scenario: &DesignScenario, opts: SolveOptions) -> Result<DesignSolution> {
    scenario.validate()?;
    if scenario.count_mode != CountMode::PlugIn {
        return Err(Error::domain(
            "the sample-size solver runs in plug-in mode; use predictive_confidence to assess assurance",
        ));
    }
    let unit = scenario.unit();
    let blocks = opts.cap / unit;
    if blocks == 0 {
        return Err(Error::Unsatisfiable(format!(
            "cap {} is below the smallest design ({unit})",
            opts.cap
        )));
    }
    let threshold = scenario.query.threshold();
    let two_arm = !scenario.is_single_arm();

    let mut evaluations = 0usize;
    let mut k = 1u64;
    while k <= blocks {
        let end = (k + SCAN_CHUNK as u64 - 1).min(blocks);
        let results: Vec<Option<CurvePoint>> = (k..=end)
            .into_par_iter()
            .map(|block| -> Result<Option<CurvePoint>> {
                let n_total = block * unit;
                if two_arm && screened_out(scenario, n_total, threshold)? {
                    return Ok(None);
                }
                plug_in_point(scenario, n_total).map(Some)
            })
            .collect::<Result<_>>()?;
        evaluations += results.iter().filter(|r| r.is_some()).count();
        if let Some(p) = results
            .into_iter()
            .flatten()
            .find(|p| p.confidence >= scenario.target)
        {
            return Ok(DesignSolution {
                n_total: p.n_total,
                n_treat: p.n_treat,
                n_control: p.n_control,
                r_treat: p.r_treat,
                r_control: p.r_control,
                achieved: p.confidence,
                evaluations,
            });
        }
        k = end + 1;
    }
    Err(Error::Unsatisfiable(format!(
        "target confidence {} not reached for any total up to {}",
        scenario.target, opts.cap
    )))
}

fn screened_out(scenario: &DesignScenario, n_total: u64, threshold: f64) -> Result<bool> {
    let (n_treat, n_control) = scenario.split(n_total)?;
    let t = update_beta(
        scenario.prior_treat,
        ArmCounts::treatment(plug_in_count(scenario.treat_rate, n_treat), n_treat)?,
    );
    let c = update_beta(
        scenario.prior_control,
        ArmCounts::control(plug_in_count(scenario.control_rate, n_control), n_control)?,
    );
    let min_shape = t.a().min(t.b()).min(c.a()).min(c.b());
    if min_shape < SCREEN_MIN_SHAPE {
        return Ok(false);
    }
    let approx = diff_cdf(&BetaDifference::new(t, c), threshold, EvalMethod::NormalApprox)?;
    Ok(approx < scenario.target - SCREEN_MARGIN)
}

/// Convenience constructor for the margin/fold scenarios used throughout
/// the examples: uniform priors, balanced allocation, plug-in counts.
impl DesignScenario {
    pub fn two_arm(
        control_rate: f64,
        treat_rate: f64,
        hypothesis: Hypothesis,
        reference_difference: f64,
        target: f64,
    ) -> Result<Self> {
        let s = DesignScenario {
            control_rate,
            treat_rate,
            allocation: Allocation::BALANCED,
            prior_treat: BetaParams::uniform(),
            prior_control: BetaParams::uniform(),
            target,
            query: ConsistencyQuery {
                hypothesis,
                reference: super::ReferenceEstimate::difference(reference_difference)?,
                method: EvalMethod::default(),
            },
            count_mode: CountMode::PlugIn,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn single_arm(treat_rate: f64, fold: f64, reference_rate: f64, target: f64) -> Result<Self> {
        let s = DesignScenario {
            control_rate: 0.0,
            treat_rate,
            allocation: Allocation::BALANCED,
            prior_treat: BetaParams::uniform(),
            prior_control: BetaParams::uniform(),
            target,
            query: ConsistencyQuery {
                hypothesis: Hypothesis::Fold(fold),
                reference: super::ReferenceEstimate::proportion(reference_rate)?,
                method: EvalMethod::default(),
            },
            count_mode: CountMode::PlugIn,
        };
        s.validate()?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allocation_parsing() {
        assert_eq!("2:1".parse::<Allocation>().unwrap(), Allocation { treat: 2, control: 1 });
        assert!("0:1".parse::<Allocation>().is_err());
        assert!("2-1".parse::<Allocation>().is_err());
    }

    #[test]
    fn rounding_is_half_up() {
        assert_eq!(plug_in_count(0.01, 150), 2);
        assert_eq!(plug_in_count(0.01, 149), 1);
        assert_eq!(plug_in_count(0.0, 1000), 0);
        assert_eq!(plug_in_count(1.0, 7), 7);
    }

    #[test]
    fn split_respects_allocation() {
        let mut s = DesignScenario::two_arm(0.01, 0.02, Hypothesis::Fold(2.0), 0.01, 0.8).unwrap();
        assert_eq!(s.split(200).unwrap(), (100, 100));
        s.allocation = Allocation::new(2, 1).unwrap();
        assert_eq!(s.split(300).unwrap(), (200, 100));
        assert_eq!(s.unit(), 3);
    }

    #[test]
    fn zero_target_returns_smallest_design() {
        let mut s = DesignScenario::two_arm(0.01, 0.02, Hypothesis::Fold(2.0), 0.01, 0.8).unwrap();
        s.target = 0.0;
        let sol = solve_sample_size(&s, SolveOptions::default()).unwrap();
        assert_eq!(sol.n_total, 2);
    }

    #[test]
    fn single_arm_solution_is_minimal() {
        let s = DesignScenario::single_arm(0.0, 2.0, 0.01, 0.8).unwrap();
        let sol = solve_sample_size(&s, SolveOptions::default()).unwrap();
        // zero events: 1 − 0.98^(n+1) ≥ 0.8  ⇔  n + 1 ≥ ln 0.2 / ln 0.98
        let exact = ((0.2f64).ln() / (0.98f64).ln() - 1.0).ceil() as u64;
        assert_eq!(sol.n_total, exact);
        assert!(sol.achieved >= 0.8);
    }

    #[test]
    fn unsatisfiable_under_cap() {
        let s = DesignScenario::single_arm(0.05, 2.0, 0.01, 0.8).unwrap();
        assert!(matches!(
            solve_sample_size(&s, SolveOptions { cap: 2000 }),
            Err(Error::Unsatisfiable(_))
        ));
    }
}
