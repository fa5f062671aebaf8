//! Consistency confidence for a common adverse reaction observed in a
//! placebo-controlled pediatric trial, against an adult reference difference.

use pedsafe::montecarlo::{mc_diff_probability, RngStream};
use pedsafe::posteriors::{ArmCounts, BetaDifference, BetaParams, EvalMethod};
use pedsafe::precision::{confidence_fold_two_arm, confidence_margin, ReferenceEstimate};

fn main() -> pedsafe::Result<()> {
    let priors = (BetaParams::uniform(), BetaParams::uniform());
    let reference = ReferenceEstimate::difference(0.03)?.labelled("nausea");

    let treat = ArmCounts::treatment(4, 100)?;
    let control = ArmCounts::control(1, 100)?;

    for eps in [0.0, 0.005, 0.01, 0.02] {
        let c = confidence_margin(treat, control, priors, &reference, eps, EvalMethod::default())?;
        println!(
            "{}: P(diff < {:.3}) = {:.4}  (quadrature error {:.1e})",
            reference.ae_id, c.threshold, c.confidence, c.error_estimate
        );
    }

    let reference = ReferenceEstimate::difference(0.01)?;
    let treat = ArmCounts::treatment(2, 100)?;
    for f in [1.5, 2.0, 3.0, 5.0] {
        let c = confidence_fold_two_arm(treat, control, priors, &reference, f, EvalMethod::default())?;
        let d = BetaDifference::from_counts(treat, control, priors.0, priors.1);
        let mc = mc_diff_probability(&d, c.threshold, &mut RngStream::new(11, 0), 1_000_000)?;
        println!(
            "fold {f}: C = {:.4}   monte carlo {:.4} ± {:.4}",
            c.confidence, mc.p, mc.se
        );
    }
    Ok(())
}
