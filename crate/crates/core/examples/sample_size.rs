//! Smallest 1:1 sample size whose plug-in confidence reaches 0.80, for the
//! margin and fold scenarios, under uniform and near-zero priors.

use std::time::Instant;

use pedsafe::posteriors::{near_zero_prior, NearZeroPriorSpec};
use pedsafe::precision::{solve_sample_size, DesignScenario, Hypothesis, SolveOptions};

fn report(label: &str, scenario: &DesignScenario) -> pedsafe::Result<()> {
    let start = Instant::now();
    let sol = solve_sample_size(scenario, SolveOptions::default())?;
    println!(
        "{label:<28} n_total={:>5} (treat {}/{}, control {}/{})  C={:.4}  [{:.2?}]",
        sol.n_total,
        sol.r_treat,
        sol.n_treat,
        sol.r_control,
        sol.n_control,
        sol.achieved,
        start.elapsed()
    );
    Ok(())
}

fn main() -> pedsafe::Result<()> {
    let margin = DesignScenario::two_arm(0.01, 0.04, Hypothesis::Margin(0.005), 0.03, 0.8)?;
    report("margin 0.005, diff 0.03", &margin)?;

    let doubling = DesignScenario::two_arm(0.01, 0.02, Hypothesis::Fold(2.0), 0.01, 0.8)?;
    report("fold 2, diff 0.01", &doubling)?;
    let tripling = DesignScenario::two_arm(0.01, 0.02, Hypothesis::Fold(3.0), 0.01, 0.8)?;
    report("fold 3, diff 0.01", &tripling)?;

    for &p_a_sq in &[0.001, 0.01, 0.1] {
        let prior = near_zero_prior(NearZeroPriorSpec { p_a_sq })?;
        for (name, base) in [("fold 2", &doubling), ("fold 3", &tripling)] {
            let mut s = base.clone();
            s.prior_treat = prior;
            s.prior_control = prior;
            report(&format!("{name}, near-zero {p_a_sq}"), &s)?;
        }
    }
    Ok(())
}
