//! Density and distribution function of θ_treat − θ_control for two beta
//! posteriors, evaluated along every route.

use pedsafe::montecarlo::{mc_diff_probability, RngStream};
use pedsafe::posteriors::{diff_cdf_estimate, diff_pdf, ArmCounts, BetaDifference, BetaParams, EvalMethod};

fn main() -> pedsafe::Result<()> {
    let d = BetaDifference::from_counts(
        ArmCounts::treatment(4, 100)?,
        ArmCounts::control(1, 100)?,
        BetaParams::uniform(),
        BetaParams::uniform(),
    );
    println!("posteriors: treat {}  control {}", d.treat, d.control);
    println!("mean {:.5}  sd {:.5}\n", d.mean(), d.variance().sqrt());

    let methods = [
        EvalMethod::default(),
        EvalMethod::NormalApprox,
        EvalMethod::MonteCarlo { samples: 1_000_000, seed: 7 },
    ];
    println!("{:>7} {:>14} {:>14} {:>14}", "x", "convolution", "normal", "monte-carlo");
    for &x in &[-0.02, 0.0, 0.02, 0.03, 0.05, 0.08] {
        let vals: Vec<String> = methods
            .iter()
            .map(|&m| diff_cdf_estimate(&d, x, m).map(|e| format!("{:.6}", e.value)))
            .collect::<pedsafe::Result<_>>()?;
        println!("{x:>7} {:>14} {:>14} {:>14}", vals[0], vals[1], vals[2]);
    }

    println!("\ndensity at the mean: {:.4}", diff_pdf(&d, d.mean(), EvalMethod::default())?);

    let mut rng = RngStream::new(2024, 0);
    let mc = mc_diff_probability(&d, 0.035, &mut rng, 1_000_000)?;
    let conv = diff_cdf_estimate(&d, 0.035, EvalMethod::default())?;
    println!(
        "P(diff < 0.035): convolution {:.6} (err {:.1e}), monte carlo {:.6} ± {:.6}",
        conv.value, conv.error, mc.p, mc.se
    );
    Ok(())
}
