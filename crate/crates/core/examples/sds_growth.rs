//! Growth safety on standard deviation scores: posterior confidence that the
//! mean change stays above −τ, the law of the maximum change over visits,
//! and SD-group binning.

use pedsafe::development::{
    bin_baseline, bin_change, max_change_cdf, sds_change, sds_threshold_confidence, BinScheme,
    MaxChangeModel, SdsSample,
};
use pedsafe::montecarlo::RngStream;

fn main() -> pedsafe::Result<()> {
    let tau = 0.5;
    println!("confidence that the mean change in SDS exceeds -{tau} (s = 1):");
    for n in [20usize, 50, 100] {
        print!("  n={n:<4}");
        for mean in [-0.4, -0.38, -0.3, -0.2, 0.0] {
            let c = sds_threshold_confidence(&SdsSample::from_summary(n, mean, 1.0)?, tau)?;
            print!("  x̄={mean:<5} C={:.3}", c.confidence);
        }
        println!();
    }

    let mut rng = RngStream::new(3, 0);
    let baseline: Vec<f64> = (0..40).map(|_| rng.normal()).collect();
    let followup: Vec<f64> = baseline.iter().map(|b| b - 0.1 + 0.4 * rng.normal()).collect();
    let deltas: Vec<f64> = baseline.iter().zip(&followup).map(|(&b, &f)| sds_change(b, f)).collect();
    let sample = SdsSample::from_values(deltas.clone())?;
    let c = sds_threshold_confidence(&sample, tau)?;
    println!(
        "\nsimulated cohort: n={} mean={:.3} s²={:.3}  C={:.4}",
        sample.n(),
        sample.mean(),
        sample.s_sq(),
        c.confidence
    );

    let scheme = BinScheme::default();
    let mut shift = vec![vec![0u32; scheme.change_bins()]; scheme.baseline_bins()];
    for (&b, &d) in baseline.iter().zip(&deltas) {
        shift[bin_baseline(b, &scheme)][bin_change(d, &scheme)] += 1;
    }
    println!("\nshift table (rows: baseline group, columns: change group)");
    for (j, row) in shift.iter().enumerate() {
        if row.iter().any(|&c| c > 0) {
            println!("  {:<14} {:?}", scheme.baseline_label(j), row);
        }
    }

    println!("\nmaximum of n i.i.d. N(0, 0.3²) visit changes:");
    for n in [1u32, 2, 4, 8] {
        let m = MaxChangeModel::new(n, 0.0, 0.3)?;
        println!("  n={n}: P(max < 0.5) = {:.4}", max_change_cdf(&m, 0.5));
    }
    Ok(())
}
