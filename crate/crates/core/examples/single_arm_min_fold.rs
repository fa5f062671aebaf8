//! Single-arm confidence for an uncommon event and the minimum fold f_C
//! that can be ruled out, by sample size and observed events.

use pedsafe::posteriors::{ArmCounts, BetaParams};
use pedsafe::precision::{confidence_fold_single_arm, min_fold, ReferenceEstimate};

fn main() -> pedsafe::Result<()> {
    let reference = ReferenceEstimate::proportion(0.01)?;
    let prior = BetaParams::uniform();

    let c = confidence_fold_single_arm(ArmCounts::treatment(0, 150)?, prior, &reference, 2.0)?;
    println!("0/150 events: P(rate < 2 × 0.01) = {:.4}\n", c.confidence);

    for target in [0.7, 0.8, 0.9, 0.95] {
        println!("threshold C = {target}");
        print!("{:>6}", "n");
        for r in 0..=3 {
            print!("{:>10}", format!("r={r}"));
        }
        println!();
        for n in [50u64, 100, 150, 200, 300] {
            print!("{n:>6}");
            for r in 0..=3u64 {
                match min_fold(ArmCounts::treatment(r, n)?, prior, &reference, target) {
                    Ok(f) => print!("{f:>10.3}"),
                    Err(_) => print!("{:>10}", "-"),
                }
            }
            println!();
        }
        println!();
    }
    Ok(())
}
