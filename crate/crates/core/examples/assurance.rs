//! Assurance: the probability that a trial of a given size, run at assumed
//! true rates, ends with confidence above target. Compared with the
//! deterministic plug-in confidence at the same sizes.

use pedsafe::montecarlo::{predictive_confidence, RngStream};
use pedsafe::precision::{plug_in_confidence, CountMode, DesignScenario, Hypothesis};

fn main() -> pedsafe::Result<()> {
    let mut scenario = DesignScenario::two_arm(0.01, 0.02, Hypothesis::Fold(3.0), 0.01, 0.8)?;
    let root = RngStream::new(20240601, 0);
    println!("{:>6} {:>10} {:>12} {:>8}", "n", "plug-in C", "assurance", "se");
    for n in [100u64, 200, 300, 500, 800] {
        scenario.count_mode = CountMode::PlugIn;
        let plug = plug_in_confidence(&scenario, n)?;
        scenario.count_mode = CountMode::Predictive;
        let a = predictive_confidence(&scenario, n, &root.substream(n), 2000)?;
        println!("{n:>6} {:>10.4} {:>12.4} {:>8.4}", plug.confidence, a.p, a.se);
    }

    let single = DesignScenario {
        count_mode: CountMode::Predictive,
        ..DesignScenario::single_arm(0.01, 2.0, 0.01, 0.8)?
    };
    let a = predictive_confidence(&single, 150, &root, 5000)?;
    println!("\nsingle arm, true rate 0.01, n = 150: assurance of ruling out doubling {:.4}", a.p);
    Ok(())
}
