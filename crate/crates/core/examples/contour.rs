//! Grids over (n, r): the chance of observing at least r events at an
//! assumed true rate, and the single-arm confidence of ruling out doubling.

use pedsafe::posteriors::BetaParams;
use pedsafe::precision::{contour_grid, ContourGrid, ContourQuantity};

fn print(grid: &ContourGrid) {
    print!("{:>6}", "n\\r");
    for r in &grid.rs {
        print!("{r:>9}");
    }
    println!();
    for (i, n) in grid.ns.iter().enumerate() {
        print!("{n:>6}");
        for j in 0..grid.rs.len() {
            print!("{:>9.4}", grid.get(i, j));
        }
        println!();
    }
}

fn main() -> pedsafe::Result<()> {
    let ns: Vec<u64> = (50..=300).step_by(50).collect();
    let rs: Vec<u64> = (0..=4).collect();
    for rate in [0.001, 0.005, 0.01] {
        println!("P(at least r events), true rate {rate}");
        print(&contour_grid(&ns, &rs, ContourQuantity::AtLeastR { true_rate: rate })?);
        println!();
    }
    println!("P(rate < 2 × 0.01 | r of n), uniform prior");
    let q = ContourQuantity::Confidence {
        prior: BetaParams::uniform(),
        reference_rate: 0.01,
        fold: 2.0,
    };
    print(&contour_grid(&ns, &rs, q)?);
    Ok(())
}
