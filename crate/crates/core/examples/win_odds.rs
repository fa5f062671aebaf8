//! Win odds on a prioritized composite: death first (smaller wins), then
//! hospital days (smaller wins), then a symptom score (larger wins).

use pedsafe::montecarlo::RngStream;
use pedsafe::precision::{win_odds, Bootstrap, Direction, WinOddsTable};

fn subject(rng: &mut RngStream, death_rate: f64, days_mean: f64) -> Vec<f64> {
    let death = if rng.uniform() < death_rate { 1.0 } else { 0.0 };
    let days = (days_mean + 2.0 * rng.normal()).round().max(0.0);
    let score = (50.0 + 10.0 * rng.normal()).round();
    vec![death, days, score]
}

fn main() -> pedsafe::Result<()> {
    let mut rng = RngStream::new(99, 0);
    let test: Vec<_> = (0..60).map(|_| subject(&mut rng, 0.05, 5.0)).collect();
    let control: Vec<_> = (0..60).map(|_| subject(&mut rng, 0.07, 5.5)).collect();
    let table = WinOddsTable::new(
        test,
        control,
        vec![Direction::SmallerWins, Direction::SmallerWins, Direction::LargerWins],
    )?;

    for margin in [0.6, 0.8, 1.0] {
        let r = win_odds(&table, margin, Bootstrap::new(5))?;
        println!(
            "margin {margin}: W={} L={} T={}  psi={:.3}  95% CI [{:.3}, {:.3}]  non-inferior: {}",
            r.wins, r.losses, r.ties, r.psi_hat, r.ci_low, r.ci_high, r.reject
        );
    }
    let swapped = win_odds(&table.swapped(), 1.0, Bootstrap::new(5))?;
    println!("arms swapped: psi={:.3}", swapped.psi_hat);
    Ok(())
}
