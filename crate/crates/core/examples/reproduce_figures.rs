//! Writes the plot-ready CSV files for every figure scenario.
//!
//! Usage: cargo run --release --example reproduce_figures -- [OUT_DIR] [FIGURE...]

use std::path::PathBuf;

use pedsafe::cli::repro::{run_script, scripts};

fn main() -> pedsafe::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "figures".into()));
    let wanted: Vec<String> = args.collect();
    for script in scripts() {
        if !wanted.is_empty() && !wanted.iter().any(|w| w == script.name) {
            continue;
        }
        println!("{}: {}", script.name, script.description);
        for inv in &script.invocations {
            println!("  pedsafe {}", inv.join(" "));
        }
        run_script(&script, &dir)?;
    }
    println!("outputs written to {}", dir.display());
    Ok(())
}
