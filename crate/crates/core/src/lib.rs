//! Bayesian precision analytics for extrapolating drug safety from a
//! reference population to a smaller target population.
//!
//! - [`posteriors`]: conjugate beta updates and the law of the difference
//!   of two independent beta variables.
//! - [`precision`]: consistency confidence, sample-size and minimum-fold
//!   solvers, contour grids and win odds.
//! - [`development`]: growth analytics on standard deviation scores.
//! - [`montecarlo`]: seeded random streams, samplers and simulation oracles.
//! - [`specfun`]: gamma, beta and hypergeometric special functions.

pub mod cli;
pub mod development;
pub mod error;
pub mod montecarlo;
pub mod posteriors;
pub mod precision;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
