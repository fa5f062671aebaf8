//! Seeded Monte Carlo machinery: a self-contained xoshiro256** generator
//! with hashed substreams, gamma/beta/binomial samplers, and the stochastic
//! estimators built on them.
//!
//! Identical `(seed, stream_id)` pairs reproduce identical draw sequences on
//! every platform and every build of this crate version.

use crate::error::{Error, Result};
use crate::posteriors::{BetaDifference, BetaParams};
use crate::precision::{self, CountMode, DesignScenario, ReferenceKind};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const STREAM_SALT: u64 = 0x632B_E59B_D9B4_E019;

#[inline]
fn splitmix_mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A single-owner random stream.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    state: [u64; 4],
    spare_normal: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut sm = splitmix_mix(seed) ^ splitmix_mix(stream_id.wrapping_add(STREAM_SALT));
        let mut state = [0u64; 4];
        for word in &mut state {
            sm = sm.wrapping_add(GOLDEN_GAMMA);
            *word = splitmix_mix(sm);
        }
        if state == [0; 4] {
            state[0] = GOLDEN_GAMMA;
        }
        RngStream {
            seed,
            stream_id,
            state,
            spare_normal: None,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// A fresh stream sharing this stream's seed.
    pub fn substream(&self, stream_id: u64) -> RngStream {
        RngStream::new(self.seed, stream_id)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.state;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// Uniform on [0, 1) with 53 random bits.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on the open interval (0, 1).
    #[inline]
    pub fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in 0..n.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        // Lemire's multiply-shift; bias is below 2^-64 · n.
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Standard normal variate by Marsaglia's polar method.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let k = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * k);
                return u * k;
            }
        }
    }

    /// ln of a Gamma(shape, 1) variate. Working on the log scale keeps tiny
    /// shapes (near-zero priors) from underflowing to an exact zero.
    pub fn ln_gamma_variate(&mut self, shape: f64) -> f64 {
        if shape < 1.0 {
            // G(a) = G(a + 1) · U^(1/a)
            let boosted = self.ln_gamma_variate(shape + 1.0);
            return boosted + self.uniform_open().ln() / shape;
        }
        // Marsaglia & Tsang squeeze/rejection
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.normal();
            let v = 1.0 + c * x;
            if v <= 0.0 {
                continue;
            }
            let v = v * v * v;
            let u = self.uniform_open();
            let x2 = x * x;
            if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
                return (d * v).ln();
            }
        }
    }

    pub fn beta(&mut self, params: BetaParams) -> f64 {
        let lx = self.ln_gamma_variate(params.a());
        let ly = self.ln_gamma_variate(params.b());
        // x/(x+y) = 1/(1 + e^(ly - lx))
        1.0 / (1.0 + (ly - lx).exp())
    }

    /// Binomial(n, p) by Knuth's beta-splitting recursion followed by
    /// direct Bernoulli counting once fewer than 64 trials remain.
    pub fn binomial(&mut self, n: u64, p: f64) -> u64 {
        if p <= 0.0 || n == 0 {
            return 0;
        }
        if p >= 1.0 {
            return n;
        }
        let mut count = 0u64;
        let mut n = n;
        let mut p = p;
        while n > 64 {
            let a = 1 + n / 2;
            let b = n + 1 - a;
            let order_stat = self.beta(BetaParams::new_unchecked(a as f64, b as f64));
            if order_stat >= p {
                n = a - 1;
                p /= order_stat;
            } else {
                count += a;
                n = b - 1;
                p = (p - order_stat) / (1.0 - order_stat);
            }
        }
        for _ in 0..n {
            if self.uniform() < p {
                count += 1;
            }
        }
        count
    }
}

/// `count` i.i.d. draws from a beta distribution.
pub fn sample_beta(params: BetaParams, rng: &mut RngStream, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.beta(params)).collect()
}

/// A Monte Carlo probability with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub p: f64,
    pub se: f64,
    pub count: usize,
}

impl McEstimate {
    pub fn from_hits(hits: usize, count: usize) -> Self {
        let p = hits as f64 / count as f64;
        McEstimate {
            p,
            se: (p * (1.0 - p) / count as f64).sqrt(),
            count,
        }
    }
}

pub const MIN_MC_SAMPLES: usize = 10_000;

/// Fraction of paired posterior draws with θ_treat − θ_control < threshold.
pub fn mc_diff_probability(
    d: &BetaDifference,
    threshold: f64,
    rng: &mut RngStream,
    count: usize,
) -> Result<McEstimate> {
    if count < MIN_MC_SAMPLES {
        return Err(Error::domain(format!(
            "at least {MIN_MC_SAMPLES} Monte Carlo samples required, got {count}"
        )));
    }
    let mut hits = 0usize;
    for _ in 0..count {
        let t = rng.beta(d.treat);
        let c = rng.beta(d.control);
        if t - c < threshold {
            hits += 1;
        }
    }
    Ok(McEstimate::from_hits(hits, count))
}

pub const MIN_PREDICTIVE_TRIALS: usize = 1_000;

/// Assurance: the fraction of simulated trials of size `n_total` whose
/// posterior confidence meets the scenario target.
///
/// Each simulated trial draws binomial event counts at the scenario's
/// assumed true rates and evaluates the confidence exactly as for observed
/// data. Trial `i` uses substream `i` of `rng`'s seed, so the result does
/// not depend on evaluation order. In plug-in count mode the simulation is
/// bypassed and the deterministic plug-in confidence is compared with the
/// target instead.
pub fn predictive_confidence(
    scenario: &DesignScenario,
    n_total: u64,
    rng: &RngStream,
    trials: usize,
) -> Result<McEstimate> {
    scenario.validate()?;
    if trials < MIN_PREDICTIVE_TRIALS {
        return Err(Error::domain(format!(
            "at least {MIN_PREDICTIVE_TRIALS} predictive trials required, got {trials}"
        )));
    }
    let (n_treat, n_control) = scenario.split(n_total)?;
    if scenario.count_mode == CountMode::PlugIn {
        let c = precision::plug_in_confidence(scenario, n_total)?;
        let hit = usize::from(c.confidence >= scenario.target);
        return Ok(McEstimate {
            p: hit as f64,
            se: 0.0,
            count: 1,
        });
    }
    let single_arm = scenario.query.reference.kind == ReferenceKind::Proportion;

    use rayon::prelude::*;
    let hits: Result<Vec<bool>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut stream = rng.substream(i as u64);
            let r_treat = stream.binomial(n_treat, scenario.treat_rate);
            let r_control = if single_arm {
                0
            } else {
                stream.binomial(n_control, scenario.control_rate)
            };
            let c = precision::confidence_for_counts(scenario, r_treat, n_treat, r_control, n_control)?;
            Ok(c.confidence >= scenario.target)
        })
        .collect();
    let hits = hits?.into_iter().filter(|&h| h).count();
    Ok(McEstimate::from_hits(hits, trials))
}

/// One-sample Kolmogorov–Smirnov test outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsOutcome {
    pub statistic: f64,
    pub p_value: f64,
}

/// Kolmogorov–Smirnov test of `samples` against a continuous `cdf`.
pub fn ks_test<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> KsOutcome {
    samples.sort_by(|a, b| a.total_cmp(b));
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max(hi - f).max(f - lo);
    }
    let sqrt_n = n.sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    KsOutcome {
        statistic: d,
        p_value: kolmogorov_q(lambda),
    }
}

/// Survival function of the Kolmogorov distribution.
fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=200 {
        let k = k as f64;
        let term = sign * (-2.0 * k * k * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 * sum.abs() {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = RngStream::new(42, 3);
        let mut b = RngStream::new(42, 3);
        let xs: Vec<u64> = (0..64).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..64).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        let mut c = RngStream::new(42, 4);
        let zs: Vec<u64> = (0..64).map(|_| c.next_u64()).collect();
        assert_ne!(xs, zs);
    }

    #[test]
    fn uniform_ranges() {
        let mut rng = RngStream::new(7, 0);
        for _ in 0..10_000 {
            let u = rng.uniform_open();
            assert!(u > 0.0 && u < 1.0);
            assert!(rng.index(5) < 5);
        }
    }

    #[test]
    fn gamma_mean_small_and_large_shape() {
        let mut rng = RngStream::new(11, 0);
        for &shape in &[0.3, 1.0, 4.5, 120.0] {
            let n = 200_000;
            let mean: f64 = (0..n).map(|_| rng.ln_gamma_variate(shape).exp()).sum::<f64>() / n as f64;
            let se = (shape / n as f64).sqrt();
            assert!((mean - shape).abs() < 5.0 * se, "shape {shape}: mean {mean}");
        }
    }

    #[test]
    fn binomial_moments() {
        let mut rng = RngStream::new(5, 1);
        for &(n, p) in &[(10u64, 0.3), (300, 0.01), (5000, 0.42), (100_000, 0.001)] {
            let reps = 20_000;
            let draws: Vec<f64> = (0..reps).map(|_| rng.binomial(n, p) as f64).collect();
            let mean = draws.iter().sum::<f64>() / reps as f64;
            let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;
            let true_var = n as f64 * p * (1.0 - p);
            let se = (true_var / reps as f64).sqrt();
            assert!((mean - n as f64 * p).abs() < 5.0 * se, "n={n} p={p} mean={mean}");
            assert!((var / true_var - 1.0).abs() < 0.06, "n={n} p={p} var={var}");
        }
        assert_eq!(rng.binomial(50, 0.0), 0);
        assert_eq!(rng.binomial(50, 1.0), 50);
    }

    #[test]
    fn tiny_shape_beta_stays_in_unit_interval() {
        let mut rng = RngStream::new(3, 0);
        let p = BetaParams::new(0.001, 1.0).unwrap();
        for _ in 0..1000 {
            let x = rng.beta(p);
            assert!((0.0..=1.0).contains(&x));
        }
    }

    #[test]
    fn mc_requires_enough_samples() {
        let d = BetaDifference::new(BetaParams::uniform(), BetaParams::uniform());
        let mut rng = RngStream::new(1, 0);
        assert!(mc_diff_probability(&d, 0.0, &mut rng, 100).is_err());
    }

    #[test]
    fn kolmogorov_tail_values() {
        // Q(1.36) ≈ 0.0494, Q(1.63) ≈ 0.0098
        assert!((kolmogorov_q(1.36) - 0.0494).abs() < 5e-4);
        assert!((kolmogorov_q(1.63) - 0.0098).abs() < 3e-4);
    }
}
