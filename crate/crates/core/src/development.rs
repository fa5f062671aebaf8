//! Growth and development safety on standard deviation scores (SDS).
//!
//! The posterior of the mean change μ under the reference prior
//! π(μ, σ²) ∝ 1/σ² is the location-scale Student t with n − 1 degrees of
//! freedom, location x̄ and scale √(s²/n). Its source calls this law a
//! "non-central t" and describes it as asymmetric; the object computed here
//! is the symmetric central t its own formula t_{n−1}(μ | x̄, s²/n) names.

use std::fmt;

use crate::error::{Error, Result};
use crate::precision::{ComputedBy, ConfidenceResult};
use crate::specfun::{normal_cdf, normal_pdf, student_t_cdf};

/// ΔSDS = follow-up SDS − baseline SDS.
pub fn sds_change(baseline: f64, followup: f64) -> f64 {
    followup - baseline
}

/// Summary of n observed changes in SDS.
#[derive(Debug, Clone, PartialEq)]
pub struct SdsSample {
    n: usize,
    mean: f64,
    s_sq: f64,
    values: Option<Vec<f64>>,
}

impl SdsSample {
    pub fn from_summary(n: usize, mean: f64, s_sq: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("an SDS sample needs n >= 2, got {n}")));
        }
        if !mean.is_finite() {
            return Err(Error::domain(format!("mean change must be finite, got {mean}")));
        }
        if !(s_sq > 0.0 && s_sq.is_finite()) {
            return Err(Error::domain(format!("sample variance must be positive, got {s_sq}")));
        }
        Ok(SdsSample { n, mean, s_sq, values: None })
    }

    /// Summary of raw ΔSDS values, with the unbiased sample variance.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::domain(format!("an SDS sample needs n >= 2, got {n}")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("SDS changes must be finite"));
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
        let mut s = SdsSample::from_summary(n, mean, ss / (n - 1) as f64)?;
        s.values = Some(values);
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn s_sq(&self) -> f64 {
        self.s_sq
    }

    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }

    /// Posterior scale √(s²/n) of μ.
    pub fn scale(&self) -> f64 {
        (self.s_sq / self.n as f64).sqrt()
    }
}

/// C = P(μ > −τ | data): the posterior probability that the mean change in
/// SDS does not fall below the clinically meaningful threshold −τ.
pub fn sds_threshold_confidence(sample: &SdsSample, tau: f64) -> Result<ConfidenceResult> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::domain(format!("tau must be positive, got {tau}")));
    }
    let t = (sample.mean + tau) / sample.scale();
    Ok(ConfidenceResult {
        confidence: student_t_cdf(t, (sample.n - 1) as f64)?,
        threshold: -tau,
        method: ComputedBy::Exact,
        error_estimate: 0.0,
    })
}

/// Law of the maximum of n i.i.d. N(μ, σ²) changes, one per time point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxChangeModel {
    n: u32,
    mu: f64,
    sigma: f64,
}

impl MaxChangeModel {
    pub fn new(n: u32, mu: f64, sigma: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("the number of time points must be at least 1"));
        }
        if !mu.is_finite() {
            return Err(Error::domain(format!("mu must be finite, got {mu}")));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::domain(format!("sigma must be positive, got {sigma}")));
        }
        Ok(MaxChangeModel { n, mu, sigma })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// f(x) = n/σ · φ(z) · Φ(z)^{n−1}, z = (x − μ)/σ.
    pub fn pdf(&self, x: f64) -> f64 {
        let z = (x - self.mu) / self.sigma;
        let n = f64::from(self.n);
        let phi = normal_pdf(z);
        if self.n == 1 {
            return phi / self.sigma;
        }
        n / self.sigma * phi * normal_cdf(z).powi(self.n as i32 - 1)
    }

    /// F(x) = Φ(z)ⁿ.
    pub fn cdf(&self, x: f64) -> f64 {
        normal_cdf((x - self.mu) / self.sigma).powi(self.n as i32)
    }
}

pub fn max_change_pdf(model: &MaxChangeModel, x: f64) -> f64 {
    model.pdf(x)
}

pub fn max_change_cdf(model: &MaxChangeModel, x: f64) -> f64 {
    model.cdf(x)
}

/// Interval edges for grouping SDS values; bin j is (edge_j, edge_{j+1}].
#[derive(Debug, Clone, PartialEq)]
pub struct BinScheme {
    baseline_edges: Vec<f64>,
    change_edges: Vec<f64>,
}

pub const BASELINE_EDGES: [f64; 10] = [
    f64::NEG_INFINITY,
    -3.5,
    -2.5,
    -1.5,
    -0.5,
    0.5,
    1.5,
    2.5,
    3.5,
    f64::INFINITY,
];

pub const CHANGE_EDGES: [f64; 6] = [f64::NEG_INFINITY, -1.5, -0.5, 0.5, 1.5, f64::INFINITY];

impl Default for BinScheme {
    fn default() -> Self {
        BinScheme {
            baseline_edges: BASELINE_EDGES.to_vec(),
            change_edges: CHANGE_EDGES.to_vec(),
        }
    }
}

fn check_edges(name: &str, edges: &[f64]) -> Result<()> {
    if edges.len() < 2 {
        return Err(Error::domain(format!("{name} edges need at least two values")));
    }
    if edges[0] != f64::NEG_INFINITY || edges[edges.len() - 1] != f64::INFINITY {
        return Err(Error::domain(format!("{name} edges must start at -inf and end at +inf")));
    }
    if edges.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain(format!("{name} edges must be strictly increasing")));
    }
    Ok(())
}

fn locate(edges: &[f64], value: f64) -> usize {
    // finite edges strictly below the value; an edge value falls to the lower bin
    let finite = &edges[1..edges.len() - 1];
    finite.partition_point(|&e| e < value)
}

fn label(edges: &[f64], j: usize) -> String {
    let fmt_edge = |e: f64| {
        if e == f64::NEG_INFINITY {
            "-inf".to_string()
        } else if e == f64::INFINITY {
            "inf".to_string()
        } else {
            e.to_string()
        }
    };
    let close = if edges[j + 1].is_infinite() { ')' } else { ']' };
    format!("({}, {}{close}", fmt_edge(edges[j]), fmt_edge(edges[j + 1]))
}

impl BinScheme {
    pub fn new(baseline_edges: Vec<f64>, change_edges: Vec<f64>) -> Result<Self> {
        check_edges("baseline", &baseline_edges)?;
        check_edges("change", &change_edges)?;
        Ok(BinScheme { baseline_edges, change_edges })
    }

    pub fn baseline_edges(&self) -> &[f64] {
        &self.baseline_edges
    }

    pub fn change_edges(&self) -> &[f64] {
        &self.change_edges
    }

    pub fn baseline_bins(&self) -> usize {
        self.baseline_edges.len() - 1
    }

    pub fn change_bins(&self) -> usize {
        self.change_edges.len() - 1
    }

    pub fn baseline_label(&self, j: usize) -> String {
        label(&self.baseline_edges, j)
    }

    pub fn change_label(&self, j: usize) -> String {
        label(&self.change_edges, j)
    }
}

/// Zero-based index of the baseline SDS group containing `sds`.
/// NaN lands in the lowest group.
pub fn bin_baseline(sds: f64, scheme: &BinScheme) -> usize {
    locate(&scheme.baseline_edges, sds)
}

/// Zero-based index of the change group containing `delta`.
pub fn bin_change(delta: f64, scheme: &BinScheme) -> usize {
    locate(&scheme.change_edges, delta)
}

/// Counts per change group, e.g. for a shift table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinCounts(pub Vec<u64>);

impl BinCounts {
    pub fn of_changes(deltas: &[f64], scheme: &BinScheme) -> Self {
        let mut c = vec![0; scheme.change_bins()];
        for &d in deltas {
            c[bin_change(d, scheme)] += 1;
        }
        BinCounts(c)
    }
}

impl fmt::Display for BinCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn change_is_difference() {
        assert_eq!(sds_change(0.2, 0.2), 0.0);
        assert_eq!(sds_change(1.0, -0.5), -1.5);
    }

    #[test]
    fn mean_at_minus_tau_is_half() {
        for &(n, s_sq) in &[(2usize, 0.3), (50, 1.0), (400, 2.5)] {
            let s = SdsSample::from_summary(n, -0.5, s_sq).unwrap();
            let c = sds_threshold_confidence(&s, 0.5).unwrap();
            assert!((c.confidence - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn from_values_summary() {
        let s = SdsSample::from_values(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s.mean(), 2.5);
        assert!((s.s_sq() - 5.0 / 3.0).abs() < 1e-15);
        assert!(SdsSample::from_values(vec![1.0]).is_err());
        assert!(SdsSample::from_values(vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn max_of_one_is_normal() {
        let m = MaxChangeModel::new(1, 0.3, 2.0).unwrap();
        for &x in &[-3.0, 0.0, 0.3, 4.0] {
            let z: f64 = (x - 0.3) / 2.0;
            assert!((m.pdf(x) - normal_pdf(z) / 2.0).abs() < 1e-16);
        }
        let m4 = MaxChangeModel::new(4, 1.0, 0.5).unwrap();
        assert!((m4.cdf(1.0) - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn default_bins() {
        let s = BinScheme::default();
        assert_eq!(s.baseline_bins(), 9);
        assert_eq!(s.change_bins(), 5);
        assert_eq!(s.baseline_label(bin_baseline(0.0, &s)), "(-0.5, 0.5]");
        assert_eq!(bin_change(-2.0, &s), 0);
        assert_eq!(s.change_label(bin_change(0.5, &s)), "(-0.5, 0.5]");
        assert_eq!(s.change_label(bin_change(7.0, &s)), "(1.5, inf)");
        assert!(BinScheme::new(vec![f64::NEG_INFINITY, 1.0, 1.0, f64::INFINITY], CHANGE_EDGES.to_vec()).is_err());
    }
}
