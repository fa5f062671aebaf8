//! Conjugate beta updating and the distribution of the difference of two
//! independent beta posteriors, ϑ = θ_treat − θ_control on (−1, 1).
//!
//! Three evaluation routes are provided for the difference:
//!
//! * convolution quadrature (the default): the density is the convolution
//!   integral of the two beta kernels; the distribution function is the
//!   single integral ∫ f_control(v) I_{v+x}(a_treat, b_treat) dv. Both use a
//!   sin² change of variables that removes the integrable endpoint
//!   singularities of shapes below one.
//! * closed form: the piecewise Appell-F1 representation of the density
//!   (Pham-Gia and Turkkan), usable where its double series converges.
//! * Monte Carlo over paired posterior draws, and a moment-matched normal
//!   approximation.

use std::fmt;

use crate::error::{Error, Result};
use crate::montecarlo::{self, RngStream};
use crate::quadrature::{self, sin2_map, SIN2_RANGE};
use crate::specfun::{self, appell_f1, inc_beta, inc_beta_xy, ln_beta, SeriesControl};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    a: f64,
    b: f64,
}

impl BetaParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::domain(format!(
                "beta shapes must be positive and finite, got ({a}, {b})"
            )));
        }
        Ok(BetaParams { a, b })
    }

    pub(crate) fn new_unchecked(a: f64, b: f64) -> Self {
        debug_assert!(a > 0.0 && b > 0.0);
        BetaParams { a, b }
    }

    /// Beta(1, 1).
    pub fn uniform() -> Self {
        BetaParams { a: 1.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn mean(&self) -> f64 {
        self.a / (self.a + self.b)
    }

    pub fn variance(&self) -> f64 {
        let s = self.a + self.b;
        self.a * self.b / (s * s * (s + 1.0))
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else if x >= 1.0 {
            1.0
        } else {
            inc_beta(self.a, self.b, x)
        }
    }

    pub(crate) fn ln_norm(&self) -> f64 {
        ln_beta(self.a, self.b)
    }
}

impl Default for BetaParams {
    fn default() -> Self {
        BetaParams::uniform()
    }
}

impl fmt::Display for BetaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Beta({}, {})", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arm {
    /// Investigational treatment (iTx).
    Treatment,
    /// Control (Cx).
    Control,
}

/// Observed events out of patients at risk in one arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArmCounts {
    pub events: u64,
    pub n: u64,
    pub arm: Arm,
}

impl ArmCounts {
    /// `n = 0` is allowed and represents "no data yet" (posterior = prior).
    pub fn new(events: u64, n: u64, arm: Arm) -> Result<Self> {
        if events > n {
            return Err(Error::domain(format!("events ({events}) exceed patients ({n})")));
        }
        Ok(ArmCounts { events, n, arm })
    }

    pub fn treatment(events: u64, n: u64) -> Result<Self> {
        Self::new(events, n, Arm::Treatment)
    }

    pub fn control(events: u64, n: u64) -> Result<Self> {
        Self::new(events, n, Arm::Control)
    }
}

/// Weight parameter p_a² of the near-zero informative prior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearZeroPriorSpec {
    pub p_a_sq: f64,
}

/// Beta(p/(1−p), 1) with p = p_a². p = 1/2 gives the uniform prior; smaller
/// values pile prior mass up against zero incidence.
pub fn near_zero_prior(spec: NearZeroPriorSpec) -> Result<BetaParams> {
    let p = spec.p_a_sq;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain(format!("p_a^2 must lie in (0, 1), got {p}")));
    }
    BetaParams::new(p / (1.0 - p), 1.0)
}

pub fn update_beta(prior: BetaParams, data: ArmCounts) -> BetaParams {
    BetaParams::new_unchecked(
        prior.a + data.events as f64,
        prior.b + (data.n - data.events) as f64,
    )
}

/// Evaluation route for the beta-difference distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    ClosedForm,
    Convolution { grid_points: usize },
    MonteCarlo { samples: usize, seed: u64 },
    NormalApprox,
}

pub const DEFAULT_GRID_POINTS: usize = 4097;
pub const DEFAULT_MC_SAMPLES: usize = 1_000_000;

impl Default for EvalMethod {
    fn default() -> Self {
        EvalMethod::Convolution {
            grid_points: DEFAULT_GRID_POINTS,
        }
    }
}

impl EvalMethod {
    pub fn validate(&self) -> Result<()> {
        match *self {
            EvalMethod::Convolution { grid_points } => {
                if grid_points < 65 || grid_points % 2 == 0 {
                    return Err(Error::domain(format!(
                        "grid_points must be odd and at least 65, got {grid_points}"
                    )));
                }
            }
            EvalMethod::MonteCarlo { samples, .. } => {
                if samples < montecarlo::MIN_MC_SAMPLES {
                    return Err(Error::domain(format!(
                        "mc_samples must be at least {}, got {samples}",
                        montecarlo::MIN_MC_SAMPLES
                    )));
                }
            }
            EvalMethod::ClosedForm | EvalMethod::NormalApprox => {}
        }
        Ok(())
    }

    pub fn name(&self) -> &'static str {
        match self {
            EvalMethod::ClosedForm => "closed-form",
            EvalMethod::Convolution { .. } => "convolution",
            EvalMethod::MonteCarlo { .. } => "monte-carlo",
            EvalMethod::NormalApprox => "normal",
        }
    }
}

/// A probability together with an estimate of its numerical error: the
/// quadrature error estimate, or the Monte Carlo standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// Posterior of ϑ = θ_treat − θ_control for independent beta posteriors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaDifference {
    pub treat: BetaParams,
    pub control: BetaParams,
}

impl BetaDifference {
    pub fn new(treat: BetaParams, control: BetaParams) -> Self {
        BetaDifference { treat, control }
    }

    pub fn from_counts(
        treat: ArmCounts,
        control: ArmCounts,
        prior_treat: BetaParams,
        prior_control: BetaParams,
    ) -> Self {
        BetaDifference {
            treat: update_beta(prior_treat, treat),
            control: update_beta(prior_control, control),
        }
    }

    /// The distribution of −ϑ.
    pub fn swapped(&self) -> Self {
        BetaDifference {
            treat: self.control,
            control: self.treat,
        }
    }

    pub fn mean(&self) -> f64 {
        self.treat.mean() - self.control.mean()
    }

    pub fn variance(&self) -> f64 {
        self.treat.variance() + self.control.variance()
    }
}

/// Density of the difference at x ∈ (−1, 1).
pub fn diff_pdf(d: &BetaDifference, x: f64, method: EvalMethod) -> Result<f64> {
    method.validate()?;
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::domain(format!("density argument must lie in (-1, 1), got {x}")));
    }
    match method {
        EvalMethod::Convolution { .. } => Ok(convolution_pdf(d, x).value),
        EvalMethod::ClosedForm => closed_form_pdf(d, x, 1.0 - x, 1.0 + x, &SeriesControl::default()),
        EvalMethod::MonteCarlo { samples, seed } => {
            let mut rng = RngStream::new(seed, 0);
            let sd = d.variance().sqrt();
            // Scott's bin width for a normal-shaped target
            let half = 0.5 * 3.49 * sd * (samples as f64).powf(-1.0 / 3.0);
            let mut hits = 0usize;
            for _ in 0..samples {
                let z = rng.beta(d.treat) - rng.beta(d.control);
                if (z - x).abs() <= half {
                    hits += 1;
                }
            }
            Ok(hits as f64 / (samples as f64 * 2.0 * half))
        }
        EvalMethod::NormalApprox => {
            let sd = d.variance().sqrt();
            Ok(specfun::normal_pdf((x - d.mean()) / sd) / sd)
        }
    }
}

/// P(ϑ < x).
pub fn diff_cdf(d: &BetaDifference, x: f64, method: EvalMethod) -> Result<f64> {
    diff_cdf_estimate(d, x, method).map(|e| e.value)
}

/// P(ϑ < x) with the route's own error estimate.
pub fn diff_cdf_estimate(d: &BetaDifference, x: f64, method: EvalMethod) -> Result<Estimate> {
    method.validate()?;
    if x.is_nan() {
        return Err(Error::domain("threshold is NaN"));
    }
    if x <= -1.0 {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    if x >= 1.0 {
        return Ok(Estimate { value: 1.0, error: 0.0 });
    }
    match method {
        EvalMethod::Convolution { grid_points } => Ok(convolution_cdf(d, x, grid_points)),
        EvalMethod::ClosedForm => closed_form_cdf(d, x, &SeriesControl::default()),
        EvalMethod::MonteCarlo { samples, seed } => {
            let mut rng = RngStream::new(seed, 0);
            let est = montecarlo::mc_diff_probability(d, x, &mut rng, samples)?;
            Ok(Estimate {
                value: est.p,
                error: est.se,
            })
        }
        EvalMethod::NormalApprox => {
            let sd = d.variance().sqrt();
            Ok(Estimate {
                value: specfun::normal_cdf((x - d.mean()) / sd),
                error: f64::NAN,
            })
        }
    }
}

/// ∫ f_treat(v + x) f_control(v) dv over v ∈ [max(0,−x), min(1, 1−x)].
fn convolution_pdf(d: &BetaDifference, x: f64) -> quadrature::Quadrature {
    let (a1, b1) = (d.treat.a, d.treat.b);
    let (a2, b2) = (d.control.a, d.control.b);
    let ln_norm = d.treat.ln_norm() + d.control.ln_norm();
    let p = x.max(0.0);
    let q = (-x).max(0.0);
    let width = 1.0 - x.abs();
    let integrand = |t: f64| {
        let (s, c) = t.sin_cos();
        let (s2, c2) = (s * s, c * c);
        // treat argument u = v + x and control argument v, each with its complement
        let u = p + width * s2;
        let one_minus_u = q + width * c2;
        let v = q + width * s2;
        let one_minus_v = p + width * c2;
        let ln = (a1 - 1.0) * u.ln()
            + (b1 - 1.0) * one_minus_u.ln()
            + (a2 - 1.0) * v.ln()
            + (b2 - 1.0) * one_minus_v.ln()
            - ln_norm;
        ln.exp() * 2.0 * width * s * c
    };
    adaptive_partitioned(integrand, 0.0, SIN2_RANGE, 64, 1e-14, 1e-11, 4000)
}

fn adaptive_partitioned<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    pieces: usize,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> quadrature::Quadrature {
    let h = (b - a) / pieces as f64;
    let mut total = quadrature::Quadrature {
        value: 0.0,
        error: 0.0,
        evaluations: 0,
    };
    for k in 0..pieces {
        let lo = a + h * k as f64;
        let hi = if k + 1 == pieces { b } else { lo + h };
        let q = quadrature::adaptive(&mut f, lo, hi, abs_tol / pieces as f64, rel_tol, max_intervals / pieces);
        total.value += q.value;
        total.error += q.error;
        total.evaluations += q.evaluations;
    }
    total
}

/// P(ϑ < x) = ∫ f_control(v) I_{v+x}(a_treat, b_treat) dv + P(θ_control > 1 − x).
///
/// The integral runs over v ∈ [lo, hi] = [max(0,−x), min(1,1−x)], split at
/// the midpoint. On each half the value of I at the half's outer endpoint is
/// subtracted and restored exactly through the control CDF, which makes the
/// mapped integrand vanish at both ends of every half even when a control
/// shape is below one.
fn convolution_cdf(d: &BetaDifference, x: f64, grid_points: usize) -> Estimate {
    let (a1, b1) = (d.treat.a, d.treat.b);
    let (a2, b2) = (d.control.a, d.control.b);
    let ln_norm2 = d.control.ln_norm();
    let p = x.max(0.0);
    let q = (-x).max(0.0);
    let lo = q;
    let hi = 1.0 - p;
    let mid = 0.5 * (lo + hi);

    // tail where v + x ≥ 1: P(θ_control > 1 − x) = I_x(b2, a2)
    let tail = if x > 0.0 { inc_beta_xy(b2, a2, x, 1.0 - x) } else { 0.0 };

    let h_lo = if x > 0.0 { inc_beta_xy(a1, b1, x, 1.0 - x) } else { 0.0 };
    let h_hi = if x < 0.0 { inc_beta_xy(a1, b1, 1.0 + x, -x) } else { 1.0 };

    let f2_cdf = |v: f64, one_minus_v: f64| inc_beta_xy(a2, b2, v, one_minus_v);
    let mass_lower = f2_cdf(mid, 1.0 - mid) - f2_cdf(lo, 1.0 - lo);
    let mass_upper = f2_cdf(hi, p) - f2_cdf(mid, 1.0 - mid);

    let ln_f2 = |v: f64, one_minus_v: f64| (a2 - 1.0) * v.ln() + (b2 - 1.0) * one_minus_v.ln() - ln_norm2;

    let lower = {
        let width = mid - lo;
        let one_minus_mid = 1.0 - mid;
        quadrature::simpson(
            |t| {
                let (v, one_minus_v, dv) = sin2_map(t, lo, width, one_minus_mid);
                if dv == 0.0 || v <= 0.0 || one_minus_v <= 0.0 {
                    return 0.0;
                }
                // treat argument v + x; when x < 0, lo + x = 0 exactly
                let (s, _) = t.sin_cos();
                let u = p + width * s * s;
                let h = inc_beta_xy(a1, b1, u, 1.0 - u) - h_lo;
                ln_f2(v, one_minus_v).exp() * h * dv
            },
            0.0,
            SIN2_RANGE,
            grid_points,
        )
    };
    let upper = {
        let width = hi - mid;
        quadrature::simpson(
            |t| {
                let (v, one_minus_v, dv) = sin2_map(t, mid, width, p);
                if dv == 0.0 || v <= 0.0 || one_minus_v <= 0.0 {
                    return 0.0;
                }
                let (_, c) = t.sin_cos();
                let one_minus_u = q + width * c * c;
                let u = v + x;
                let h = inc_beta_xy(a1, b1, u, one_minus_u) - h_hi;
                ln_f2(v, one_minus_v).exp() * h * dv
            },
            0.0,
            SIN2_RANGE,
            grid_points,
        )
    };
    let value = tail + h_lo * mass_lower + h_hi * mass_upper + lower.value + upper.value;
    Estimate {
        value: value.clamp(0.0, 1.0),
        error: lower.error + upper.error,
    }
}

/// Appell-F1 closed form of the difference density. `one_minus_x` and
/// `one_plus_x` are passed separately so that arguments near ±1 keep their
/// precision.
pub(crate) fn closed_form_pdf(
    d: &BetaDifference,
    x: f64,
    one_minus_x: f64,
    one_plus_x: f64,
    ctl: &SeriesControl,
) -> Result<f64> {
    let (a1, b1) = (d.treat.a, d.treat.b);
    let (a2, b2) = (d.control.a, d.control.b);
    let ln_a = d.treat.ln_norm() + d.control.ln_norm();
    let total = a1 + a2 + b1 + b2 - 2.0;

    let (ln_front, series) = if x == 0.0 {
        if a1 + a2 > 1.0 && b1 + b2 > 1.0 {
            return Ok((ln_beta(a1 + a2 - 1.0, b1 + b2 - 1.0) - ln_a).exp());
        }
        return Ok(f64::INFINITY);
    } else if x > 0.0 {
        let f = appell_f1(
            b1,
            total,
            1.0 - a1,
            b1 + a2,
            one_minus_x,
            one_minus_x * one_plus_x,
            ctl,
        )?;
        let front = ln_beta(a2, b1) - ln_a + (b1 + b2 - 1.0) * x.ln() + (a2 + b1 - 1.0) * one_minus_x.ln();
        (front, f)
    } else {
        let f = appell_f1(
            b2,
            1.0 - a2,
            total,
            a1 + b2,
            one_minus_x * one_plus_x,
            one_plus_x,
            ctl,
        )?;
        let front = ln_beta(a1, b2) - ln_a + (b1 + b2 - 1.0) * (-x).ln() + (a1 + b2 - 1.0) * one_plus_x.ln();
        (front, f)
    };
    if series < 0.0 {
        return Err(Error::Cancellation {
            max_term: f64::NAN,
            sum: series,
        });
    }
    Ok(ln_front.exp() * series)
}

/// P(ϑ < x) from the closed-form density: 1 − ∫ₓ¹ p for x ≥ 0 and
/// ∫₋₁ˣ p for x < 0, so the density is only evaluated on the side of x
/// away from zero, where the series arguments stay inside the unit disk.
fn closed_form_cdf(d: &BetaDifference, x: f64, ctl: &SeriesControl) -> Result<Estimate> {
    if x == 0.0 {
        return Err(Error::NonConvergence { terms: 0 });
    }
    let mut failure: Option<Error> = None;
    let width = 1.0 - x.abs();
    let upper_side = x > 0.0;
    let q = quadrature::adaptive(
        |t: f64| {
            if failure.is_some() {
                return 0.0;
            }
            let (s, c) = t.sin_cos();
            // y runs from x towards the nearer of ±1, keeping 1 ∓ y exact there
            let (y, one_minus_y, one_plus_y) = if upper_side {
                let y = x + width * s * s;
                (y, width * c * c, 1.0 + y)
            } else {
                let y = x - width * s * s;
                (y, 1.0 - y, width * c * c)
            };
            match closed_form_pdf(d, y, one_minus_y, one_plus_y, ctl) {
                Ok(v) => v * 2.0 * width * s * c,
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        0.0,
        SIN2_RANGE,
        1e-11,
        1e-11,
        400,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let value = if upper_side { 1.0 - q.value } else { q.value };
    Ok(Estimate {
        value: value.clamp(0.0, 1.0),
        error: q.error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_diff() -> BetaDifference {
        BetaDifference::new(BetaParams::uniform(), BetaParams::uniform())
    }

    #[test]
    fn update_examples() {
        let post = update_beta(BetaParams::uniform(), ArmCounts::treatment(0, 150).unwrap());
        assert_eq!(post, BetaParams::new(1.0, 151.0).unwrap());
        let post = update_beta(BetaParams::uniform(), ArmCounts::treatment(3, 100).unwrap());
        assert_eq!(post, BetaParams::new(4.0, 98.0).unwrap());
        let prior = near_zero_prior(NearZeroPriorSpec { p_a_sq: 0.1 }).unwrap();
        let post = update_beta(prior, ArmCounts::control(2, 50).unwrap());
        assert!((post.a() - (1.0 / 9.0 + 2.0)).abs() < 1e-15);
        assert_eq!(post.b(), 49.0);
        assert!(ArmCounts::treatment(5, 4).is_err());
    }

    #[test]
    fn near_zero_prior_examples() {
        let p = near_zero_prior(NearZeroPriorSpec { p_a_sq: 0.5 }).unwrap();
        assert_eq!(p, BetaParams::uniform());
        let p = near_zero_prior(NearZeroPriorSpec { p_a_sq: 0.1 }).unwrap();
        assert!((p.a() - 1.0 / 9.0).abs() < 1e-16);
        let p = near_zero_prior(NearZeroPriorSpec { p_a_sq: 0.001 }).unwrap();
        assert!((p.a() - 0.001 / 0.999).abs() < 1e-18);
        assert!(p.a() < 1.0, "mode at zero requires a < 1");
        assert!(near_zero_prior(NearZeroPriorSpec { p_a_sq: 0.0 }).is_err());
        assert!(near_zero_prior(NearZeroPriorSpec { p_a_sq: 1.0 }).is_err());
    }

    #[test]
    fn triangular_density() {
        let d = uniform_diff();
        for &x in &[-0.9, -0.5, 0.0, 0.25, 0.5, 0.99] {
            let got = diff_pdf(&d, x, EvalMethod::default()).unwrap();
            assert!((got - (1.0 - f64::abs(x))).abs() < 1e-10, "x={x} got={got}");
        }
        assert!(diff_pdf(&d, 1.0, EvalMethod::default()).is_err());
    }

    #[test]
    fn triangular_cdf() {
        let d = uniform_diff();
        let c = diff_cdf(&d, 0.5, EvalMethod::default()).unwrap();
        assert!((c - 0.875).abs() < 1e-12);
        let c = diff_cdf(&d, -0.5, EvalMethod::default()).unwrap();
        assert!((c - 0.125).abs() < 1e-12);
        assert_eq!(diff_cdf(&d, -1.0, EvalMethod::default()).unwrap(), 0.0);
        assert_eq!(diff_cdf(&d, 1.0, EvalMethod::default()).unwrap(), 1.0);
    }

    #[test]
    fn exchangeable_arms_give_one_half() {
        for &(a, b) in &[(0.5, 0.5), (3.0, 40.0), (98.0, 4.0)] {
            let p = BetaParams::new(a, b).unwrap();
            let d = BetaDifference::new(p, p);
            let c = diff_cdf(&d, 0.0, EvalMethod::default()).unwrap();
            assert!((c - 0.5).abs() < 1e-8, "({a},{b}): {c}");
        }
    }

    #[test]
    fn closed_form_matches_triangle() {
        let d = uniform_diff();
        for &x in &[-0.7, -0.2, 0.3, 0.8] {
            let got = diff_pdf(&d, x, EvalMethod::ClosedForm).unwrap();
            assert!((got - (1.0 - f64::abs(x))).abs() < 1e-12, "x={x} got={got}");
        }
        assert!((diff_pdf(&d, 0.0, EvalMethod::ClosedForm).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn closed_form_beta21_against_direct_integral() {
        // θ1 ~ Beta(2,1), θ2 ~ U(0,1): p(x) = 1 − x² for x > 0, (1 + x)² for x < 0
        let d = BetaDifference::new(BetaParams::new(2.0, 1.0).unwrap(), BetaParams::uniform());
        for &x in &[-0.6, -0.1, 0.2, 0.7] {
            let exact = if x > 0.0 { 1.0 - x * x } else { (1.0 + x) * (1.0 + x) };
            let cf = diff_pdf(&d, x, EvalMethod::ClosedForm).unwrap();
            let cv = diff_pdf(&d, x, EvalMethod::default()).unwrap();
            assert!((cf - exact).abs() < 1e-10, "closed x={x}: {cf} vs {exact}");
            assert!((cv - exact).abs() < 1e-10, "conv x={x}: {cv} vs {exact}");
        }
    }

    #[test]
    fn closed_form_cdf_refuses_zero() {
        assert!(diff_cdf(&uniform_diff(), 0.0, EvalMethod::ClosedForm)
            .unwrap_err()
            .is_series_failure());
    }

    #[test]
    fn method_validation() {
        let d = uniform_diff();
        assert!(diff_cdf(&d, 0.1, EvalMethod::Convolution { grid_points: 64 }).is_err());
        assert!(diff_cdf(&d, 0.1, EvalMethod::Convolution { grid_points: 63 }).is_err());
        assert!(diff_cdf(&d, 0.1, EvalMethod::MonteCarlo { samples: 10, seed: 1 }).is_err());
    }

    #[test]
    fn normal_approx_moments() {
        let d = BetaDifference::new(BetaParams::new(4.0, 98.0).unwrap(), BetaParams::new(2.0, 100.0).unwrap());
        let c = diff_cdf(&d, d.mean(), EvalMethod::NormalApprox).unwrap();
        assert!((c - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tiny_shape_cdf_is_finite() {
        let prior = near_zero_prior(NearZeroPriorSpec { p_a_sq: 0.001 }).unwrap();
        let t = update_beta(prior, ArmCounts::treatment(1, 80).unwrap());
        let c = update_beta(prior, ArmCounts::control(0, 80).unwrap());
        let d = BetaDifference::new(t, c);
        let v = diff_cdf(&d, 0.02, EvalMethod::default()).unwrap();
        let mc = diff_cdf(&d, 0.02, EvalMethod::MonteCarlo { samples: 400_000, seed: 9 }).unwrap();
        assert!((v - mc).abs() < 0.005, "{v} vs {mc}");
    }
}
