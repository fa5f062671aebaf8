//! Special functions used by every probability computation in the crate.
//!
//! Gamma and beta arithmetic is carried out in log space throughout: the
//! posterior shape parameters grow with the sample size and direct
//! evaluation of Γ overflows long before the parameters of interest do.

use std::f64::consts::{E, PI};

use crate::error::{Error, Result};

/// Truncation control for the hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            rel_tol: 1e-13,
            max_terms: 200_000,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(Error::domain(format!("rel_tol must be positive, got {rel_tol}")));
        }
        if max_terms == 0 {
            return Err(Error::domain("max_terms must be at least 1"));
        }
        Ok(SeriesControl { rel_tol, max_terms })
    }
}

/// Arguments with modulus above this are refused by the double series; the
/// caller is expected to fall back to quadrature.
pub const SERIES_BOUNDARY: f64 = 0.999;

/// Number of consecutive negligible anti-diagonals required to stop.
const STABILITY_WINDOW: usize = 3;

/// Largest tolerated ratio between the biggest term and the final sum.
/// Beyond this, fewer than ten significant digits survive cancellation.
const MAX_AMPLIFICATION: f64 = 1e6;

const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_2_SQRT_E_OVER_PI: f64 = 0.620_782_237_635_245_2;
const LANCZOS_R: f64 = 10.900511;
const LANCZOS_DK: [f64; 11] = [
    2.485_740_891_387_535_5e-5,
    1.051_423_785_817_219_7,
    -3.456_870_972_220_162_5,
    4.512_277_094_668_948,
    -2.982_852_253_235_766_4,
    1.056_397_115_771_267,
    -1.954_287_731_916_458_7e-1,
    1.709_705_434_044_412e-2,
    -5.719_261_174_043_057e-4,
    4.633_994_733_599_057e-6,
    -2.719_949_084_886_077_2e-9,
];

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    Ok(lgamma(x))
}

/// Lanczos approximation (Pugh's g = 10.900511 coefficient set).
pub(crate) fn lgamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = LANCZOS_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_DK[0], |s, (k, d)| s + d / (k as f64 - x));
        LN_PI
            - (PI * x).sin().ln()
            - s.ln()
            - LN_2_SQRT_E_OVER_PI
            - (0.5 - x) * ((0.5 - x + LANCZOS_R) / E).ln()
    } else {
        let s = LANCZOS_DK
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_DK[0], |s, (k, d)| s + d / (x + k as f64 - 1.0));
        s.ln() + LN_2_SQRT_E_OVER_PI + (x - 0.5) * ((x - 0.5 + LANCZOS_R) / E).ln()
    }
}

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// ln Γ(x) − Stirling's approximation, for x ≥ 10.
fn stirling_correction(x: f64) -> f64 {
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let r = 1.0 / (x * x);
    C.iter().rev().fold(0.0, |acc, &c| acc * r + c) / x
}

/// ln B(a, b). Large shapes go through Stirling corrections so the
/// O(a ln a) parts cancel analytically rather than in floating point.
pub(crate) fn ln_beta(a: f64, b: f64) -> f64 {
    let (p, q) = if a < b { (a, b) } else { (b, a) };
    let s = p + q;
    if p >= 10.0 {
        let corr = stirling_correction(p) + stirling_correction(q) - stirling_correction(s);
        -0.5 * q.ln() + LN_SQRT_2PI + corr + (p - 0.5) * (p / s).ln() + q * (-p / s).ln_1p()
    } else if q >= 10.0 {
        let corr = stirling_correction(q) - stirling_correction(s);
        lgamma(p) + corr + p - p * s.ln() + (q - 0.5) * (-p / s).ln_1p()
    } else {
        lgamma(a) + lgamma(b) - lgamma(a + b)
    }
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta_fn(a: f64, b: f64) -> Result<f64> {
    check_shapes(a, b)?;
    Ok(ln_beta(a, b).exp())
}

fn check_shapes(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!(
            "shape parameters must be positive and finite, got ({a}, {b})"
        )));
    }
    Ok(())
}

/// Regularized incomplete beta function I_x(a, b).
pub fn reg_inc_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    check_shapes(a, b)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("reg_inc_beta requires x in [0,1], got {x}")));
    }
    Ok(inc_beta(a, b, x))
}

pub(crate) fn inc_beta(a: f64, b: f64, x: f64) -> f64 {
    inc_beta_xy(a, b, x, 1.0 - x)
}

/// I_x(a, b) given both x and y = 1 - x. Callers that know 1 - x more
/// accurately than the subtraction would give should pass it here.
pub(crate) fn inc_beta_xy(a: f64, b: f64, x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if y <= 0.0 {
        return 1.0;
    }
    if x > (a + 1.0) / (a + b + 2.0) {
        return 1.0 - inc_beta_xy(b, a, y, x);
    }
    let ln_x = if y < 0.5 { (-y).ln_1p() } else { x.ln() };
    let ln_y = if x < 0.5 { (-x).ln_1p() } else { y.ln() };
    let ln_front = a * ln_x + b * ln_y - ln_beta(a, b);
    ln_front.exp() * beta_continued_fraction(a, b, x) / a
}

/// Modified Lentz evaluation of the incomplete beta continued fraction.
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let max_iter = 1000 + 20 * (a.max(b).sqrt() as usize);

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let clamp = |v: f64| if v.abs() < TINY { TINY } else { v };

    let mut c = 1.0;
    let mut d = 1.0 / clamp(1.0 - qab * x / qap);
    let mut h = d;
    for m in 1..=max_iter {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / clamp(1.0 + aa * d);
        c = clamp(1.0 + aa / c);
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

fn check_hyper_denominator(w: f64) -> Result<()> {
    if w <= 0.0 && w.fract() == 0.0 {
        return Err(Error::domain(format!(
            "lower parameter must not be a nonpositive integer, got {w}"
        )));
    }
    Ok(())
}

/// Gauss hypergeometric function ₂F₁(u, v; w; x) for |x| < 1, with the
/// default series control.
pub fn gauss_2f1(u: f64, v: f64, w: f64, x: f64) -> Result<f64> {
    gauss_2f1_with(u, v, w, x, &SeriesControl::default())
}

pub fn gauss_2f1_with(u: f64, v: f64, w: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    if !(x.abs() < 1.0) {
        return Err(Error::domain(format!("2F1 requires |x| < 1, got {x}")));
    }
    check_hyper_denominator(w)?;

    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut max_abs = 1.0_f64;
    let mut quiet = 0;
    for k in 0..ctl.max_terms {
        let k = k as f64;
        term *= (u + k) * (v + k) / ((w + k) * (k + 1.0)) * x;
        sum += term;
        max_abs = max_abs.max(term.abs());
        if !sum.is_finite() {
            return Err(Error::NonConvergence { terms: k as usize + 1 });
        }
        if term == 0.0 {
            break;
        }
        if term.abs() <= ctl.rel_tol * sum.abs() {
            quiet += 1;
            if quiet >= STABILITY_WINDOW {
                return finish_series(sum, max_abs);
            }
        } else {
            quiet = 0;
        }
    }
    if term == 0.0 {
        return finish_series(sum, max_abs);
    }
    Err(Error::NonConvergence {
        terms: ctl.max_terms,
    })
}

fn finish_series(sum: f64, max_abs: f64) -> Result<f64> {
    if max_abs > MAX_AMPLIFICATION * sum.abs() {
        return Err(Error::Cancellation { max_term: max_abs, sum });
    }
    Ok(sum)
}

/// Appell's first hypergeometric function F₁(u; v₁, v₂; w; x₁, x₂).
///
/// The double series is accumulated along anti-diagonals i + j = m. Each
/// term is obtained from its neighbour on the previous anti-diagonal, so a
/// diagonal costs O(m) multiplications. Summation stops once
/// `STABILITY_WINDOW` consecutive diagonals have an absolute mass below
/// `rel_tol` times the running sum.
pub fn appell_f1(
    u: f64,
    v1: f64,
    v2: f64,
    w: f64,
    x1: f64,
    x2: f64,
    ctl: &SeriesControl,
) -> Result<f64> {
    if !(x1.abs() < 1.0 && x2.abs() < 1.0) {
        return Err(Error::domain(format!(
            "F1 requires |x1| < 1 and |x2| < 1, got ({x1}, {x2})"
        )));
    }
    check_hyper_denominator(w)?;
    if x1.abs() > SERIES_BOUNDARY || x2.abs() > SERIES_BOUNDARY {
        return Err(Error::NonConvergence { terms: 0 });
    }

    // diag[i] = T(i, m - i) for the current anti-diagonal m.
    let mut diag: Vec<f64> = vec![1.0];
    let mut next: Vec<f64> = Vec::new();
    let mut sum = 1.0_f64;
    let mut max_abs = 1.0_f64;
    let mut terms = 1usize;
    let mut quiet = 0;
    let mut m = 0usize;

    loop {
        m += 1;
        if terms + m + 1 > ctl.max_terms {
            return Err(Error::NonConvergence { terms });
        }
        let mf = m as f64;
        let lead = (u + mf - 1.0) / (w + mf - 1.0);

        next.clear();
        next.push(diag[0] * lead * (v2 + mf - 1.0) / mf * x2);
        for i in 1..=m {
            let fi = i as f64;
            next.push(diag[i - 1] * lead * (v1 + fi - 1.0) / fi * x1);
        }
        std::mem::swap(&mut diag, &mut next);
        terms += m + 1;

        let mut diag_sum = 0.0;
        let mut diag_abs = 0.0;
        for &t in &diag {
            diag_sum += t;
            diag_abs += t.abs();
            max_abs = max_abs.max(t.abs());
        }
        sum += diag_sum;
        if !sum.is_finite() || !diag_abs.is_finite() {
            return Err(Error::NonConvergence { terms });
        }
        if diag_abs <= ctl.rel_tol * sum.abs() {
            quiet += 1;
            if quiet >= STABILITY_WINDOW {
                return finish_series(sum, max_abs);
            }
        } else {
            quiet = 0;
        }
    }
}

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Standard normal density φ(z).
pub fn normal_pdf(z: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * z * z).exp()
}

/// Standard normal distribution function Φ(z).
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Central Student t distribution function with `df` degrees of freedom.
pub fn student_t_cdf(t: f64, df: f64) -> Result<f64> {
    if !(df > 0.0) {
        return Err(Error::domain(format!("df must be positive, got {df}")));
    }
    if t.is_nan() {
        return Err(Error::domain("t is NaN"));
    }
    if t.is_infinite() {
        return Ok(if t > 0.0 { 1.0 } else { 0.0 });
    }
    let t2 = t * t;
    // x = df/(df+t²) and 1 - x = t²/(df+t²), both formed without cancellation.
    let x = df / (df + t2);
    let y = t2 / (df + t2);
    let tail = 0.5 * inc_beta_xy(0.5 * df, 0.5, x, y);
    Ok(if t > 0.0 { 1.0 - tail } else { tail })
}
