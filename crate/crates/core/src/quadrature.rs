//! One-dimensional quadrature: composite Simpson on a fixed grid and an
//! adaptive Gauss–Kronrod (7/15) bisection scheme.

use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    pub evaluations: usize,
}

/// Composite Simpson rule on `points` equally spaced nodes (odd, ≥ 3).
///
/// The error estimate is the Richardson difference against the same rule on
/// every other node.
pub fn simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, points: usize) -> Quadrature {
    assert!(points >= 5 && points % 2 == 1, "simpson needs an odd node count >= 5");
    let panels = points - 1;
    let h = (b - a) / panels as f64;
    let mut fine = 0.0;
    let mut coarse = 0.0;
    for k in 0..points {
        let x = if k == panels { b } else { a + h * k as f64 };
        let fx = f(x);
        let wf = if k == 0 || k == panels {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        fine += wf * fx;
        if k % 2 == 0 {
            let j = k / 2;
            let half = panels / 2;
            let wc = if j == 0 || j == half {
                1.0
            } else if j % 2 == 1 {
                4.0
            } else {
                2.0
            };
            coarse += wc * fx;
        }
    }
    fine *= h / 3.0;
    // the coarse rule is only a valid Simpson rule for an even panel count
    let error = if (panels / 2) % 2 == 0 {
        coarse *= 2.0 * h / 3.0;
        (fine - coarse).abs() / 15.0
    } else {
        f64::NAN
    };
    Quadrature {
        value: fine,
        error,
        evaluations: points,
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive Gauss–Kronrod integration by repeated bisection of the interval
/// with the largest error estimate. Nodes are interior, so integrable
/// endpoint singularities never get evaluated directly.
pub fn adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Quadrature {
    let (v, e) = gk15(&mut f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    let mut evaluations = 15;
    loop {
        let value: f64 = intervals.iter().map(|s| s.2).sum();
        let error: f64 = intervals.iter().map(|s| s.3).sum();
        if error <= abs_tol.max(rel_tol * value.abs())
            || intervals.len() >= max_intervals
            || !error.is_finite()
        {
            return Quadrature {
                value,
                error,
                evaluations,
            };
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let (lo, hi, _, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval can no longer be split in floating point
            let value: f64 = intervals.iter().map(|s| s.2).sum::<f64>();
            return Quadrature {
                value: value + gk15(&mut f, lo, hi).0,
                error,
                evaluations: evaluations + 15,
            };
        }
        let (v1, e1) = gk15(&mut f, lo, mid);
        let (v2, e2) = gk15(&mut f, mid, hi);
        evaluations += 30;
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
}

/// The map t ↦ lo + (hi − lo)·sin²t on [0, π/2], returned as
/// (u, 1 − u measured from `one_minus_hi`, du/dt).
///
/// `one_minus_hi` must equal 1 − hi; passing it separately keeps 1 − u exact
/// near the upper end where the beta kernels are most sensitive.
#[inline]
pub(crate) fn sin2_map(t: f64, lo: f64, width: f64, one_minus_hi: f64) -> (f64, f64, f64) {
    let (s, c) = t.sin_cos();
    let u = lo + width * s * s;
    let one_minus_u = one_minus_hi + width * c * c;
    (u, one_minus_u, 2.0 * width * s * c)
}

pub(crate) const SIN2_RANGE: f64 = FRAC_PI_2;
