use proptest::prelude::*;

use pedsafe::development::{
    bin_baseline, bin_change, max_change_cdf, sds_threshold_confidence, BinScheme, MaxChangeModel,
    SdsSample,
};
use pedsafe::posteriors::{diff_cdf, ArmCounts, BetaDifference, BetaParams, EvalMethod};
use pedsafe::precision::{
    confidence_fold_single_arm, min_fold, pair_counts, solve_sample_size, DesignScenario, Direction,
    Hypothesis, ReferenceEstimate, SolveOptions, WinOddsTable,
};
use pedsafe::specfun::{appell_f1, gauss_2f1, ln_gamma, normal_cdf, reg_inc_beta, student_t_cdf, SeriesControl};

fn shape() -> impl Strategy<Value = f64> {
    prop_oneof![0.3f64..1.0, 1.0f64..10.0, 10.0f64..300.0]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn inc_beta_reflection(a in shape(), b in shape(), x in 0.0f64..=1.0) {
        let s = reg_inc_beta(a, b, x).unwrap() + reg_inc_beta(b, a, 1.0 - x).unwrap();
        prop_assert!((s - 1.0).abs() < 1e-12, "sum {}", s);
    }

    #[test]
    fn inc_beta_monotone(a in shape(), b in shape(), x in 0.0f64..0.99, dx in 0.0f64..0.01) {
        prop_assert!(reg_inc_beta(a, b, x + dx).unwrap() >= reg_inc_beta(a, b, x).unwrap() - 1e-15);
    }

    #[test]
    fn ln_gamma_recurrence(x in 0.01f64..150.0) {
        let lhs = ln_gamma(x + 1.0).unwrap();
        let rhs = ln_gamma(x).unwrap() + x.ln();
        prop_assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn appell_reductions(u in 0.2f64..3.0, v1 in -1.0f64..2.0, v2 in -1.0f64..2.0, w in 0.5f64..4.0,
                         x1 in -0.6f64..0.6, x2 in -0.6f64..0.6) {
        let ctl = SeriesControl::default();
        let f = appell_f1(u, v1, v2, w, x1, 0.0, &ctl).unwrap();
        let g = gauss_2f1(u, v1, w, x1).unwrap();
        prop_assert!((f - g).abs() <= 1e-10 * g.abs().max(1.0));
        let f = appell_f1(u, v1, v1, w, x2, x2, &ctl).unwrap();
        let g = gauss_2f1(u, 2.0 * v1, w, x2).unwrap();
        prop_assert!((f - g).abs() <= 1e-10 * g.abs().max(1.0));
    }

    #[test]
    fn t_approaches_normal(t in -4.0f64..4.0) {
        prop_assert!((student_t_cdf(t, 1e6).unwrap() - normal_cdf(t)).abs() <= 1e-5);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn diff_cdf_arm_swap(a1 in shape(), b1 in shape(), a2 in shape(), b2 in shape(), x in -0.9f64..0.9) {
        let d = BetaDifference::new(BetaParams::new(a1, b1).unwrap(), BetaParams::new(a2, b2).unwrap());
        let m = EvalMethod::default();
        let lhs = diff_cdf(&d, x, m).unwrap();
        let rhs = 1.0 - diff_cdf(&d.swapped(), -x, m).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-6, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn diff_cdf_monotone(a1 in shape(), b1 in shape(), a2 in shape(), b2 in shape(),
                         x in -0.95f64..0.9, dx in 0.0f64..0.05) {
        let d = BetaDifference::new(BetaParams::new(a1, b1).unwrap(), BetaParams::new(a2, b2).unwrap());
        let m = EvalMethod::default();
        let lo = diff_cdf(&d, x, m).unwrap();
        let hi = diff_cdf(&d, x + dx, m).unwrap();
        prop_assert!(hi >= lo - 1e-9, "{} < {}", hi, lo);
        prop_assert!((0.0..=1.0).contains(&lo));
    }

    #[test]
    fn normal_approx_close_for_large_shapes(a1 in 20.0f64..300.0, b1 in 20.0f64..300.0,
                                            a2 in 20.0f64..300.0, b2 in 20.0f64..300.0, z in -2.0f64..2.0) {
        let d = BetaDifference::new(BetaParams::new(a1, b1).unwrap(), BetaParams::new(a2, b2).unwrap());
        let x = d.mean() + z * d.variance().sqrt();
        let conv = diff_cdf(&d, x, EvalMethod::default()).unwrap();
        let norm = diff_cdf(&d, x, EvalMethod::NormalApprox).unwrap();
        prop_assert!((conv - norm).abs() <= 0.02, "{} vs {}", conv, norm);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn single_arm_ordering(n in 1u64..400, r in 0u64..20, f1 in 1.01f64..20.0, df in 0.0f64..5.0) {
        prop_assume!(r < n);
        let reference = ReferenceEstimate::proportion(0.01).unwrap();
        let prior = BetaParams::uniform();
        let c = |r: u64, f: f64| confidence_fold_single_arm(ArmCounts::treatment(r, n).unwrap(), prior, &reference, f)
            .unwrap().confidence;
        let f2 = (f1 + df).min(100.0);
        prop_assert!(c(r, f2) >= c(r, f1) - 1e-15);
        prop_assert!(c(r + 1, f1) <= c(r, f1) + 1e-15);
    }

    #[test]
    fn min_fold_brackets_target(n in 10u64..400, r in 0u64..6, target in 0.5f64..0.97) {
        prop_assume!(r <= n);
        let reference = ReferenceEstimate::proportion(0.01).unwrap();
        let prior = BetaParams::uniform();
        let data = ArmCounts::treatment(r, n).unwrap();
        if let Ok(f) = min_fold(data, prior, &reference, target) {
            let c = |f: f64| confidence_fold_single_arm(data, prior, &reference, f).unwrap().confidence;
            prop_assert!(c(f) >= target);
            if f > 1.0 + 1e-4 {
                prop_assert!(c(f - 1e-4) < target);
            }
        }
    }

    #[test]
    fn sds_confidence_orderings(n in 2usize..300, mean in -1.0f64..0.5, s in 0.2f64..3.0, tau in 0.05f64..1.0,
                                d in 0.001f64..0.5) {
        let c = |n: usize, mean: f64, s: f64, tau: f64| {
            sds_threshold_confidence(&SdsSample::from_summary(n, mean, s * s).unwrap(), tau).unwrap().confidence
        };
        let base = c(n, mean, s, tau);
        prop_assert!(c(n, mean + d, s, tau) >= base);
        prop_assert!(c(n, mean, s, tau + d) >= base);
        if mean > -tau {
            prop_assert!(c(n, mean, s + d, tau) <= base);
        }
    }

    #[test]
    fn max_change_cdf_orderings(n in 1u32..30, mu in -1.0f64..1.0, sigma in 0.1f64..3.0, x in -3.0f64..3.0, dx in 0.0f64..1.0) {
        let m = MaxChangeModel::new(n, mu, sigma).unwrap();
        let m2 = MaxChangeModel::new(n + 1, mu, sigma).unwrap();
        prop_assert!(max_change_cdf(&m, x + dx) >= max_change_cdf(&m, x));
        prop_assert!(max_change_cdf(&m2, x) <= max_change_cdf(&m, x));
    }

    #[test]
    fn binning_is_total(v in proptest::num::f64::NORMAL | proptest::num::f64::ZERO | proptest::num::f64::INFINITE) {
        let s = BinScheme::default();
        let b = bin_baseline(v, &s);
        prop_assert!(b < s.baseline_bins());
        let e = s.baseline_edges();
        prop_assert!(e[b] < v && v <= e[b + 1] || v == f64::NEG_INFINITY && b == 0);
        let c = bin_change(v, &s);
        prop_assert!(c < s.change_bins());
    }
}

fn outcome_table() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<Vec<f64>>, Vec<Direction>)> {
    (1usize..=3).prop_flat_map(|k| {
        let row = proptest::collection::vec((0i32..4).prop_map(f64::from), k);
        (
            proptest::collection::vec(row.clone(), 1..8),
            proptest::collection::vec(row, 1..8),
            proptest::collection::vec(prop_oneof![Just(Direction::LargerWins), Just(Direction::SmallerWins)], k),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn win_odds_counts_and_swap((a, b, dirs) in outcome_table()) {
        let t = WinOddsTable::new(a.clone(), b.clone(), dirs).unwrap();
        let c = pair_counts(&t);
        prop_assert_eq!(c.total(), (a.len() * b.len()) as u64);
        let s = pair_counts(&t.swapped());
        prop_assert_eq!((s.wins, s.losses, s.ties), (c.losses, c.wins, c.ties));
    }

    #[test]
    fn win_odds_monotone_invariance((a, b, dirs) in outcome_table(), comp in 0usize..3) {
        let k = dirs.len();
        let comp = comp % k;
        let g = |v: f64| v * v * v + 2.0 * v - 7.0;
        let map = |rows: &Vec<Vec<f64>>| rows.iter().map(|r| {
            let mut r = r.clone();
            r[comp] = g(r[comp]);
            r
        }).collect::<Vec<_>>();
        let t = WinOddsTable::new(a.clone(), b.clone(), dirs.clone()).unwrap();
        let u = WinOddsTable::new(map(&a), map(&b), dirs).unwrap();
        prop_assert_eq!(pair_counts(&t), pair_counts(&u));
    }
}

#[test]
fn zero_event_confidence_increases_with_n() {
    let reference = ReferenceEstimate::proportion(0.01).unwrap();
    let mut last = 0.0;
    for n in (10..=300).step_by(10) {
        let c = confidence_fold_single_arm(ArmCounts::treatment(0, n).unwrap(), BetaParams::uniform(), &reference, 2.0)
            .unwrap()
            .confidence;
        assert!(c > last, "n={n}");
        last = c;
    }
}

#[test]
fn solver_returns_first_achieving_n() {
    let s = DesignScenario::two_arm(0.01, 0.02, Hypothesis::Fold(3.0), 0.01, 0.8).unwrap();
    let sol = solve_sample_size(&s, SolveOptions::default()).unwrap();
    assert!(sol.achieved >= 0.8);
    for n in (2..sol.n_total).step_by(2) {
        let c = pedsafe::precision::plug_in_confidence(&s, n).unwrap().confidence;
        assert!(c < 0.8, "n={n} already achieves {c}");
    }
}

#[test]
fn beta_sampler_matches_cdf() {
    use pedsafe::montecarlo::{ks_test, sample_beta, RngStream};
    for (k, (a, b)) in [(0.5, 0.5), (1.0, 151.0), (4.0, 98.0), (200.0, 20.0)].into_iter().enumerate() {
        let p = BetaParams::new(a, b).unwrap();
        let mut rng = RngStream::new(314, k as u64);
        let mut xs = sample_beta(p, &mut rng, 200_000);
        let ks = ks_test(&mut xs, |x| p.cdf(x));
        assert!(ks.p_value > 1e-4, "Beta({a}, {b}): D = {}, p = {}", ks.statistic, ks.p_value);
    }
}
