use equinum::indicators::*;
use equinum::oracle::{cross_check_report, verify_sum_squares_bounds};
use equinum::Distribution;
use proptest::prelude::*;

fn weights() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 5 => 1e-6..1.0f64], 1..=16)
        .prop_filter("needs mass", |w| w.iter().any(|&x| x > 0.0))
}

/// Random distributions, complete or scaled down to an incomplete total.
fn distribution() -> impl Strategy<Value = Distribution> {
    (weights(), prop_oneof![Just(1.0), 0.05..1.0f64]).prop_map(|(w, scale)| {
        let s: f64 = w.iter().sum();
        Distribution::new(w.iter().map(|x| x / s * scale).collect(), None).unwrap()
    })
}

fn complete() -> impl Strategy<Value = Distribution> {
    weights().prop_map(|w| {
        let s: f64 = w.iter().sum();
        Distribution::new(w.iter().map(|x| x / s).collect(), None).unwrap()
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn duality_holds(d in distribution()) {
        let c = duality_check(&d).unwrap();
        prop_assert!(c.residual <= 1e-12, "{}", c.residual);
        prop_assert!(c.log_residual <= 1e-12, "{}", c.log_residual);
    }

    #[test]
    fn g_minus_one_is_cv_squared(d in distribution()) {
        let cv = coefficient_of_variation(&d).unwrap();
        let g = equivalent_number_g(&d).unwrap();
        prop_assert!(((g - 1.0) - cv * cv).abs() <= 1e-12 * (cv * cv).max(1.0));
    }

    #[test]
    fn cv_paths_agree(d in distribution()) {
        let n = d.len() as f64;
        let ss: f64 = d.probs().iter().map(|p| p * p).sum();
        let closed = (n * ss / (d.total() * d.total()) - 1.0).max(0.0).sqrt();
        let cv = coefficient_of_variation(&d).unwrap();
        // the closed form amplifies rounding by about G/CV²
        prop_assume!(closed > 0.1);
        prop_assert!(rel(cv, closed) <= 1e-12, "{cv} vs {closed}");
    }

    #[test]
    fn f_is_base_independent(d in distribution()) {
        let nats: f64 = d.probs().iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum::<f64>() / d.total();
        let f = average_number_f(&d).unwrap();
        prop_assert!(rel(f, nats.exp()) <= 1e-12);
    }

    #[test]
    fn variance_never_exceeds_reference(d in distribution()) {
        prop_assert!(variance(&d) <= reference_variance(&d) + 1e-12);
    }

    #[test]
    fn complete_bounds(d in complete()) {
        let n = d.len() as f64;
        let r = analyze(&d).unwrap();
        let eps = 1e-12;
        prop_assert!(r.avg_number_f >= 1.0 - eps && r.avg_number_f <= n * (1.0 + eps));
        prop_assert!(r.equiv_number_d >= 1.0 - eps && r.equiv_number_d <= n * (1.0 + eps));
        prop_assert!(r.equiv_number_g >= 1.0 - eps && r.equiv_number_g <= n * (1.0 + eps));
        prop_assert!(r.cv <= (n - 1.0).sqrt() + eps);
        prop_assert!(r.entropy_bits <= n.log2() + eps);
        prop_assert!(r.cv_rel <= 1.0 + eps && r.entropy_rel <= 1.0 + eps);
        prop_assert!(verify_sum_squares_bounds(&d).unwrap().passed);
    }

    #[test]
    fn cross_check_passes(d in distribution()) {
        let r = cross_check_report(&d).unwrap();
        prop_assert!(r.passed, "{:?}", r);
    }

    #[test]
    fn zero_padding(d in distribution()) {
        let before = analyze(&d).unwrap();
        let padded = d.with_impossible_outcome(None).unwrap();
        let after = analyze(&padded).unwrap();
        prop_assert!(rel(after.entropy_bits, before.entropy_bits) <= 1e-12 || after.entropy_bits == before.entropy_bits);
        prop_assert!(rel(after.avg_number_f, before.avg_number_f) <= 1e-12);
        prop_assert!(rel(after.equiv_number_d, before.equiv_number_d) <= 1e-12);
        prop_assert_eq!(after.n_outcomes, before.n_outcomes + 1);
        prop_assert_eq!(after.equiv_number_g, after.cv * after.cv + 1.0);
        let n = before.n_outcomes as f64;
        prop_assert!(rel(after.equiv_number_g, before.equiv_number_g * (n + 1.0) / n) <= 1e-12);
    }

    #[test]
    fn permutation_invariance(d in distribution(), seed in any::<u64>()) {
        let mut p = d.probs().to_vec();
        // deterministic shuffle
        let mut s = seed | 1;
        for i in (1..p.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            p.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let a = analyze(&d).unwrap();
        let b = analyze(&Distribution::new(p, None).unwrap()).unwrap();
        for (x, y) in [
            (a.cv, b.cv), (a.variance, b.variance), (a.entropy_bits, b.entropy_bits),
            (a.avg_number_f, b.avg_number_f), (a.equiv_number_d, b.equiv_number_d),
            (a.equiv_number_g, b.equiv_number_g), (a.p_total, b.p_total),
        ] {
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0), "{x} vs {y}");
        }
    }

    #[test]
    fn single_precision_tracks_double(d in complete()) {
        let p32: Vec<f32> = d.probs().iter().map(|&x| x as f32).collect();
        let Ok(d32) = Distribution::new(p32, None) else { return Ok(()) };
        let (a, b) = (analyze(&d).unwrap(), analyze(&d32).unwrap());
        prop_assert!(rel(b.equiv_number_d as f64, a.equiv_number_d) <= 1e-4);
        prop_assert!(rel(b.avg_number_f as f64, a.avg_number_f) <= 1e-4);
    }
}

#[test]
fn limit_case_equivalences() {
    use equinum::distributions::{degenerate, uniform};
    for n in 1..=16 {
        let u = analyze(&uniform::<f64>(n).unwrap()).unwrap();
        let nf = n as f64;
        assert!(u.cv <= 1e-12 && (u.equiv_number_d - nf).abs() <= 1e-12 * nf);
        assert!(
            (u.avg_number_f - nf).abs() <= 1e-12 * nf && (u.equiv_number_g - 1.0).abs() <= 1e-12
        );

        let g = analyze(&degenerate::<f64>(n, n - 1).unwrap()).unwrap();
        assert_eq!(g.entropy_bits, 0.0);
        assert_eq!(g.avg_number_f, 1.0);
        assert_eq!(g.equiv_number_d, 1.0);
        assert!((g.equiv_number_g - nf).abs() <= 1e-12 * nf);
    }
    // a non-uniform complete vector is strictly inside on every indicator
    let r = analyze(&Distribution::new(vec![0.6, 0.3, 0.1], None).unwrap()).unwrap();
    assert!(r.cv > 0.0 && r.equiv_number_d < 3.0 && r.avg_number_f < 3.0 && r.equiv_number_g > 1.0);
    assert!(
        r.entropy_bits > 0.0
            && r.avg_number_f > 1.0
            && r.equiv_number_d > 1.0
            && r.equiv_number_g < 3.0
    );
}
