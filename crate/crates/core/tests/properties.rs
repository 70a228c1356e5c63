use meanlab::{
    gen_log, holder, k_mean, lambda_mean, lehmer, stolarsky, Elementary, Mean, Stabilization,
};
use proptest::prelude::*;

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

fn positive() -> impl Strategy<Value = f64> {
    (-8.0f64..8.0).prop_map(|e| 10f64.powf(e))
}

fn param() -> impl Strategy<Value = f64> {
    -6.0f64..6.0
}

/// One mean drawn from every family, elementary means included.
fn any_mean() -> impl Strategy<Value = Mean> {
    prop_oneof![
        (0..8usize).prop_map(|i| Mean::elementary(Elementary::ALL[i])),
        param().prop_map(|s| holder(s).unwrap()),
        param().prop_map(|r| lehmer(r).unwrap()),
        param().prop_map(|p| gen_log(p).unwrap()),
        (param(), param()).prop_map(|(r, s)| stolarsky(r, s).unwrap()),
        param().prop_map(|s| lambda_mean(s).unwrap()),
        (-0.99f64..6.0).prop_map(|r| k_mean(r).unwrap()),
        ((0..8usize), -4.0f64..4.0)
            .prop_filter("nonzero exponent", |(_, s)| s.abs() > 1e-3)
            .prop_map(|(i, s)| Mean::elementary(Elementary::ALL[i]).power(s).unwrap()),
        (0..8usize).prop_map(|i| Mean::elementary(Elementary::ALL[i]).dual()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn symmetric(m in any_mean(), a in positive(), b in positive()) {
        let x = m.value(a, b).unwrap();
        let y = m.value(b, a).unwrap();
        prop_assert!(rel(x, y) <= 1e-13, "{m}: {x} vs {y}");
    }

    #[test]
    fn homogeneous(m in any_mean(), a in positive(), b in positive(), c in positive()) {
        let x = m.value(c * a, c * b).unwrap();
        let y = c * m.value(a, b).unwrap();
        prop_assert!(rel(x, y) <= 1e-12, "{m}: {x} vs {y}");
    }

    #[test]
    fn between_arguments(m in any_mean(), a in positive(), b in positive()) {
        let v = m.value(a, b).unwrap();
        prop_assert!(v.is_finite());
        prop_assert!(v >= a.min(b) * (1.0 - 1e-14) && v <= a.max(b) * (1.0 + 1e-14), "{m}({a}, {b}) = {v}");
    }

    #[test]
    fn reflexive(m in any_mean(), a in positive()) {
        prop_assert_eq!(m.value(a, a).unwrap(), a);
    }

    #[test]
    fn canonical_reduction(m in any_mean(), a in positive(), b in positive()) {
        let t = (b - a) / (a + b);
        prop_assume!(t.abs() < 1.0 - 1e-12);
        let lhs = m.value(a, b).unwrap() / ((a + b) / 2.0);
        // Rounding in t itself is amplified by about 1 / (1 - |t|).
        let tol = 1e-12 + 1e-15 / (1.0 - t.abs());
        prop_assert!(rel(lhs, m.phi(t).unwrap()) <= tol, "{m} at t = {t}");
    }

    #[test]
    fn stolarsky_parameters_commute(r in param(), s in param(), a in positive(), b in positive()) {
        let x = stolarsky(r, s).unwrap().value(a, b).unwrap();
        let y = stolarsky(s, r).unwrap().value(a, b).unwrap();
        prop_assert_eq!(x.to_bits(), y.to_bits());
    }

    #[test]
    fn stolarsky_diagonal_duality(s in param(), a in 1e-3f64..1e3, b in 1e-3f64..1e3) {
        let p = stolarsky(s, s).unwrap().value(a, b).unwrap()
            * stolarsky(-s, -s).unwrap().value(a, b).unwrap();
        prop_assert!(rel(p, a * b) <= 1e-10);
    }

    #[test]
    fn negative_power_is_dual_of_positive(i in 0..8usize, s in 0.05f64..4.0, a in positive(), b in positive()) {
        let m = Mean::elementary(Elementary::ALL[i]);
        let pos = m.power(s).unwrap().value(a, b).unwrap();
        let neg = m.power(-s).unwrap().value(a, b).unwrap();
        prop_assert!(rel(neg, a * b / pos) <= 1e-12);
    }

    #[test]
    fn dual_is_an_involution(m in any_mean(), a in positive(), b in positive()) {
        let x = m.dual().dual().value(a, b).unwrap();
        prop_assert!(rel(x, m.value(a, b).unwrap()) <= 1e-13);
        let d = m.dual().value(a, b).unwrap();
        prop_assert!(rel(d, a * b / m.value(a, b).unwrap()) <= 1e-12);
    }

    #[test]
    fn series_matches_direct_near_threshold(m in any_mean(), k in -1.0f64..1.0) {
        let t = 1e-4 * 10f64.powf(k);
        let series = m.phi(t).unwrap();
        let direct = m.clone().with_stabilization(Stabilization::off()).phi(t).unwrap();
        prop_assert!(rel(series, direct) <= 1e-9, "{m} at {t}: {series} vs {direct}");
    }

    #[test]
    fn diagonal_log_convexity(s in 0.1f64..5.0, h in 0.01f64..1.0, a in 1e-2f64..1e2, b in 1e-2f64..1e2) {
        // Convex on the negative half-line, concave on the positive one.
        let ln = |q: f64| stolarsky(q, q).unwrap().value(a, b).unwrap().ln();
        let scale = ln(s).abs().max(1.0);
        prop_assert!(ln(-s) <= (ln(-s - h) + ln(-s + h)) / 2.0 + 1e-10 * scale);
        prop_assert!(ln(s) >= (ln(s - h) + ln(s + h)) / 2.0 - 1e-10 * scale);
    }

    #[test]
    fn stolarsky_increasing_in_arguments(r in param(), s in param(), y in positive(), x in positive(), f in 1.0f64..10.0) {
        let m = stolarsky(r, s).unwrap();
        let lo = m.value(x, y).unwrap();
        let hi = m.value(x * f, y).unwrap();
        prop_assert!(hi >= lo * (1.0 - 1e-13));
    }
}
