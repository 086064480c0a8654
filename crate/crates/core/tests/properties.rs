use ncurve::analysis::bound_constants;
use ncurve::curvature::{integrand_k1, k1_closed, speed};
use ncurve::curve::{curve_derivative, curve_point};
use ncurve::integrate::{arc_length, positive_tail_total_curvature, truncated_total_curvature, DEFAULT_TAIL_TOL};
use ncurve::{CurveSpec, QuadConfig};
use proptest::prelude::*;

fn spec(n: usize) -> CurveSpec {
    CurveSpec::new(n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ode_identity_off_grid(n in 2usize..=12, t in -15.0f64..15.0) {
        let s = spec(n);
        let x = curve_point(&s, t).unwrap();
        let d = curve_derivative(&s, t, n).unwrap();
        prop_assert!((&d - &x).norm() <= 1e-9 * x.norm());
    }

    #[test]
    fn even_parity_off_grid(m in 2usize..=6, t in -15.0f64..15.0) {
        let s = spec(2 * m);
        prop_assert!((k1_closed(&s, t) - k1_closed(&s, -t)).abs() <= 1e-12 * k1_closed(&s, t));
        prop_assert!((speed(&s, t) - speed(&s, -t)).abs() <= 1e-12 * speed(&s, t));
    }

    #[test]
    fn integrals_are_additive(n in 2usize..=8, a in -4.0f64..0.0, w1 in 0.1f64..3.0, w2 in 0.1f64..3.0) {
        let s = spec(n);
        let cfg = QuadConfig::default();
        let (b, c) = (a + w1, a + w1 + w2);
        let whole = truncated_total_curvature(&s, a, c, &cfg).unwrap().value;
        let parts = truncated_total_curvature(&s, a, b, &cfg).unwrap().value
            + truncated_total_curvature(&s, b, c, &cfg).unwrap().value;
        prop_assert!((whole - parts).abs() <= 1e-8 * whole.max(1.0));
        let len = arc_length(&s, a, c, &cfg).unwrap().value;
        let len_parts = arc_length(&s, a, b, &cfg).unwrap().value + arc_length(&s, b, c, &cfg).unwrap().value;
        prop_assert!((len - len_parts).abs() <= 1e-8 * len.max(1.0));
    }

    #[test]
    fn truncation_is_monotone(n in 2usize..=8, b in 0.1f64..6.0, extra in 0.01f64..2.0) {
        let s = spec(n);
        let cfg = QuadConfig::default();
        let short = truncated_total_curvature(&s, 0.0, b, &cfg).unwrap().value;
        let long = truncated_total_curvature(&s, 0.0, b + extra, &cfg).unwrap().value;
        prop_assert!(long >= short);
    }

    #[test]
    fn integrand_is_positive_and_finite(n in 2usize..=40, t in -30.0f64..30.0) {
        let k = integrand_k1(&spec(n), t);
        prop_assert!(k.is_finite() && k > 0.0);
    }
}

#[test]
fn tail_cap_bounds_the_remaining_tail() {
    let cfg = QuadConfig::default();
    for n in [3, 5, 7] {
        let s = spec(n);
        let consts = bound_constants(&s);
        let tail = positive_tail_total_curvature(&s, &cfg, DEFAULT_TAIL_TOL).unwrap();
        for b in [4.0, 8.0, 16.0] {
            let head = truncated_total_curvature(&s, 0.0, b, &cfg).unwrap();
            let remainder = tail.value - head.value;
            assert!(
                remainder <= consts.tail_cap(b) + tail.error_estimate,
                "n={n} b={b}: remainder {remainder} exceeds cap {}",
                consts.tail_cap(b)
            );
        }
    }
}

#[test]
fn positive_tails_match_reference_values() {
    // Computed independently at 40 significant digits.
    let reference = [
        (2, std::f64::consts::FRAC_PI_4),
        (3, 0.93688581256180213),
        (4, 1.3245270752723591),
        (5, 1.6178292788882345),
        (6, 2.0125243106249995),
        (7, 2.3440719201663317),
        (8, 2.7403867083695223),
    ];
    for (n, expect) in reference {
        let r = positive_tail_total_curvature(&spec(n), &QuadConfig::default(), DEFAULT_TAIL_TOL).unwrap();
        assert!((r.value - expect).abs() < 1e-8, "n={n}: {} vs {expect}", r.value);
        assert!(r.converged);
    }
}

#[test]
fn negative_side_ladders_match_reference_values() {
    let cases = [
        (5, [3.3381314, 6.2770673, 12.1549198, 23.9106248]),
        (7, [2.8717712, 5.0423613, 9.3812000, 18.0588748]),
    ];
    let cfg = QuadConfig::default();
    for (n, expected) in cases {
        let s = spec(n);
        for (a, expect) in [-5.0, -10.0, -20.0, -40.0].into_iter().zip(expected) {
            let v = truncated_total_curvature(&s, a, 0.0, &cfg).unwrap().value;
            assert!((v - expect).abs() < 1e-6, "n={n} a={a}: {v} vs {expect}");
        }
    }
}
