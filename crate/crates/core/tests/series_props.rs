use fourier_knots::geometry::{check_embedded, sample};
use fourier_knots::specfile::{parse_knot_spec, write_knot_spec};
use fourier_knots::{torus_knot_fourier, torus_knot_point, CosTerm, FourierKnot, FourierSeries, RationalFreq};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = CosTerm> {
    (-2.0f64..2.0, 1i64..9, 1i64..4, -3.2f64..3.2).prop_map(|(a, n, d, l)| CosTerm::new(a, RationalFreq::new(n, d), l))
}

fn series() -> impl Strategy<Value = FourierSeries> {
    prop::collection::vec(term(), 1..4).prop_map(FourierSeries::new)
}

fn knot() -> impl Strategy<Value = FourierKnot> {
    (series(), series(), series()).prop_map(|(x, y, z)| FourierKnot::new("random", x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_matches_central_difference(s in series(), t in -10.0f64..10.0) {
        let h = 1e-5;
        let fd = (s.evaluate(t + h) - s.evaluate(t - h)) / (2.0 * h);
        let amp: f64 = s.terms().iter().map(|c| c.amplitude.abs()).sum();
        let third: f64 = s.terms().iter().map(|c| c.amplitude.abs() * c.frequency.to_f64().abs().powi(3)).sum();
        let tol = 1e-10 * (1.0 + amp) + h * h * third;
        prop_assert!((fd - s.derivative().evaluate(t)).abs() <= tol);
    }

    #[test]
    fn normalize_is_idempotent(k in knot()) {
        if let Ok(once) = k.normalize_traversal() {
            let twice = once.normalize_traversal().unwrap();
            prop_assert!(once.canonically_eq(&twice));
            prop_assert_eq!(once.traversal_factor().unwrap(), RationalFreq::integer(1));
        }
    }

    #[test]
    fn spec_file_round_trip(k in knot()) {
        let back = parse_knot_spec(&write_knot_spec(&k)).unwrap();
        prop_assert!(back.canonically_eq(&k));
    }

    #[test]
    fn torus_series_matches_product_form(p in 1u32..7, q in 1u32..9, t in -20.0f64..20.0) {
        prop_assume!(num_gcd(p, q) == 1);
        let k = torus_knot_fourier(p, q).unwrap();
        prop_assert!((k.evaluate_point(t) - torus_knot_point(p, q, t).unwrap()).norm() <= 1e-12);
    }

    #[test]
    fn clearance_is_orientation_symmetric(k in knot()) {
        let Ok(k) = k.normalize_traversal() else { return Ok(()) };
        let Ok(c) = sample(&k, 0.1) else { return Ok(()) };
        let a = check_embedded(&c).min_clearance;
        let b = check_embedded(&c.reversed()).min_clearance;
        prop_assert!((a - b).abs() <= 1e-12, "{} vs {}", a, b);
    }
}

fn num_gcd(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { num_gcd(b, a % b) }
}

#[test]
fn torus_agreement_at_thousand_points() {
    for (p, q) in [(2, 3), (2, 5), (3, 4), (3, 5)] {
        let k = torus_knot_fourier(p, q).unwrap();
        let period = k.period().unwrap();
        for i in 0..1000 {
            let t = period * i as f64 / 1000.0;
            assert!((k.evaluate_point(t) - torus_knot_point(p, q, t).unwrap()).norm() <= 1e-12);
        }
    }
}
