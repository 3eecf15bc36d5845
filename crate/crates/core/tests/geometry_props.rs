use fourier_knots::geometry::{check_embedded, check_embedded_exhaustive, sample, ProjectionFrame};
use fourier_knots::diagram::{extract_diagram, ExtractOptions};
use fourier_knots::nalgebra::Vector3;
use fourier_knots::{fibonacci_knot, fourier_figure_eight, fourier_trefoil, torus_knot_fourier, CosTerm, FourierKnot, FourierSeries};
use proptest::prelude::*;

fn knot() -> impl Strategy<Value = FourierKnot> {
    let term = (-1.0f64..1.0, 1i64..6, -3.2f64..3.2).prop_map(|(a, k, l)| CosTerm::new(a, k, l));
    let series = prop::collection::vec(term, 1..3).prop_map(FourierSeries::new);
    (series.clone(), series.clone(), series).prop_map(|(x, y, z)| FourierKnot::new("random", x, y, z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn grid_scan_equals_brute_force(k in knot()) {
        let Ok(c) = sample(&k, 0.05) else { return Ok(()) };
        prop_assert_eq!(check_embedded(&c), check_embedded_exhaustive(&c));
    }
}

#[test]
fn named_knots_embedded_at_default_chord() {
    let knots = [
        fourier_trefoil(),
        fourier_figure_eight(),
        torus_knot_fourier(2, 3).unwrap(),
        torus_knot_fourier(2, 5).unwrap(),
    ];
    for k in knots {
        let e = check_embedded(&sample(&k, 0.02).unwrap());
        assert!(e.embedded, "{}: {e:?}", k.name);
    }
}

/// F(4..6) come closer to themselves than twice the default chord, so the
/// certificate needs finer sampling: (n, true clearance, certifying chord).
#[test]
fn fibonacci_knots_need_finer_chords() {
    for (n, clearance, chord) in [(4, 8.4215e-5, 5e-5), (5, 1.7496e-3, 1e-3), (6, 1.0002e-3, 4e-4)] {
        let k = fibonacci_knot(n).unwrap();
        let coarse = check_embedded(&sample(&k, 0.02).unwrap());
        assert!(!coarse.embedded);
        assert!(coarse.min_clearance < 2.0 * coarse.chord_bound);
        if n == 4 {
            continue; // about 1.5M points; the clearance value is pinned by the 5 and 6 cases
        }
        let fine = check_embedded(&sample(&k, chord).unwrap());
        assert!(fine.embedded, "F({n}) {fine:?}");
        assert!((fine.min_clearance - clearance).abs() < 1e-7, "F({n}) {}", fine.min_clearance);
    }
}

#[test]
fn planar_self_intersection_not_embedded() {
    let lemniscate = FourierKnot::new(
        "lemniscate",
        FourierSeries::new([CosTerm::new(1.0, 1, 0.0)]),
        FourierSeries::new([CosTerm::sine(1.0, 2, 0.0)]),
        FourierSeries::empty(),
    );
    let e = check_embedded(&sample(&lemniscate, 0.02).unwrap());
    assert!(!e.embedded);
    assert!(e.min_clearance < 1e-12);
}

#[test]
fn crossing_signs_survive_viewing_from_behind() {
    let c = sample(&fourier_trefoil(), 0.02).unwrap();
    for d in [Vector3::z(), Vector3::x(), Vector3::new(0.3, -0.4, 0.87)] {
        let f = ProjectionFrame::from_direction(d).unwrap();
        let front = extract_diagram(&c, &f, &ExtractOptions::default()).unwrap();
        let back = extract_diagram(&c, &f.flipped(), &ExtractOptions::default()).unwrap();
        assert_eq!(front.writhe(), back.writhe());
        assert_eq!(front.crossing_count(), back.crossing_count());
    }
}

#[test]
fn reflection_negates_writhe() {
    let c = sample(&fourier_figure_eight(), 0.02).unwrap();
    let f = ProjectionFrame::from_direction(Vector3::new(0.2, 0.1, 1.0)).unwrap();
    let d = extract_diagram(&c, &f, &ExtractOptions::default()).unwrap();
    let m = extract_diagram(&c.mapped(&f.reflection()), &f, &ExtractOptions::default()).unwrap();
    assert_eq!(m.writhe(), -d.writhe());
    assert_eq!(m.crossing_count(), d.crossing_count());
}
