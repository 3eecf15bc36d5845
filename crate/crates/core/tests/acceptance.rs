//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Pinned tolerances and budgets live in `fourier_knots::claims`
//! (`TORUS_POINT_TOL`, `LISSAJOUS_MIN_EMBEDDED`, `SKEIN_MAX_CROSSINGS`,
//! `MIN_FRAMES`, per-claim time limits) and in the extraction constants
//! `HEIGHT_TOL`, `TRIPLE_TOL`, `ANGLE_TOL`.

use fourier_knots::claims::{run_suite, SuiteOptions, TORUS_POINT_TOL};
use fourier_knots::diagram::SignRule;

#[test]
fn acceptance() {
    assert_eq!(TORUS_POINT_TOL, 1e-12);
    let outcomes = run_suite(&SuiteOptions::default());
    for o in &outcomes {
        println!(
            "criterion {:>2} {} [{:.2?}]: {} | expected: {} | got: {}",
            o.id,
            if o.passed { "PASS" } else { "FAIL" },
            o.elapsed,
            o.claim,
            o.expected,
            o.got
        );
    }
    let ids: Vec<&str> = outcomes.iter().map(|o| o.id).collect();
    for n in 1..=10 {
        assert!(ids.contains(&n.to_string().as_str()), "criterion {n} missing");
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn broken_sign_rule_fails_mirror_check() {
    let mut opts = SuiteOptions::default();
    opts.extract.sign_rule = SignRule::IgnoresHeight;
    let outcomes = run_suite(&opts);
    let mirror = outcomes.iter().find(|o| o.id == "M").unwrap();
    println!("negative control: mirror check {} | got: {}", if mirror.passed { "PASS" } else { "FAIL" }, mirror.got);
    assert!(!mirror.passed);
}
