use std::fmt::Write as _;

use num_bigint::BigInt;

use super::{alexander_polynomial, arf, conway_a, identify, LaurentPolynomial, Verdict};
use crate::diagram::LinkDiagram;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub crossings: usize,
    pub writhe: i64,
    pub a: i64,
    pub arf: u8,
    pub alexander: LaurentPolynomial,
    /// `|Δ(−1)|`.
    pub determinant: BigInt,
    pub verdict: Verdict,
    /// Viewing direction the diagram was taken along, when it came from a curve.
    pub frame_direction: Option<[f64; 3]>,
    /// Chord length of the sampled curve, when it came from a curve.
    pub chord: Option<f64>,
}

/// Every invariant of a knot diagram plus the catalog verdict.
pub fn report_for_diagram(d: &LinkDiagram) -> Result<InvariantReport> {
    let alexander = alexander_polynomial(d)?;
    let a = conway_a(d)?;
    let mut report = InvariantReport {
        crossings: d.crossing_count(),
        writhe: d.writhe(),
        a,
        arf: arf(d)?,
        determinant: num_traits::Signed::abs(&alexander.eval_i64(-1)),
        alexander,
        verdict: Verdict::Unidentified,
        frame_direction: None,
        chord: None,
    };
    report.verdict = identify(&report);
    Ok(report)
}

impl InvariantReport {
    /// `key = value` lines.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "crossings = {}", self.crossings);
        let _ = writeln!(out, "writhe = {}", self.writhe);
        let _ = writeln!(out, "a = {}", self.a);
        let _ = writeln!(out, "arf = {}", self.arf);
        let _ = writeln!(out, "alexander = {}", self.alexander);
        let _ = writeln!(out, "determinant = {}", self.determinant);
        let _ = writeln!(out, "verdict = {}", self.verdict);
        if let Some([x, y, z]) = self.frame_direction {
            let _ = writeln!(out, "frame = {x:?} {y:?} {z:?}");
        }
        if let Some(c) = self.chord {
            let _ = writeln!(out, "chord = {c:?}");
        }
        out
    }

    /// Tab-separated: crossings, writhe, a, arf, alexander pairs, determinant, verdict.
    pub fn to_record(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.crossings,
            self.writhe,
            self.a,
            self.arf,
            self.alexander.to_pairs_string(),
            self.determinant,
            self.verdict
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn trefoil_report() {
        let r = report_for_diagram(&trefoil()).unwrap();
        assert_eq!(r.verdict, Verdict::Known("trefoil (3_1 / torus(2,3))".into()));
        assert_eq!(r.to_record(), "3\t3\t1\t1\t-1:1,0:-1,1:1\t3\ttrefoil (3_1 / torus(2,3))");
        assert!(r.to_key_value().contains("alexander = t - 1 + t^-1\n"));
    }

    #[test]
    fn figure_eight_and_unknot() {
        let r = report_for_diagram(&figure_eight()).unwrap();
        assert_eq!(r.verdict.to_string(), "figure-eight (4_1)");
        assert_eq!(r.a, -1);
        let u = report_for_diagram(&LinkDiagram::unknot()).unwrap();
        assert_eq!(u.verdict.to_string(), "unknot");
        assert_eq!(u.determinant, BigInt::from(1));
    }

    #[test]
    fn report_invariants_hold() {
        for d in [trefoil(), figure_eight(), curl(), LinkDiagram::unknot()] {
            let r = report_for_diagram(&d).unwrap();
            assert_eq!(r.arf as i64, r.a.rem_euclid(2));
            assert_eq!(BigInt::from(r.alexander.eval_i64(-1).magnitude().clone()), r.determinant);
        }
    }
}
