//! Knot invariants: linking number, the Conway coefficient `a(K)`, Arf,
//! Alexander polynomial and determinant, and a small identification catalog.

mod alexander;
mod catalog;
mod laurent;
mod report;

pub use alexander::{alexander_polynomial, determinant};
pub use catalog::{catalog, identify, torus_alexander, CatalogEntry, Verdict};
pub use laurent::LaurentPolynomial;
pub use report::{report_for_diagram, InvariantReport};

use std::collections::HashSet;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};

/// Half the signed count of crossings between the two components.
pub fn linking_number(d: &LinkDiagram) -> Result<i64> {
    if d.component_count() != 2 {
        return Err(Error::NotTwoComponents(d.component_count()));
    }
    let mut sum = 0;
    for c in d.crossings() {
        let (over, under) = d.crossing_components(c.id)?;
        if over != under {
            sum += c.sign.value();
        }
    }
    if sum % 2 != 0 {
        return Err(Error::OddSignSum(sum));
    }
    Ok(sum / 2)
}

/// `a(K)`, the `z²` coefficient of the Conway polynomial, from the skein
/// relation `a(K₊) − a(K₋) = Lk(K₀)` and `a(unknot) = 0`.
///
/// Walks the diagram from its basepoint and switches every crossing first
/// met from below, which leaves a descending (hence unknotted) diagram. Each
/// switch contributes `±Lk` of the smoothing at that crossing.
pub fn conway_a(d: &LinkDiagram) -> Result<i64> {
    if d.component_count() != 1 {
        return Err(Error::NotAKnot(d.component_count()));
    }
    let mut current = d.clone();
    let mut seen = HashSet::new();
    let mut total = 0;
    for p in &d.components()[0] {
        if !seen.insert(p.crossing) || p.over {
            continue;
        }
        let sign = current.crossing(p.crossing)?.sign.value();
        total += sign * linking_number(&current.smooth_crossing(p.crossing)?)?;
        current = current.switch_crossing(p.crossing)?;
    }
    Ok(total)
}

/// `a(K) mod 2`.
pub fn arf(d: &LinkDiagram) -> Result<u8> {
    Ok(conway_a(d)?.rem_euclid(2) as u8)
}
