use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::SampledCurve;
use crate::knot::FourierKnot;
use crate::series::{CosTerm, FourierSeries};

/// Coefficients below this fraction of the largest coordinate magnitude are
/// treated as round-off and dropped.
const NOISE_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Approximation {
    pub knot: FourierKnot,
    /// Max Euclidean deviation from the input vertices.
    pub max_deviation: f64,
}

/// Truncated discrete Fourier series of a closed polyline.
///
/// Vertices are taken as equally spaced in a parameter `s ∈ [0, 2π)`;
/// integer frequencies `0..=harmonics` are kept in every coordinate.
pub fn fourier_approximate(curve: &SampledCurve, harmonics: usize) -> Result<Approximation> {
    let n = curve.len();
    let needed = 2 * harmonics + 2;
    if n < needed {
        return Err(Error::TooFewSamples { needed, got: n });
    }
    let others = (0..n - 1).map(|i| curve.chord(i)).fold(0.0, f64::max);
    let gap = curve.chord(n - 1);
    if gap > 2.0 * others {
        return Err(Error::NotClosed { gap, limit: 2.0 * others });
    }
    let pts = curve.points();
    let scale = pts.iter().map(|p| p.amax()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let s: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
    let series: Vec<FourierSeries> = (0..3)
        .map(|axis| {
            let vals: Vec<f64> = pts.iter().map(|p| p[axis]).collect();
            let mut terms = Vec::with_capacity(harmonics + 1);
            let mean = vals.iter().sum::<f64>() / n as f64;
            if mean.abs() > NOISE_FLOOR * scale {
                terms.push(CosTerm::new(mean, 0, 0.0));
            }
            for k in 1..=harmonics {
                let (mut a, mut b) = (0.0, 0.0);
                for (v, si) in vals.iter().zip(&s) {
                    let (sin, cos) = (k as f64 * si).sin_cos();
                    a += v * cos;
                    b += v * sin;
                }
                a *= 2.0 / n as f64;
                b *= 2.0 / n as f64;
                let r = a.hypot(b);
                if r > NOISE_FLOOR * scale {
                    // a cos + b sin = r cos(ks − atan2(b, a))
                    terms.push(CosTerm::new(r, k as i64, -b.atan2(a)));
                }
            }
            FourierSeries::new(terms)
        })
        .collect();
    let [x, y, z]: [FourierSeries; 3] = series.try_into().expect("three axes");
    let knot = FourierKnot::new(format!("approx{harmonics}"), x, y, z);
    let max_deviation =
        s.iter().zip(pts).map(|(si, p)| (knot.evaluate_point(*si) - p).norm()).fold(0.0, f64::max);
    Ok(Approximation { knot, max_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample;
    use crate::knot::fourier_trefoil;
    use nalgebra::Vector3;

    #[test]
    fn sample_count_and_closure() {
        let c = sample(&fourier_trefoil(), 0.5).unwrap();
        assert!(matches!(fourier_approximate(&c, c.len()), Err(Error::TooFewSamples { .. })));
        // an open arc: half a circle
        let pts: Vec<_> = (0..20).map(|i| {
            let t = std::f64::consts::PI * i as f64 / 19.0;
            Vector3::new(t.cos(), t.sin(), 0.0)
        }).collect();
        let open = SampledCurve::from_points(pts).unwrap();
        assert!(matches!(fourier_approximate(&open, 3), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn zero_harmonics_is_constant() {
        let c = sample(&fourier_trefoil(), 0.1).unwrap();
        let a = fourier_approximate(&c, 0).unwrap();
        assert_eq!(a.knot.period(), Err(Error::AllConstant));
    }
}
