use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::knot::FourierKnot;

const MIN_POINTS: usize = 8;

/// Closed polyline with the parameter value of every vertex. The segment from
/// the last vertex back to the first is implicit.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    points: Vec<Vector3<f64>>,
    params: Vec<f64>,
    period: f64,
    source: Option<FourierKnot>,
}

impl SampledCurve {
    pub fn new(
        points: Vec<Vector3<f64>>,
        params: Vec<f64>,
        period: f64,
        source: Option<FourierKnot>,
    ) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidCurve(m));
        if points.len() != params.len() {
            return invalid(format!("{} points but {} params", points.len(), params.len()));
        }
        if points.len() < MIN_POINTS {
            return invalid(format!("need at least {MIN_POINTS} points, got {}", points.len()));
        }
        if !(period.is_finite() && period > 0.0) {
            return invalid(format!("bad period {period}"));
        }
        if points.iter().any(|p| !p.iter().all(|c| c.is_finite())) {
            return invalid("non-finite coordinate".into());
        }
        if params[0] < 0.0 || params[params.len() - 1] >= period {
            return invalid("params must lie in [0, period)".into());
        }
        if params.windows(2).any(|w| !(w[1] > w[0])) {
            return invalid("params must be strictly increasing".into());
        }
        let n = points.len();
        if (0..n).any(|i| points[i] == points[(i + 1) % n]) {
            return invalid("consecutive points coincide".into());
        }
        Ok(SampledCurve { points, params, period, source })
    }

    /// Treats vertex `i` as parameter `i`.
    pub fn from_points(points: Vec<Vector3<f64>>) -> Result<Self> {
        let n = points.len();
        SampledCurve::new(points, (0..n).map(|i| i as f64).collect(), n as f64, None)
    }

    pub fn points(&self) -> &[Vector3<f64>] {
        &self.points
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn source(&self) -> Option<&FourierKnot> {
        self.source.as_ref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Endpoints of segment `i` (vertex `i` to vertex `i + 1`, wrapping).
    pub fn segment(&self, i: usize) -> (Vector3<f64>, Vector3<f64>) {
        (self.points[i], self.points[(i + 1) % self.len()])
    }

    /// Parameter interval of segment `i`; the closing segment ends at `period`.
    pub fn segment_params(&self, i: usize) -> (f64, f64) {
        let end = if i + 1 == self.len() { self.period + self.params[0] } else { self.params[i + 1] };
        (self.params[i], end)
    }

    pub fn chord(&self, i: usize) -> f64 {
        let (a, b) = self.segment(i);
        (b - a).norm()
    }

    pub fn max_chord(&self) -> f64 {
        (0..self.len()).map(|i| self.chord(i)).fold(0.0, f64::max)
    }

    /// Diagonal of the bounding box, an upper bound on the diameter.
    pub fn diameter(&self) -> f64 {
        let mut lo = self.points[0];
        let mut hi = self.points[0];
        for p in &self.points {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        (hi - lo).norm()
    }

    /// Same curve traversed backwards, starting at the same vertex.
    pub fn reversed(&self) -> SampledCurve {
        let n = self.len();
        let idx = |i: usize| (n - i) % n;
        let points = (0..n).map(|i| self.points[idx(i)]).collect();
        let params = (0..n)
            .map(|i| if i == 0 { self.params[0] } else { self.period + 2.0 * self.params[0] - self.params[idx(i)] })
            .collect();
        let source = self.source.as_ref().map(|k| k.reversed(2.0 * self.params[0]));
        SampledCurve { points, params, period: self.period, source }
    }

    /// Applies a linear map to every point (and to the source series).
    pub fn mapped(&self, m: &nalgebra::Matrix3<f64>) -> SampledCurve {
        SampledCurve {
            points: self.points.iter().map(|p| m * p).collect(),
            params: self.params.clone(),
            period: self.period,
            source: self.source.as_ref().map(|k| k.linear_map(m)),
        }
    }

    /// Position on the curve: the smooth source when present, otherwise linear
    /// interpolation on the polyline.
    pub fn position(&self, t: f64) -> Vector3<f64> {
        match &self.source {
            Some(k) => k.evaluate_point(t),
            None => {
                let (i, s) = self.locate(t);
                let (a, b) = self.segment(i);
                a + (b - a) * s
            }
        }
    }

    /// Segment index and fraction along it for parameter `t` (taken mod period).
    pub fn locate(&self, t: f64) -> (usize, f64) {
        let base = self.params[0];
        let t = base + (t - base).rem_euclid(self.period);
        let i = match self.params.binary_search_by(|p| p.partial_cmp(&t).unwrap()) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        };
        let (t0, t1) = self.segment_params(i);
        (i, ((t - t0) / (t1 - t0)).clamp(0.0, 1.0))
    }
}

pub fn speed_bound(knot: &FourierKnot) -> f64 {
    knot.speed_bound()
}

/// Uniform parameter sampling with `n = ceil(P·S / target_chord)` points, so
/// every chord is at most `target_chord` by the mean value bound.
pub fn sample(knot: &FourierKnot, target_chord: f64) -> Result<SampledCurve> {
    if !(target_chord.is_finite() && target_chord > 0.0) {
        return Err(Error::BadChord);
    }
    let period = knot.period()?;
    let speed = knot.speed_bound();
    let n = ((period * speed / target_chord).ceil() as usize).max(MIN_POINTS);
    let params: Vec<f64> = (0..n).map(|i| period * i as f64 / n as f64).collect();
    let points = params.iter().map(|&t| knot.evaluate_point(t)).collect();
    SampledCurve::new(points, params, period, Some(knot.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::fourier_trefoil;
    use crate::series::{CosTerm, FourierSeries};
    use std::f64::consts::TAU;

    #[test]
    fn trefoil_chords() {
        let k = fourier_trefoil();
        let c = sample(&k, 0.05).unwrap();
        let n_min = (TAU * 29f64.sqrt() / 0.05).ceil() as usize;
        assert!(c.len() >= n_min);
        assert!(c.max_chord() <= 0.05);
    }

    #[test]
    fn single_cosine_count() {
        let k = FourierKnot::new(
            "c",
            FourierSeries::new([CosTerm::new(1.0, 1, 0.0)]),
            FourierSeries::new([CosTerm::new(0.3, 0, 0.0)]),
            FourierSeries::empty(),
        );
        let c = sample(&k, 0.05).unwrap();
        assert_eq!(c.len(), 126);
        assert!(c.max_chord() <= 0.05);
    }

    #[test]
    fn doubling_halves_chord() {
        let k = fourier_trefoil();
        let a = sample(&k, 0.05).unwrap();
        let pts: Vec<_> = (0..2 * a.len()).map(|i| k.evaluate_point(TAU * i as f64 / (2 * a.len()) as f64)).collect();
        let b = SampledCurve::from_points(pts).unwrap();
        let ratio = b.max_chord() / a.max_chord();
        assert!((ratio - 0.5).abs() <= 0.05, "ratio {ratio}");
    }

    #[test]
    fn rejects_bad_curves() {
        assert!(SampledCurve::from_points(vec![Vector3::zeros(); 4]).is_err());
        let mut pts: Vec<_> = (0..10).map(|i| Vector3::new(i as f64, 0.0, 0.0)).collect();
        pts[3] = pts[2];
        assert!(matches!(SampledCurve::from_points(pts), Err(Error::InvalidCurve(_))));
        assert_eq!(sample(&fourier_trefoil(), 0.0), Err(Error::BadChord));
    }

    #[test]
    fn reversed_keeps_positions() {
        let c = sample(&fourier_trefoil(), 0.1).unwrap();
        let r = c.reversed();
        assert_eq!(r.points()[0], c.points()[0]);
        assert_eq!(r.points()[1], c.points()[c.len() - 1]);
        for i in 0..r.len() {
            assert!((r.position(r.params()[i]) - r.points()[i]).norm() < 1e-12);
        }
    }
}
