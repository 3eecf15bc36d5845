use std::collections::HashMap;

use nalgebra::Vector3;

use super::sample::SampledCurve;

/// Closest approach between two segments: distance and the fractions along
/// each segment where it is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentDistance {
    pub distance: f64,
    pub s: f64,
    pub t: f64,
}

/// Distance between segments `[p1, q1]` and `[p2, q2]`.
pub fn segment_distance(p1: Vector3<f64>, q1: Vector3<f64>, p2: Vector3<f64>, q2: Vector3<f64>) -> SegmentDistance {
    let d1 = q1 - p1;
    let d2 = q2 - p2;
    let r = p1 - p2;
    let a = d1.dot(&d1);
    let e = d2.dot(&d2);
    let f = d2.dot(&r);
    let (s, t);
    if a <= f64::EPSILON && e <= f64::EPSILON {
        s = 0.0;
        t = 0.0;
    } else if a <= f64::EPSILON {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = d1.dot(&r);
        if e <= f64::EPSILON {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = d1.dot(&d2);
            let denom = a * e - b * b;
            let s0 = if denom > 0.0 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            let t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t = 0.0;
                s = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t = 1.0;
                s = ((b - c) / a).clamp(0.0, 1.0);
            } else {
                t = t0;
                s = s0;
            }
        }
    }
    let c1 = p1 + d1 * s;
    let c2 = p2 + d2 * t;
    SegmentDistance { distance: (c1 - c2).norm(), s, t }
}

/// Result of the self-clearance scan of a closed polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingReport {
    /// Minimum distance over segment pairs that are not neighbours along the curve.
    pub min_clearance: f64,
    pub closest_params: (f64, f64),
    pub closest_segments: (usize, usize),
    /// Longest chord of the polyline.
    pub chord_bound: f64,
    /// `min_clearance > 2 · chord_bound`.
    pub embedded: bool,
}

#[derive(Clone, Copy)]
struct Best {
    d: SegmentDistance,
    i: usize,
    j: usize,
}

impl Best {
    fn better_than(&self, other: &Option<Best>) -> bool {
        match other {
            None => true,
            Some(o) => (self.d.distance, self.i, self.j) < (o.d.distance, o.i, o.j),
        }
    }
}

/// Pairs separated along the polyline by less than this many chord bounds
/// are neighbours and never counted as clearance.
pub const NEIGHBOR_ARC: f64 = 4.0;

/// Arc-length neighbourhood test. Segments sharing a vertex always qualify.
struct Neighbors {
    cum: Vec<f64>,
    window: f64,
}

impl Neighbors {
    fn new(curve: &SampledCurve) -> Self {
        let n = curve.len();
        let mut cum = Vec::with_capacity(n + 1);
        cum.push(0.0);
        for i in 0..n {
            cum.push(cum[i] + curve.chord(i));
        }
        Neighbors { cum, window: NEIGHBOR_ARC * curve.max_chord() }
    }

    /// `i < j`
    fn close(&self, i: usize, j: usize) -> bool {
        let n = self.cum.len() - 1;
        if j == i + 1 || (i == 0 && j == n - 1) {
            return true;
        }
        let forward = self.cum[j] - self.cum[i + 1];
        let backward = self.cum[n] - self.cum[j + 1] + self.cum[i];
        forward.min(backward) < self.window
    }
}

fn pair(curve: &SampledCurve, i: usize, j: usize) -> SegmentDistance {
    let (p1, q1) = curve.segment(i);
    let (p2, q2) = curve.segment(j);
    segment_distance(p1, q1, p2, q2)
}

fn brute_force(curve: &SampledCurve) -> Option<Best> {
    let n = curve.len();
    let near = Neighbors::new(curve);
    let mut best: Option<Best> = None;
    for i in 0..n {
        for j in i + 2..n {
            if near.close(i, j) {
                continue;
            }
            let cand = Best { d: pair(curve, i, j), i, j };
            if cand.better_than(&best) {
                best = Some(cand);
            }
        }
    }
    best
}

type Cell = [i64; 3];

fn cell_range(lo: Vector3<f64>, hi: Vector3<f64>, h: f64) -> (Cell, Cell) {
    let f = |v: f64| (v / h).floor() as i64;
    ([f(lo.x), f(lo.y), f(lo.z)], [f(hi.x), f(hi.y), f(hi.z)])
}

fn for_cells(range: (Cell, Cell), mut f: impl FnMut(Cell)) {
    let (lo, hi) = range;
    for x in lo[0]..=hi[0] {
        for y in lo[1]..=hi[1] {
            for z in lo[2]..=hi[2] {
                f([x, y, z]);
            }
        }
    }
}

/// Minimum over every pair closer than `h` (and possibly some farther ones).
fn grid_scan(curve: &SampledCurve, h: f64) -> Option<Best> {
    let n = curve.len();
    let bounds: Vec<(Vector3<f64>, Vector3<f64>)> = (0..n)
        .map(|i| {
            let (a, b) = curve.segment(i);
            (a.inf(&b), a.sup(&b))
        })
        .collect();
    let mut grid: HashMap<Cell, Vec<usize>> = HashMap::new();
    for (j, (lo, hi)) in bounds.iter().enumerate() {
        for_cells(cell_range(*lo, *hi, h), |c| grid.entry(c).or_default().push(j));
    }
    let near = Neighbors::new(curve);
    let pad = Vector3::repeat(h);
    let mut seen = vec![usize::MAX; n];
    let mut best: Option<Best> = None;
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        for_cells(cell_range(lo - pad, hi + pad, h), |c| {
            let Some(members) = grid.get(&c) else { return };
            for &j in members {
                if j <= i + 1 || seen[j] == i || near.close(i, j) {
                    continue;
                }
                seen[j] = i;
                let cand = Best { d: pair(curve, i, j), i, j };
                if cand.better_than(&best) {
                    best = Some(cand);
                }
            }
        });
    }
    best
}

fn param_at(curve: &SampledCurve, seg: usize, frac: f64) -> f64 {
    let (t0, t1) = curve.segment_params(seg);
    t0 + frac * (t1 - t0)
}

/// Minimum clearance between non-neighbouring segments, found with a uniform
/// grid whose cell size grows until it brackets the answer. Identical (same
/// pair, same value) to the exhaustive pair scan.
pub fn check_embedded(curve: &SampledCurve) -> EmbeddingReport {
    let chord = curve.max_chord();
    let diameter = curve.diameter();
    let mut h = (2.0 * chord).max(diameter * 1e-6);
    let best = loop {
        if h >= diameter {
            break brute_force(curve);
        }
        if let Some(b) = grid_scan(curve, h) {
            if b.d.distance < h {
                break Some(b);
            }
        }
        h *= 2.0;
    };
    report_from(curve, best, chord)
}

fn report_from(curve: &SampledCurve, best: Option<Best>, chord: f64) -> EmbeddingReport {
    match best {
        Some(b) => EmbeddingReport {
            min_clearance: b.d.distance,
            closest_params: (param_at(curve, b.i, b.d.s), param_at(curve, b.j, b.d.t)),
            closest_segments: (b.i, b.j),
            chord_bound: chord,
            embedded: b.d.distance > 2.0 * chord,
        },
        None => EmbeddingReport {
            min_clearance: f64::INFINITY,
            closest_params: (f64::NAN, f64::NAN),
            closest_segments: (0, 0),
            chord_bound: chord,
            embedded: true,
        },
    }
}

#[doc(hidden)]
pub fn check_embedded_exhaustive(curve: &SampledCurve) -> EmbeddingReport {
    report_from(curve, brute_force(curve), curve.max_chord())
}
