use std::collections::HashMap;

use nalgebra::{Matrix2, Vector2, Vector3};

use super::{Crossing, LinkDiagram, Passage, Sign};
use crate::error::{Error, Result};
use crate::geometry::{ProjectionFrame, SampledCurve};

/// Relative (to the curve diameter) height gap below which over/under is ambiguous.
pub const HEIGHT_TOL: f64 = 1e-7;
/// Relative distance below which two crossings count as a triple point.
pub const TRIPLE_TOL: f64 = 1e-7;
/// Minimum crossing angle in radians.
pub const ANGLE_TOL: f64 = 1e-4;

const SEGMENT_SLACK: f64 = 1e-9;
const NEWTON_ITERS: usize = 40;

/// How crossing signs are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignRule {
    /// `+1` when the under tangent is a counterclockwise turn (< π) of the
    /// over tangent.
    #[default]
    RightHand,
    /// Deliberately broken rule that ignores which strand is over; exists only
    /// as a negative control for the mirror check.
    #[doc(hidden)]
    IgnoresHeight,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ExtractOptions {
    pub sign_rule: SignRule,
}

struct Projected {
    pts: Vec<Vector2<f64>>,
}

impl Projected {
    fn segment(&self, i: usize) -> (Vector2<f64>, Vector2<f64>) {
        (self.pts[i], self.pts[(i + 1) % self.pts.len()])
    }
}

fn cross2(a: &Vector2<f64>, b: &Vector2<f64>) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Candidate segment pairs whose image bounding boxes share a grid cell.
fn candidate_pairs(proj: &Projected) -> Vec<(usize, usize)> {
    let n = proj.pts.len();
    let h = (0..n)
        .map(|i| {
            let (a, b) = proj.segment(i);
            (b - a).norm()
        })
        .fold(0.0, f64::max)
        .max(1e-12);
    let cell = |p: Vector2<f64>| [(p.x / h).floor() as i64, (p.y / h).floor() as i64];
    let boxes: Vec<([i64; 2], [i64; 2])> = (0..n)
        .map(|i| {
            let (a, b) = proj.segment(i);
            (cell(a.inf(&b)), cell(a.sup(&b)))
        })
        .collect();
    let mut grid: HashMap<[i64; 2], Vec<usize>> = HashMap::new();
    for (j, (lo, hi)) in boxes.iter().enumerate() {
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                grid.entry([x, y]).or_default().push(j);
            }
        }
    }
    let mut seen = vec![usize::MAX; n];
    let mut pairs = Vec::new();
    for (i, (lo, hi)) in boxes.iter().enumerate() {
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                let Some(members) = grid.get(&[x, y]) else { continue };
                for &j in members {
                    if j <= i + 1 || (i == 0 && j == n - 1) || seen[j] == i {
                        continue;
                    }
                    seen[j] = i;
                    pairs.push((i, j));
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

/// Fractions `(s, r)` where image segments `i` and `j` meet, with a little
/// slack at the endpoints.
fn segment_hit(proj: &Projected, i: usize, j: usize) -> Result<Option<(f64, f64)>> {
    let (p, p1) = proj.segment(i);
    let (q, q1) = proj.segment(j);
    let d1 = p1 - p;
    let d2 = q1 - q;
    let denom = cross2(&d1, &d2);
    let w = q - p;
    let scale = d1.norm() * d2.norm();
    if denom.abs() <= 1e-14 * scale {
        // parallel; only collinear overlap is a problem
        if cross2(&w, &d1).abs() <= 1e-14 * d1.norm() * w.norm().max(d1.norm()) {
            let t0 = w.dot(&d1) / d1.dot(&d1);
            let t1 = (q1 - p).dot(&d1) / d1.dot(&d1);
            if t0.max(t1) >= 0.0 && t0.min(t1) <= 1.0 {
                return Err(Error::NonGenericProjection(format!("segments {i} and {j} overlap in the image")));
            }
        }
        return Ok(None);
    }
    let s = cross2(&w, &d2) / denom;
    let r = cross2(&w, &d1) / denom;
    let inside = |v: f64| (-SEGMENT_SLACK..=1.0 + SEGMENT_SLACK).contains(&v);
    Ok((inside(s) && inside(r)).then_some((s.clamp(0.0, 1.0), r.clamp(0.0, 1.0))))
}

struct RawCrossing {
    a: f64,
    b: f64,
}

fn param_of(curve: &SampledCurve, seg: usize, frac: f64) -> f64 {
    let (t0, t1) = curve.segment_params(seg);
    t0 + frac * (t1 - t0)
}

fn wrap(curve: &SampledCurve, t: f64) -> f64 {
    let base = curve.params()[0];
    base + (t - base).rem_euclid(curve.period())
}

fn circular_gap(a: f64, b: f64, period: f64) -> f64 {
    let d = (a - b).rem_euclid(period);
    d.min(period - d)
}

/// Newton iteration on `π(γ(a)) = π(γ(b))` against the smooth source.
fn refine_smooth(curve: &SampledCurve, frame: &ProjectionFrame, a0: f64, b0: f64, span: f64) -> Result<(f64, f64)> {
    let knot = curve.source().expect("caller checked");
    let scale = curve.diameter().max(1e-300);
    let (mut a, mut b) = (a0, b0);
    for _ in 0..NEWTON_ITERS {
        let f = frame.project(&knot.evaluate_point(a)) - frame.project(&knot.evaluate_point(b));
        let ta = frame.project(&knot.tangent(a));
        let tb = frame.project(&knot.tangent(b));
        let jac = Matrix2::new(ta.x, -tb.x, ta.y, -tb.y);
        let Some(inv) = jac.try_inverse() else {
            return Err(Error::NonGenericProjection(format!("singular crossing near t = {a0:.6}, {b0:.6}")));
        };
        let step = inv * f;
        a -= step.x;
        b -= step.y;
        if step.norm() <= 1e-15 * (1.0 + a.abs() + b.abs()) {
            break;
        }
    }
    let residual = (frame.project(&knot.evaluate_point(a)) - frame.project(&knot.evaluate_point(b))).norm();
    if residual > 1e-10 * scale || (a - a0).abs() > span || (b - b0).abs() > span {
        return Err(Error::NonGenericProjection(format!(
            "crossing near t = {a0:.6}, {b0:.6} did not refine (residual {residual:.3e})"
        )));
    }
    Ok((a, b))
}

fn tangent(curve: &SampledCurve, t: f64) -> Vector3<f64> {
    match curve.source() {
        Some(k) => k.tangent(t),
        None => {
            let (i, _) = curve.locate(t);
            let (p, q) = curve.segment(i);
            q - p
        }
    }
}

/// Projects the curve, finds every transverse double point of the image,
/// decides over/under by height along the frame direction and assigns signs.
///
/// Crossings are numbered from 1 in order of their over parameter; the single
/// component is traversed from the first vertex.
pub fn extract_diagram(curve: &SampledCurve, frame: &ProjectionFrame, opts: &ExtractOptions) -> Result<LinkDiagram> {
    let n = curve.len();
    let proj = Projected { pts: curve.points().iter().map(|p| frame.project(p)).collect() };
    let diameter = curve.diameter();
    let period = curve.period();

    let mut raw: Vec<RawCrossing> = Vec::new();
    for (i, j) in candidate_pairs(&proj) {
        let Some((s, r)) = segment_hit(&proj, i, j)? else { continue };
        let a0 = param_of(curve, i, s);
        let b0 = param_of(curve, j, r);
        let (a, b) = if curve.source().is_some() {
            let (ta0, ta1) = curve.segment_params(i);
            let (tb0, tb1) = curve.segment_params(j);
            let span = 2.0 * (ta1 - ta0).max(tb1 - tb0);
            refine_smooth(curve, frame, a0, b0, span)?
        } else {
            (a0, b0)
        };
        let (a, b) = (wrap(curve, a), wrap(curve, b));
        let dup = raw.iter().any(|c| {
            let same = |x: f64, y: f64| circular_gap(x, y, period) <= 1e-9 * period;
            (same(c.a, a) && same(c.b, b)) || (same(c.a, b) && same(c.b, a))
        });
        if !dup {
            raw.push(RawCrossing { a, b });
        }
    }

    struct Found {
        over: f64,
        under: f64,
        sign: Sign,
        pos: Vector2<f64>,
    }
    let mut found = Vec::with_capacity(raw.len());
    for c in &raw {
        let (pa, pb) = (curve.position(c.a), curve.position(c.b));
        let (ha, hb) = (frame.height(&pa), frame.height(&pb));
        if (ha - hb).abs() < HEIGHT_TOL * diameter {
            return Err(Error::NonGenericProjection(format!(
                "strands at t = {:.6} and {:.6} are at equal height",
                c.a, c.b
            )));
        }
        let ta = frame.project(&tangent(curve, c.a));
        let tb = frame.project(&tangent(curve, c.b));
        let sin_angle = cross2(&ta, &tb).abs() / (ta.norm() * tb.norm());
        if !(sin_angle >= ANGLE_TOL.sin()) {
            return Err(Error::NonGenericProjection(format!(
                "strands at t = {:.6} and {:.6} cross at a near-tangent angle",
                c.a, c.b
            )));
        }
        let (over, under, t_over, t_under) = if ha > hb { (c.a, c.b, ta, tb) } else { (c.b, c.a, tb, ta) };
        let turn = match opts.sign_rule {
            SignRule::RightHand => cross2(&t_over, &t_under),
            SignRule::IgnoresHeight => cross2(&ta, &tb),
        };
        let sign = if turn > 0.0 { Sign::Positive } else { Sign::Negative };
        found.push(Found { over, under, sign, pos: frame.project(&pa) });
    }
    for i in 0..found.len() {
        for j in i + 1..found.len() {
            if (found[i].pos - found[j].pos).norm() < TRIPLE_TOL * diameter {
                return Err(Error::NonGenericProjection(format!(
                    "crossings at t = {:.6} and {:.6} nearly coincide in the image",
                    found[i].over, found[j].over
                )));
            }
        }
    }

    found.sort_by(|x, y| x.over.total_cmp(&y.over));
    let mut crossings = Vec::with_capacity(found.len());
    let mut visits: Vec<(f64, Passage)> = Vec::with_capacity(2 * found.len());
    for (k, f) in found.iter().enumerate() {
        let id = k + 1;
        crossings.push(Crossing {
            id,
            sign: f.sign,
            over_param: Some(f.over),
            under_param: Some(f.under),
            position: Some(f.pos),
        });
        visits.push((f.over, Passage { crossing: id, over: true }));
        visits.push((f.under, Passage { crossing: id, over: false }));
    }
    visits.sort_by(|x, y| x.0.total_cmp(&y.0));
    debug_assert!(n >= 2);
    LinkDiagram::new(vec![visits.into_iter().map(|(_, p)| p).collect()], crossings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample;
    use crate::knot::{fourier_trefoil, torus_knot_fourier, FourierKnot};
    use crate::series::{CosTerm, FourierSeries};

    #[test]
    fn round_circle_has_no_crossings() {
        let k = FourierKnot::new(
            "circle",
            FourierSeries::new([CosTerm::new(1.0, 1, 0.0)]),
            FourierSeries::new([CosTerm::sine(1.0, 1, 0.0)]),
            FourierSeries::empty(),
        );
        let c = sample(&k, 0.02).unwrap();
        let d = extract_diagram(&c, &ProjectionFrame::z_axis(), &ExtractOptions::default()).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn trefoil_projection_has_odd_crossings() {
        let c = sample(&fourier_trefoil(), 0.02).unwrap();
        let d = extract_diagram(&c, &ProjectionFrame::z_axis(), &ExtractOptions::default()).unwrap();
        assert!(d.crossing_count() >= 3 && d.crossing_count() % 2 == 1, "{}", d.crossing_count());
        for x in d.crossings() {
            let (o, u) = (x.over_param.unwrap(), x.under_param.unwrap());
            let k = c.source().unwrap();
            let f = ProjectionFrame::z_axis();
            assert!((f.project(&k.evaluate_point(o)) - f.project(&k.evaluate_point(u))).norm() < 1e-10);
            assert!(k.evaluate_point(o).z > k.evaluate_point(u).z);
        }
    }

    #[test]
    fn torus_crossings_share_a_sign() {
        let c = sample(&torus_knot_fourier(2, 3).unwrap(), 0.02).unwrap();
        let d = extract_diagram(&c, &ProjectionFrame::z_axis(), &ExtractOptions::default()).unwrap();
        assert!(d.crossing_count() >= 3);
        let first = d.crossings()[0].sign;
        assert!(d.crossings().iter().all(|x| x.sign == first));
    }
}
