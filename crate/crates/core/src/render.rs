//! Deterministic SVG drawing of a projected knot with broken under-strands.

use std::fmt::Write;

use nalgebra::Vector2;

use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::geometry::{ProjectionFrame, SampledCurve};

/// Half-gap on each side of an under-crossing, as a fraction of the image diagonal.
pub const GAP_FRACTION: f64 = 0.015;
pub const CANVAS: f64 = 600.0;
pub const MARGIN: f64 = 20.0;
pub const STROKE_WIDTH: f64 = 2.0;

fn num(x: f64) -> String {
    let r = (x * 1000.0).round() / 1000.0;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.3}")
}

struct Polyline {
    pts: Vec<Vector2<f64>>,
    /// cum[k] = arc length up to vertex k; cum[n] closes the loop.
    cum: Vec<f64>,
}

impl Polyline {
    fn new(pts: Vec<Vector2<f64>>) -> Self {
        let n = pts.len();
        let mut cum = vec![0.0];
        for i in 0..n {
            cum.push(cum[i] + (pts[(i + 1) % n] - pts[i]).norm());
        }
        Polyline { pts, cum }
    }

    fn length(&self) -> f64 {
        self.cum[self.pts.len()]
    }

    fn at(&self, s: f64) -> Vector2<f64> {
        let n = self.pts.len();
        let s = s.rem_euclid(self.length());
        let i = self.cum.partition_point(|&c| c <= s).saturating_sub(1).min(n - 1);
        let len = self.cum[i + 1] - self.cum[i];
        let f = if len > 0.0 { (s - self.cum[i]) / len } else { 0.0 };
        self.pts[i] + (self.pts[(i + 1) % n] - self.pts[i]) * f
    }

    /// Vertices with arc position strictly inside `(a, b)`, `a < b`, unwrapped.
    fn vertices_between(&self, a: f64, b: f64) -> Vec<Vector2<f64>> {
        let n = self.pts.len();
        let l = self.length();
        let mut out = Vec::new();
        let mut lap = (a / l).floor();
        loop {
            for k in 0..n {
                let s = self.cum[k] + lap * l;
                if s >= b {
                    return out;
                }
                if s > a {
                    out.push(self.pts[k]);
                }
            }
            lap += 1.0;
        }
    }
}

/// Draws `curve` projected by `frame`, leaving a gap around the under strand
/// of every crossing of `diagram` (which must have been extracted from this
/// curve). Each drawn piece is its own subpath, so a diagram with `n`
/// separated crossings yields `n` moveto commands; no crossings gives one
/// closed path.
pub fn render_svg(curve: &SampledCurve, frame: &ProjectionFrame, diagram: &LinkDiagram) -> Result<String> {
    let raw: Vec<Vector2<f64>> = curve.points().iter().map(|p| frame.project(p)).collect();
    let (mut lo, mut hi) = (raw[0], raw[0]);
    for p in &raw {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    let extent = (hi - lo).max().max(f64::MIN_POSITIVE);
    let scale = (CANVAS - 2.0 * MARGIN) / extent;
    let width = (hi.x - lo.x) * scale + 2.0 * MARGIN;
    let height = (hi.y - lo.y) * scale + 2.0 * MARGIN;
    let to_px = |p: &Vector2<f64>| Vector2::new(MARGIN + (p.x - lo.x) * scale, MARGIN + (hi.y - p.y) * scale);
    let line = Polyline::new(raw.iter().map(to_px).collect());
    let gap = GAP_FRACTION * width.hypot(height);

    let mut centers = Vec::with_capacity(diagram.crossing_count());
    for c in diagram.crossings() {
        let t = c.under_param.ok_or_else(|| Error::InvalidCurve(format!("crossing {} has no curve parameter", c.id)))?;
        let (i, f) = curve.locate(t);
        centers.push(line.cum[i] + f * (line.cum[i + 1] - line.cum[i]));
    }
    centers.sort_by(|a, b| a.total_cmp(b));

    // merged gap intervals on the circle of circumference L
    let l = line.length();
    let mut gaps: Vec<(f64, f64)> = Vec::new();
    for c in centers {
        match gaps.last_mut() {
            Some(last) if c - gap <= last.1 => last.1 = c + gap,
            _ => gaps.push((c - gap, c + gap)),
        }
    }
    if gaps.len() > 1 {
        let last = gaps[gaps.len() - 1];
        if last.1 - l >= gaps[0].0 {
            gaps[0].0 = last.0 - l;
            gaps.pop();
        }
    }

    let mut d = String::new();
    if gaps.is_empty() {
        for (k, p) in line.pts.iter().enumerate() {
            let _ = write!(d, "{}{} {} ", if k == 0 { "M" } else { "L" }, num(p.x), num(p.y));
        }
        d.push('Z');
    } else if gaps[0].1 - gaps[0].0 < l {
        for k in 0..gaps.len() {
            let start = gaps[k].1;
            let end = if k + 1 < gaps.len() { gaps[k + 1].0 } else { gaps[0].0 + l };
            if end <= start {
                continue;
            }
            let a = line.at(start);
            let _ = write!(d, "M{} {} ", num(a.x), num(a.y));
            for p in line.vertices_between(start, end) {
                let _ = write!(d, "L{} {} ", num(p.x), num(p.y));
            }
            let b = line.at(end);
            let _ = write!(d, "L{} {} ", num(b.x), num(b.y));
        }
    }
    let d = d.trim_end();

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = num(width),
        h = num(height)
    );
    let _ = writeln!(
        out,
        "<path d=\"{d}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>",
        num(STROKE_WIDTH)
    );
    out.push_str("</svg>\n");
    Ok(out)
}
