//! Plain-text knot spec files.
//!
//! ```text
//! knot trefoil
//! # axis amplitude frequency phase [sin]
//! x 1 2 0
//! y 1 3 0.5
//! z 0.5 5 0.5
//! z 0.5 3 0.5 sin
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::knot::FourierKnot;
use crate::rational::RationalFreq;
use crate::series::{CosTerm, FourierSeries};

pub fn parse_knot_spec(text: &str) -> Result<FourierKnot> {
    let mut name: Option<String> = None;
    let mut axes: [Vec<CosTerm>; 3] = Default::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let head = fields.next().unwrap_or_default();
        if name.is_none() {
            if head != "knot" {
                return Err(err(format!("expected `knot <name>` header, found `{line}`")));
            }
            name = Some(line["knot".len()..].trim().to_string());
            continue;
        }
        let axis = match head {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            other => return Err(err(format!("unknown axis `{other}`"))),
        };
        let rest: Vec<&str> = fields.collect();
        let is_sin = match rest.len() {
            3 => false,
            4 if rest[3] == "sin" => true,
            4 if rest[3] == "cos" => false,
            _ => return Err(err(format!("expected `<axis> <amplitude> <freq> <phase> [sin]`, found `{line}`"))),
        };
        let amplitude = parse_real(rest[0]).ok_or_else(|| err(format!("bad amplitude `{}`", rest[0])))?;
        let frequency: RationalFreq = rest[1].parse().map_err(|_| err(format!("bad frequency `{}`", rest[1])))?;
        let phase = parse_real(rest[2]).ok_or_else(|| err(format!("bad phase `{}`", rest[2])))?;
        axes[axis].push(if is_sin {
            CosTerm::sine(amplitude, frequency, phase)
        } else {
            CosTerm::new(amplitude, frequency, phase)
        });
    }
    let name = name.ok_or(Error::Parse { line: 0, msg: "empty spec file".into() })?;
    let [x, y, z] = axes;
    Ok(FourierKnot::new(name, FourierSeries::new(x), FourierSeries::new(y), FourierSeries::new(z)))
}

fn parse_real(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Writes every term as a cosine; `parse_knot_spec(write_knot_spec(k))` is
/// canonically equal to `k`.
pub fn write_knot_spec(knot: &FourierKnot) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "knot {}", knot.name);
    for (axis, series) in ["x", "y", "z"].iter().zip(knot.coords()) {
        for t in series.terms() {
            let _ = writeln!(out, "{axis} {:?} {} {:?}", t.amplitude, t.frequency, t.phase);
        }
    }
    out
}
