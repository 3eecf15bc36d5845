use nalgebra::Vector3;

use super::sample::SampledCurve;
use crate::error::{Error, Result};

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Csv(e.to_string())
}

/// `t,x,y,z` header then one row per vertex, 17 significant digits.
pub fn write_curve_csv(curve: &SampledCurve) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "x", "y", "z"]).expect("in-memory write");
    for (t, p) in curve.params().iter().zip(curve.points()) {
        w.write_record([t, &p.x, &p.y, &p.z].map(|v| format!("{v:.16e}"))).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

/// Reads a `t,x,y,z` polyline. A final row repeating the first point is
/// dropped; the period is extrapolated by one mean parameter step.
pub fn read_curve_csv(text: &str) -> Result<SampledCurve> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = r.headers().map_err(csv_err)?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h == name).ok_or_else(|| Error::Csv(format!("missing column `{name}`")))
    };
    let cols = [col("t")?, col("x")?, col("y")?, col("z")?];
    let mut params = Vec::new();
    let mut points = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_err)?;
        let mut vals = [0.0; 4];
        for (v, &c) in vals.iter_mut().zip(&cols) {
            let field = rec.get(c).ok_or_else(|| Error::Csv(format!("row {}: missing field", row + 2)))?;
            *v = field.parse().map_err(|_| Error::Csv(format!("row {}: bad number `{field}`", row + 2)))?;
        }
        params.push(vals[0]);
        points.push(Vector3::new(vals[1], vals[2], vals[3]));
    }
    if points.len() > 1 && points[0] == points[points.len() - 1] {
        points.pop();
        params.pop();
    }
    if points.len() < 2 {
        return Err(Error::InvalidCurve(format!("only {} rows", points.len())));
    }
    let n = params.len();
    let step = (params[n - 1] - params[0]) / (n - 1) as f64;
    let shift = params[0];
    let params: Vec<f64> = params.iter().map(|t| t - shift).collect();
    let period = params[n - 1] + step;
    SampledCurve::new(points, params, period, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample;
    use crate::knot::fourier_trefoil;

    #[test]
    fn header_and_first_row() {
        let c = sample(&fourier_trefoil(), 0.2).unwrap();
        let text = write_curve_csv(&c);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,x,y,z"));
        let first: Vec<f64> = lines.next().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(first[0], 0.0);
        assert_eq!(first[1], 1.0);
        assert_eq!(text.lines().count(), c.len() + 1);
    }

    #[test]
    fn reads_back_exactly() {
        let c = sample(&fourier_trefoil(), 0.2).unwrap();
        let back = read_curve_csv(&write_curve_csv(&c)).unwrap();
        assert_eq!(back.points(), c.points());
        assert_eq!(back.params(), c.params());
        assert!((back.period() - c.period()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(matches!(read_curve_csv("t,x,y\n0,1,2\n"), Err(Error::Csv(_))));
        assert!(matches!(read_curve_csv("t,x,y,z\n0,1,2,abc\n"), Err(Error::Csv(_))));
    }
}
