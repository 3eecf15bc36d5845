use std::f64::consts::TAU;

use nalgebra::Vector3;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::rational::{rational_gcd, RationalFreq};
use crate::series::{CosTerm, FourierSeries};

/// A closed space curve whose coordinates are finite Fourier series.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierKnot {
    pub name: String,
    pub x: FourierSeries,
    pub y: FourierSeries,
    pub z: FourierSeries,
}

impl FourierKnot {
    pub fn new(name: impl Into<String>, x: FourierSeries, y: FourierSeries, z: FourierSeries) -> Self {
        FourierKnot { name: name.into(), x, y, z }
    }

    pub fn coords(&self) -> [&FourierSeries; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// Same series in every coordinate; the label is ignored.
    pub fn canonically_eq(&self, other: &FourierKnot) -> bool {
        self.x == other.x && self.y == other.y && self.z == other.z
    }

    pub fn evaluate_point(&self, t: f64) -> Vector3<f64> {
        Vector3::new(self.x.evaluate(t), self.y.evaluate(t), self.z.evaluate(t))
    }

    pub fn derivative(&self) -> FourierKnot {
        FourierKnot::new(
            format!("d/dt {}", self.name),
            self.x.derivative(),
            self.y.derivative(),
            self.z.derivative(),
        )
    }

    pub fn tangent(&self, t: f64) -> Vector3<f64> {
        let d = |s: &FourierSeries| -> f64 {
            s.terms()
                .iter()
                .map(|c| -c.amplitude * c.frequency.to_f64() * (c.frequency.to_f64() * t + c.phase).sin())
                .sum()
        };
        Vector3::new(d(&self.x), d(&self.y), d(&self.z))
    }

    /// The curve `s ↦ γ(offset − s)`.
    pub fn reversed(&self, offset: f64) -> FourierKnot {
        FourierKnot::new(self.name.clone(), self.x.reversed(offset), self.y.reversed(offset), self.z.reversed(offset))
    }

    /// The curve `t ↦ m · γ(t)`.
    pub fn linear_map(&self, m: &nalgebra::Matrix3<f64>) -> FourierKnot {
        let row = |r: usize| {
            FourierSeries::linear_combination(&[(m[(r, 0)], &self.x), (m[(r, 1)], &self.y), (m[(r, 2)], &self.z)])
        };
        FourierKnot::new(self.name.clone(), row(0), row(1), row(2))
    }

    fn nonzero_frequencies(&self) -> impl Iterator<Item = RationalFreq> + '_ {
        self.coords().into_iter().flat_map(|s| s.frequencies()).filter(|f| !f.is_zero())
    }

    /// `2π` times the lcm of the denominators of all nonzero frequencies.
    pub fn period(&self) -> Result<f64> {
        let mut lcm: Option<i64> = None;
        for f in self.nonzero_frequencies() {
            lcm = Some(lcm.unwrap_or(1).lcm(&f.denom()));
        }
        lcm.map(|l| TAU * l as f64).ok_or(Error::AllConstant)
    }

    /// Divides every frequency by their rational gcd so the curve is traced
    /// once per `2π`.
    pub fn normalize_traversal(&self) -> Result<FourierKnot> {
        let g = rational_gcd(self.nonzero_frequencies()).ok_or(Error::AllConstant)?;
        if g == RationalFreq::integer(1) {
            return Ok(self.clone());
        }
        Ok(FourierKnot::new(
            self.name.clone(),
            self.x.rescale_frequencies(g),
            self.y.rescale_frequencies(g),
            self.z.rescale_frequencies(g),
        ))
    }

    /// The rational gcd used by [`normalize_traversal`](Self::normalize_traversal).
    pub fn traversal_factor(&self) -> Result<RationalFreq> {
        rational_gcd(self.nonzero_frequencies()).ok_or(Error::AllConstant)
    }

    /// Upper bound on the speed `|γ'(t)|`.
    pub fn speed_bound(&self) -> f64 {
        let b = self.coords().map(|s| s.derivative_bound());
        (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt()
    }
}

fn single(term: CosTerm) -> FourierSeries {
    FourierSeries::new([term])
}

/// One cosine per coordinate.
#[allow(clippy::too_many_arguments)]
pub fn lissajous(
    k1: RationalFreq,
    k2: RationalFreq,
    k3: RationalFreq,
    l1: f64,
    l2: f64,
    l3: f64,
    a1: f64,
    a2: f64,
    a3: f64,
) -> Result<FourierKnot> {
    if k1.is_zero() || k2.is_zero() || k3.is_zero() {
        return Err(Error::ZeroFrequency);
    }
    Ok(FourierKnot::new(
        format!("lissajous({k1},{k2},{k3})"),
        single(CosTerm::new(a1, k1, l1)),
        single(CosTerm::new(a2, k2, l2)),
        single(CosTerm::new(a3, k3, l3)),
    ))
}

/// Fourier form of the trefoil: `(cos 2t, cos(3t + ½), ½cos(5t + ½) + ½sin(3t + ½))`.
pub fn fourier_trefoil() -> FourierKnot {
    let mut k = fib_shaped(2, 3, 5);
    k.name = "trefoil".into();
    k
}

pub fn fourier_figure_eight() -> FourierKnot {
    FourierKnot::new(
        "figure8",
        FourierSeries::new([CosTerm::new(1.0, 1, 0.0), CosTerm::new(1.0, 3, 0.0)]),
        FourierSeries::new([CosTerm::sine(0.6, 1, 0.0), CosTerm::sine(1.0, 3, 0.0)]),
        FourierSeries::new([CosTerm::sine(0.4, 3, 0.0), CosTerm::sine(-1.0, 6, 0.0)]),
    )
}

fn fib_shaped(a: i64, b: i64, c: i64) -> FourierKnot {
    FourierKnot::new(
        "",
        single(CosTerm::new(1.0, a, 0.0)),
        single(CosTerm::new(1.0, b, 0.5)),
        FourierSeries::new([CosTerm::new(0.5, c, 0.5), CosTerm::sine(0.5, b, 0.5)]),
    )
}

/// `f_n` with `f_1 = f_2 = 1`.
pub fn fibonacci(n: u32) -> i64 {
    let (mut a, mut b) = (0i64, 1i64);
    for _ in 0..n {
        let next = a.checked_add(b).expect("fibonacci overflow");
        a = b;
        b = next;
    }
    a
}

/// The n-th Fibonacci knot `F(n)`; `F(3)` is the Fourier trefoil.
pub fn fibonacci_knot(n: u32) -> Result<FourierKnot> {
    if n == 0 {
        return Err(Error::BadIndex);
    }
    let mut k = fib_shaped(fibonacci(n), fibonacci(n + 1), fibonacci(n + 2));
    k.name = format!("F({n})");
    Ok(k)
}

fn check_coprime(p: u32, q: u32) -> Result<()> {
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    Ok(())
}

/// Product-form torus knot `((1 + ½cos(rt))cos t, (1 + ½cos(rt))sin t, ½sin(rt))`, `r = q/p`.
pub fn torus_knot_point(p: u32, q: u32, t: f64) -> Result<Vector3<f64>> {
    check_coprime(p, q)?;
    let r = q as f64 / p as f64;
    let tube = 1.0 + 0.5 * (r * t).cos();
    Ok(Vector3::new(t.cos() * tube, t.sin() * tube, 0.5 * (r * t).sin()))
}

/// The torus knot expanded into a finite Fourier series by the product-to-sum
/// identities.
pub fn torus_knot_fourier(p: u32, q: u32) -> Result<FourierKnot> {
    check_coprime(p, q)?;
    let r = RationalFreq::new(q as i64, p as i64);
    let one = RationalFreq::integer(1);
    let (sum, diff) = (one.add(r), one.add(r.neg()));
    Ok(FourierKnot::new(
        format!("torus({p},{q})"),
        FourierSeries::new([
            CosTerm::new(1.0, one, 0.0),
            CosTerm::new(0.25, sum, 0.0),
            CosTerm::new(0.25, diff, 0.0),
        ]),
        FourierSeries::new([
            CosTerm::sine(1.0, one, 0.0),
            CosTerm::sine(0.25, sum, 0.0),
            CosTerm::sine(0.25, diff, 0.0),
        ]),
        single(CosTerm::sine(0.5, r, 0.0)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn freqs(s: &FourierSeries) -> Vec<RationalFreq> {
        s.frequencies().collect()
    }

    #[test]
    fn trefoil_series() {
        let k = fourier_trefoil();
        assert_eq!(k.x.terms(), &[CosTerm::new(1.0, 2, 0.0)]);
        assert_eq!(k.y.terms(), &[CosTerm::new(1.0, 3, 0.5)]);
        let z = k.z.terms();
        assert_eq!(z.len(), 2);
        assert_eq!(z[0], CosTerm::new(0.5, 5, 0.5));
        assert_eq!((z[1].amplitude, z[1].frequency), (0.5, RationalFreq::integer(3)));
        assert!((z[1].phase - (0.5 - FRAC_PI_2)).abs() < 1e-15);
    }

    #[test]
    fn trefoil_evaluation() {
        let k = fourier_trefoil();
        assert_eq!(k.x.evaluate(0.0), 1.0);
        let z0 = 0.5 * 0.5f64.cos() + 0.5 * 0.5f64.sin();
        assert!((k.z.evaluate(0.0) - z0).abs() < 1e-15);
        assert!((z0 - 0.678504).abs() < 1e-6);
        let p = k.evaluate_point(0.0);
        assert!((p - Vector3::new(1.0, 0.5f64.cos(), z0)).norm() < 1e-15);
    }

    #[test]
    fn figure_eight_series() {
        let k = fourier_figure_eight();
        assert_eq!(k.x.terms(), &[CosTerm::new(1.0, 1, 0.0), CosTerm::new(1.0, 3, 0.0)]);
        assert_eq!(k.y.terms(), &[CosTerm::new(0.6, 1, -FRAC_PI_2), CosTerm::new(1.0, 3, -FRAC_PI_2)]);
        let p = k.evaluate_point(0.0);
        assert_eq!(p.x, 2.0);
        assert!(p.y.abs() < 1e-15 && p.z.abs() < 1e-15);
    }

    #[test]
    fn periods() {
        assert_eq!(fourier_trefoil().period().unwrap(), TAU);
        assert_eq!(torus_knot_fourier(2, 3).unwrap().period().unwrap(), 2.0 * TAU);
        assert_eq!(fibonacci_knot(6).unwrap().period().unwrap(), TAU);
        let flat = FourierKnot::new(
            "dot",
            single(CosTerm::new(1.0, 0, 0.0)),
            FourierSeries::empty(),
            FourierSeries::empty(),
        );
        assert_eq!(flat.period(), Err(Error::AllConstant));
        assert_eq!(flat.normalize_traversal(), Err(Error::AllConstant));
    }

    #[test]
    fn fibonacci_family() {
        assert_eq!((1..=12).map(fibonacci).collect::<Vec<_>>(), [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]);
        assert!(fibonacci_knot(3).unwrap().canonically_eq(&fourier_trefoil()));
        let f6 = fibonacci_knot(6).unwrap();
        let all: Vec<_> = f6.coords().iter().flat_map(|s| freqs(s)).collect();
        assert_eq!(all, [8, 13, 21, 13].map(RationalFreq::integer));
        let f1 = fibonacci_knot(1).unwrap();
        let all: Vec<_> = f1.coords().iter().flat_map(|s| freqs(s)).collect();
        assert_eq!(all, [1, 1, 2, 1].map(RationalFreq::integer));
        assert_eq!(fibonacci_knot(0), Err(Error::BadIndex));
    }

    #[test]
    fn torus_forms() {
        let k = torus_knot_fourier(2, 3).unwrap();
        assert_eq!(freqs(&k.x), [RationalFreq::integer(1), RationalFreq::new(5, 2), RationalFreq::new(1, 2)]);
        let p = torus_knot_point(2, 3, 0.0).unwrap();
        assert!((p - Vector3::new(1.5, 0.0, 0.0)).norm() < 1e-15);
        assert_eq!(torus_knot_point(2, 4, 0.0), Err(Error::NotCoprime { p: 2, q: 4 }));
        assert_eq!(torus_knot_fourier(3, 6).unwrap_err(), Error::NotCoprime { p: 3, q: 6 });
    }

    #[test]
    fn torus_tube_radius() {
        for i in 0..500 {
            let t = i as f64 * 0.05;
            let p = torus_knot_point(3, 5, t).unwrap();
            let r = (p.x * p.x + p.y * p.y).sqrt();
            assert!((r - 1.0).abs() <= 0.5 + 1e-15);
        }
    }

    #[test]
    fn normalize_examples() {
        let k = FourierKnot::new(
            "",
            single(CosTerm::new(1.0, 4, 0.0)),
            single(CosTerm::new(1.0, 6, 0.2)),
            single(CosTerm::new(1.0, 10, 0.1)),
        );
        let n = k.normalize_traversal().unwrap();
        let all: Vec<_> = n.coords().iter().flat_map(|s| freqs(s)).collect();
        assert_eq!(all, [2, 3, 5].map(RationalFreq::integer));
        assert_eq!(n.y.terms()[0].phase, 0.2);

        assert_eq!(fourier_trefoil().normalize_traversal().unwrap(), fourier_trefoil());

        let h = FourierKnot::new(
            "",
            single(CosTerm::new(1.0, RationalFreq::new(1, 2), 0.0)),
            single(CosTerm::new(1.0, RationalFreq::new(3, 2), 0.0)),
            FourierSeries::empty(),
        );
        let n = h.normalize_traversal().unwrap();
        assert_eq!(freqs(&n.x), [RationalFreq::integer(1)]);
        assert_eq!(freqs(&n.y), [RationalFreq::integer(3)]);
    }

    #[test]
    fn lissajous_shape() {
        let k = lissajous(2.into(), 3.into(), 5.into(), 0.5, 0.5, 0.5, 1.0, 1.0, 1.0).unwrap();
        assert!(k.coords().iter().all(|s| s.len() == 1));
        assert_eq!(
            lissajous(0.into(), 3.into(), 5.into(), 0.0, 0.0, 0.0, 1.0, 1.0, 1.0),
            Err(Error::ZeroFrequency)
        );
    }

    #[test]
    fn speed_bound_examples() {
        let k = FourierKnot::new("", single(CosTerm::new(1.0, 2, 0.0)), FourierSeries::empty(), FourierSeries::empty());
        assert_eq!(k.speed_bound(), 2.0);
        assert!((fourier_trefoil().speed_bound() - 29f64.sqrt()).abs() < 1e-14);
    }
}
