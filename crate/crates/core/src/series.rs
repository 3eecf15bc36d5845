use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::rational::RationalFreq;

/// Phases closer than this (mod 2π) are treated as equal when merging terms.
const PHASE_MERGE_TOL: f64 = 1e-12;

/// One term `amplitude · cos(frequency · t + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosTerm {
    pub amplitude: f64,
    pub frequency: RationalFreq,
    pub phase: f64,
}

impl CosTerm {
    pub fn new(amplitude: f64, frequency: impl Into<RationalFreq>, phase: f64) -> Self {
        CosTerm { amplitude, frequency: frequency.into(), phase }
    }

    /// `amplitude · sin(frequency · t + phase)`, stored as a cosine shifted by −π/2.
    pub fn sine(amplitude: f64, frequency: impl Into<RationalFreq>, phase: f64) -> Self {
        CosTerm { amplitude, frequency: frequency.into(), phase: phase - FRAC_PI_2 }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.amplitude * (self.frequency.to_f64() * t + self.phase).cos()
    }

    /// Canonical representative: nonnegative frequency, phase in (−π, π],
    /// constants folded to phase zero.
    fn canonical(self) -> CosTerm {
        let CosTerm { mut amplitude, mut frequency, mut phase } = self;
        if frequency.is_zero() {
            amplitude *= phase.cos();
            phase = 0.0;
        } else if frequency.numer() < 0 {
            // cos(−kt + L) = cos(kt − L)
            frequency = frequency.neg();
            phase = -phase;
        }
        CosTerm { amplitude, frequency, phase: reduce_phase(phase) }
    }
}

/// Reduces a phase into (−π, π]; values already in range are returned untouched.
pub fn reduce_phase(phase: f64) -> f64 {
    if phase > -PI && phase <= PI {
        return phase;
    }
    let r = phase.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

fn same_phase(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(TAU);
    d <= PHASE_MERGE_TOL || TAU - d <= PHASE_MERGE_TOL
}

/// A finite Fourier series `Σ A_i cos(K_i t + L_i)` in canonical form.
///
/// Terms sharing a frequency and phase are merged, zero amplitudes dropped,
/// and the order of first appearance is kept.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FourierSeries {
    terms: Vec<CosTerm>,
}

impl FourierSeries {
    pub fn new<I: IntoIterator<Item = CosTerm>>(terms: I) -> Self {
        let mut out: Vec<CosTerm> = Vec::new();
        for term in terms {
            let term = term.canonical();
            match out
                .iter_mut()
                .find(|t| t.frequency == term.frequency && same_phase(t.phase, term.phase))
            {
                Some(existing) => existing.amplitude += term.amplitude,
                None => out.push(term),
            }
        }
        out.retain(|t| t.amplitude != 0.0);
        FourierSeries { terms: out }
    }

    pub fn empty() -> Self {
        FourierSeries::default()
    }

    pub fn terms(&self) -> &[CosTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    /// Exact term-wise derivative: `(A, K, L) ↦ (A·K, K, L + π/2)`.
    pub fn derivative(&self) -> FourierSeries {
        FourierSeries::new(self.terms.iter().filter(|t| !t.frequency.is_zero()).map(|t| CosTerm {
            amplitude: t.amplitude * t.frequency.to_f64(),
            frequency: t.frequency,
            phase: t.phase + FRAC_PI_2,
        }))
    }

    /// `Σ |A_i · K_i|`, a bound on the absolute derivative.
    pub fn derivative_bound(&self) -> f64 {
        self.terms.iter().map(|t| (t.amplitude * t.frequency.to_f64()).abs()).sum()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = RationalFreq> + '_ {
        self.terms.iter().map(|t| t.frequency)
    }

    /// `Σ c_j · s_j` as a single canonical series.
    pub fn linear_combination(parts: &[(f64, &FourierSeries)]) -> FourierSeries {
        FourierSeries::new(parts.iter().filter(|(c, _)| *c != 0.0).flat_map(|(c, s)| {
            s.terms.iter().map(move |t| CosTerm { amplitude: c * t.amplitude, ..*t })
        }))
    }

    /// The series of `s ↦ f(offset − s)`.
    pub fn reversed(&self, offset: f64) -> FourierSeries {
        FourierSeries::new(self.terms.iter().map(|t| CosTerm {
            amplitude: t.amplitude,
            frequency: t.frequency.neg(),
            phase: t.frequency.to_f64() * offset + t.phase,
        }))
    }

    /// Substitutes `t ↦ t / g`, dividing every frequency by `g`.
    pub fn rescale_frequencies(&self, g: RationalFreq) -> FourierSeries {
        FourierSeries::new(self.terms.iter().map(|t| CosTerm { frequency: t.frequency.div(g), ..*t }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_series_is_zero() {
        assert_eq!(FourierSeries::empty().evaluate(1.234), 0.0);
    }

    #[test]
    fn merges_and_drops() {
        let s = FourierSeries::new([
            CosTerm::new(1.0, 2, 0.3),
            CosTerm::new(0.5, 2, 0.3 + TAU),
            CosTerm::new(2.0, 3, 0.0),
            CosTerm::new(-2.0, 3, 0.0),
        ]);
        assert_eq!(s.terms(), &[CosTerm::new(1.5, 2, 0.3)]);
    }

    #[test]
    fn folds_negative_frequency() {
        let s = FourierSeries::new([CosTerm::sine(0.25, RationalFreq::new(-1, 2), 0.0)]);
        let t = s.terms()[0];
        assert_eq!(t.frequency, RationalFreq::new(1, 2));
        assert!((t.phase - FRAC_PI_2).abs() < 1e-15);
        for i in 0..50 {
            let x = i as f64 * 0.37;
            assert!((s.evaluate(x) - 0.25 * (-0.5 * x).sin()).abs() < 1e-14);
        }
    }

    #[test]
    fn constant_terms_fold_phase() {
        let s = FourierSeries::new([CosTerm::new(2.0, 0, PI / 3.0)]);
        assert_eq!(s.terms()[0].phase, 0.0);
        assert!((s.terms()[0].amplitude - 1.0).abs() < 1e-15);
    }

    #[test]
    fn derivative_examples() {
        let d = FourierSeries::new([CosTerm::new(1.0, 2, 0.0)]).derivative();
        assert_eq!(d.terms(), &[CosTerm::new(2.0, 2, FRAC_PI_2)]);
        assert!(FourierSeries::new([CosTerm::new(5.0, 0, 0.0)]).derivative().is_empty());
        let d = FourierSeries::new([CosTerm::new(1.0, 3, 0.5)]).derivative();
        assert_eq!(d.terms(), &[CosTerm::new(3.0, 3, 0.5 + FRAC_PI_2)]);
    }

    #[test]
    fn sine_convention_matches_direct_sine() {
        let s = FourierSeries::new([CosTerm::sine(0.7, 3, 0.5), CosTerm::sine(-1.2, 5, -2.0)]);
        for i in 0..200 {
            let t = -10.0 + i as f64 * 0.1;
            let direct = 0.7 * (3.0 * t + 0.5).sin() - 1.2 * (5.0 * t - 2.0).sin();
            assert!((s.evaluate(t) - direct).abs() < 1e-14);
        }
    }
}
