use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer Laurent polynomial in `t`, stored sparsely without zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<C: Into<BigInt>, I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Long division; `None` unless `divisor` divides exactly over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (d_exp, d_lead) = divisor.coeffs.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&r_exp, r_lead)) = rem.coeffs.iter().next_back() {
            if rem.span() < divisor.span() {
                return None;
            }
            if !(r_lead % d_lead).is_zero() {
                return None;
            }
            let term = Self::monomial(r_lead / d_lead, r_exp - d_exp);
            rem = rem.sub(&divisor.mul(&term));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    fn span(&self) -> u64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (hi - lo) as u64,
            _ => 0,
        }
    }

    pub fn eval_i64(&self, t: i64) -> BigInt {
        assert!(t != 0 || self.min_exp().is_none_or(|e| e >= 0), "negative power of zero");
        let base = BigInt::from(t);
        let mut acc = BigInt::zero();
        for (e, c) in &self.coeffs {
            let term = if *e >= 0 {
                c * num_traits::pow(base.clone(), *e as usize)
            } else {
                // only ±1 are units
                assert!(t == 1 || t == -1, "negative exponent at non-unit");
                c * num_traits::pow(base.clone(), (-*e) as usize)
            };
            acc += term;
        }
        acc
    }

    /// Invariant under `t ↦ 1/t`.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    /// Normal form of a knot polynomial up to units `±t^k`: centred so that
    /// `p(t) = p(1/t)` and signed so that `p(1) > 0`. Returns `None` when the
    /// exponent span is odd or the result is not palindromic.
    pub fn normalized_symmetric(&self) -> Option<Self> {
        let (lo, hi) = (self.min_exp()?, self.max_exp()?);
        if (lo + hi) % 2 != 0 {
            return None;
        }
        let mut p = self.shift(-(lo + hi) / 2);
        if p.eval_i64(1).is_negative() {
            p = p.neg();
        }
        p.is_palindromic().then_some(p)
    }

    /// `exponent:coefficient` pairs, comma-separated, ascending exponent.
    pub fn to_pairs_string(&self) -> String {
        self.coeffs.iter().map(|(e, c)| format!("{e}:{c}")).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "t")?,
                e => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[(0, 1), (1, 1)]);
        let b = p(&[(0, -1), (1, 1)]);
        assert_eq!(a.mul(&b), p(&[(0, -1), (2, 1)]));
        assert_eq!(a.add(&b), p(&[(1, 2)]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn exact_division() {
        let num = p(&[(0, -1), (6, 1)]);
        let den = p(&[(0, -1), (2, 1)]);
        assert_eq!(num.div_exact(&den), Some(p(&[(0, 1), (2, 1), (4, 1)])));
        assert_eq!(p(&[(0, 1), (2, 1)]).div_exact(&p(&[(0, 1), (1, 1)])), None);
    }

    #[test]
    fn normalization() {
        let raw = p(&[(3, -1), (4, 1), (5, -1)]);
        assert_eq!(raw.normalized_symmetric(), Some(p(&[(-1, 1), (0, -1), (1, 1)])));
        assert_eq!(p(&[(0, 1), (1, 1)]).normalized_symmetric(), None);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(-1, 1), (0, -1), (1, 1)]).to_string(), "t - 1 + t^-1");
        assert_eq!(p(&[(-1, -1), (0, 3), (1, -1)]).to_string(), "-t + 3 - t^-1");
        assert_eq!(LaurentPolynomial::one().to_string(), "1");
        assert_eq!(p(&[(-1, 1), (0, -1), (1, 1)]).to_pairs_string(), "-1:1,0:-1,1:1");
    }
}
