use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::laurent::LaurentPolynomial;
use super::InvariantReport;
use crate::error::{Error, Result};

/// Largest `p·q` among catalogued torus knots.
pub const TORUS_PQ_LIMIT: u32 = 35;

/// `(t^{pq} − 1)(t − 1) / ((t^p − 1)(t^q − 1))`, normalized.
pub fn torus_alexander(p: u32, q: u32) -> Result<LaurentPolynomial> {
    if p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let t_pow_minus_one = |k: u32| LaurentPolynomial::from_terms([(k as i64, 1), (0, -1)]);
    let num = t_pow_minus_one(p * q).mul(&t_pow_minus_one(1));
    let den = t_pow_minus_one(p).mul(&t_pow_minus_one(q));
    let quot = num.div_exact(&den).expect("cyclotomic divisibility");
    Ok(quot.normalized_symmetric().expect("torus knot polynomials are symmetric"))
}

/// `a(K)` read off a normalized Alexander polynomial: `Σ_k k² c_k`.
pub(crate) fn conway_a_from_alexander(delta: &LaurentPolynomial) -> BigInt {
    delta.terms().filter(|(e, _)| *e > 0).map(|(e, c)| c * BigInt::from(e * e)).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub alexander: LaurentPolynomial,
    pub determinant: BigInt,
    pub arf: u8,
}

impl CatalogEntry {
    fn new(name: impl Into<String>, alexander: LaurentPolynomial) -> Self {
        let determinant = alexander.eval_i64(-1).abs();
        let arf = conway_a_from_alexander(&alexander).mod_floor(&BigInt::from(2)) == BigInt::from(1);
        CatalogEntry { name: name.into(), alexander, determinant, arf: arf as u8 }
    }
}

/// Unknot, figure-eight, and torus knots `T(p, q)` with `2 ≤ p < q`, `pq ≤ 35`.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![
        CatalogEntry::new("unknot", LaurentPolynomial::one()),
        CatalogEntry::new("figure-eight (4_1)", LaurentPolynomial::from_terms([(-1, -1), (0, 3), (1, -1)])),
    ];
    for p in 2..TORUS_PQ_LIMIT {
        for q in p + 1..=TORUS_PQ_LIMIT / p {
            if p.gcd(&q) != 1 {
                continue;
            }
            let name = if (p, q) == (2, 3) { "trefoil (3_1 / torus(2,3))".to_string() } else { format!("torus({p},{q})") };
            out.push(CatalogEntry::new(name, torus_alexander(p, q).expect("coprime")));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Known(String),
    Unidentified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Known(name) => f.write_str(name),
            Verdict::Unidentified => f.write_str("unidentified"),
        }
    }
}

/// Unique catalog entry matching Alexander polynomial, determinant and Arf.
/// Chirality is never claimed.
pub fn identify(report: &InvariantReport) -> Verdict {
    let matches: Vec<CatalogEntry> = catalog()
        .into_iter()
        .filter(|e| e.alexander == report.alexander && e.determinant == report.determinant && e.arf == report.arf)
        .collect();
    match matches.as_slice() {
        [only] => Verdict::Known(only.name.clone()),
        _ => Verdict::Unidentified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn torus_polynomials() {
        assert_eq!(torus_alexander(2, 3).unwrap(), poly(&[(-1, 1), (0, -1), (1, 1)]));
        assert_eq!(torus_alexander(2, 5).unwrap(), poly(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]));
        assert_eq!(torus_alexander(3, 2).unwrap(), torus_alexander(2, 3).unwrap());
        assert_eq!(torus_alexander(2, 4), Err(Error::NotCoprime { p: 2, q: 4 }));
    }

    #[test]
    fn torus_division_is_exact_for_small_pairs() {
        for p in 2..=17u32 {
            for q in 2..=17u32 {
                if p * q <= 35 && p.gcd(&q) == 1 {
                    let d = torus_alexander(p, q).unwrap();
                    assert_eq!(d.eval_i64(1), BigInt::from(1));
                    assert_eq!(d.max_exp(), Some(((p - 1) * (q - 1) / 2) as i64));
                }
            }
        }
    }

    #[test]
    fn catalog_is_unambiguous() {
        let cat = catalog();
        for (i, a) in cat.iter().enumerate() {
            for b in &cat[i + 1..] {
                assert_ne!(a.alexander, b.alexander, "{} vs {}", a.name, b.name);
            }
        }
        let trefoil = cat.iter().find(|e| e.name.starts_with("trefoil")).unwrap();
        assert_eq!((trefoil.arf, trefoil.determinant.clone()), (1, BigInt::from(3)));
        let f8 = cat.iter().find(|e| e.name.starts_with("figure-eight")).unwrap();
        assert_eq!((f8.arf, f8.determinant.clone()), (1, BigInt::from(5)));
    }

    #[test]
    fn conway_from_alexander() {
        assert_eq!(conway_a_from_alexander(&torus_alexander(2, 3).unwrap()), BigInt::from(1));
        assert_eq!(conway_a_from_alexander(&poly(&[(-1, -1), (0, 3), (1, -1)])), BigInt::from(-1));
    }
}
