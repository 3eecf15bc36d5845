//! Alexander polynomial from the crossing/arc presentation matrix.
//!
//! The matrix has entries of degree at most one in `t`. Its first minor is
//! evaluated at `m + 1` integer points modulo several word-sized primes,
//! interpolated, and lifted to the integers by Chinese remaindering. Enough
//! primes are used to exceed twice the Hadamard bound on the coefficients,
//! so the lift is exact.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::laurent::LaurentPolynomial;
use crate::diagram::{LinkDiagram, Sign};
use crate::error::{Error, Result};

/// Matrix entry `c0 + c1·t`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Linear {
    pub c0: i64,
    pub c1: i64,
}

/// Square presentation matrix, rows indexed by under-crossing order and
/// columns by arcs.
pub(crate) fn presentation_matrix(d: &LinkDiagram) -> Vec<Vec<Linear>> {
    let word = &d.components()[0];
    let n = d.crossing_count();
    // arcs are numbered by how many under passages precede them, mod n
    let mut unders_before = 0usize;
    let mut over_lookup = HashMap::new();
    let mut rows: Vec<(usize, usize)> = Vec::with_capacity(n);
    for p in word {
        if p.over {
            over_lookup.insert(p.crossing, unders_before % n);
        } else {
            rows.push((p.crossing, unders_before % n));
            unders_before += 1;
        }
    }
    rows.iter()
        .map(|&(crossing, arc_in)| {
            let arc_out = (arc_in + 1) % n;
            let arc_over = over_lookup[&crossing];
            let sign = d.crossing(crossing).expect("validated").sign;
            let (over, inc, out) = match sign {
                Sign::Positive => (Linear { c0: 1, c1: -1 }, Linear { c0: 0, c1: 1 }, Linear { c0: -1, c1: 0 }),
                Sign::Negative => (Linear { c0: -1, c1: 1 }, Linear { c0: 1, c1: 0 }, Linear { c0: 0, c1: -1 }),
            };
            let mut row = vec![Linear::default(); n];
            for (col, e) in [(arc_over, over), (arc_in, inc), (arc_out, out)] {
                row[col].c0 += e.c0;
                row[col].c1 += e.c1;
            }
            row
        })
        .collect()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn to_mod(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes just below 2^31, descending.
fn primes() -> impl Iterator<Item = u64> {
    (0..).map(|k| (1u64 << 31) - 1 - k).filter(|&n| is_prime(n))
}

fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| m[r][k] != 0) else { return 0 };
        if piv != k {
            m.swap(piv, k);
            det = (p - det) % p;
        }
        let pivot = m[k][k];
        det = mul_mod(det, pivot, p);
        let inv = inv_mod(pivot, p);
        let (top, bottom) = m.split_at_mut(k + 1);
        let prow = &top[k];
        for row in bottom.iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let f = p - mul_mod(row[k], inv, p);
            for c in k..n {
                if prow[c] != 0 {
                    row[c] = (row[c] + mul_mod(f, prow[c], p)) % p;
                }
            }
        }
    }
    det
}

/// Coefficients (ascending) of the unique polynomial of degree `< xs.len()`
/// through `(x_i, y_i)` modulo `p`.
fn interpolate_mod(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            let den = (xs[i] + p - xs[i - level]) % p;
            dd[i] = mul_mod(num, inv_mod(den, p), p);
        }
    }
    // Horner on the Newton form
    let mut coeffs = vec![0u64; n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (t - x_i) + dd[i]
        let mut next = vec![0u64; n];
        for (k, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = (next[k + 1] + c) % p;
            }
            next[k] = (next[k] + p - mul_mod(c, xs[i] % p, p)) % p;
        }
        next[0] = (next[0] + dd[i]) % p;
        coeffs = next;
    }
    coeffs
}

/// log2 of the Hadamard bound for `max_{|t|=1} |det|`, which bounds every coefficient.
fn log2_coefficient_bound(minor: &[Vec<Linear>]) -> f64 {
    minor
        .iter()
        .map(|row| {
            let sq: f64 = row.iter().map(|e| ((e.c0.abs() + e.c1.abs()) as f64).powi(2)).sum();
            0.5 * sq.max(1.0).log2()
        })
        .sum()
}

/// Determinant of a matrix of linear entries, as an exact integer polynomial.
pub(crate) fn linear_determinant(minor: &[Vec<Linear>]) -> Vec<BigInt> {
    let m = minor.len();
    if m == 0 {
        return vec![BigInt::one()];
    }
    let needed_bits = log2_coefficient_bound(minor) + 2.0;
    let xs: Vec<u64> = (0..=m as u64).collect();
    let mut modulus = BigInt::one();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); m + 1];
    let mut bits = 0.0;
    for p in primes() {
        let ys: Vec<u64> = xs
            .iter()
            .map(|&x| {
                let mat = minor
                    .iter()
                    .map(|row| row.iter().map(|e| (to_mod(e.c0, p) + mul_mod(to_mod(e.c1, p), x, p)) % p).collect())
                    .collect();
                det_mod(mat, p)
            })
            .collect();
        let residues = interpolate_mod(&xs, &ys, p);
        // CRT: c ≡ coeffs (mod modulus), c ≡ r (mod p)
        let pb = BigInt::from(p);
        let inv = BigInt::from(inv_mod(to_mod_big(&modulus, p), p));
        for (c, &r) in coeffs.iter_mut().zip(&residues) {
            let cur = to_mod_big(c, p);
            let delta = ((BigInt::from(r) - BigInt::from(cur)) * &inv).modpow(&BigInt::one(), &pb);
            *c += &modulus * delta;
        }
        modulus *= &pb;
        bits += (p as f64).log2();
        if bits > needed_bits {
            break;
        }
    }
    let half = &modulus / 2;
    for c in coeffs.iter_mut() {
        if *c > half {
            *c -= &modulus;
        }
    }
    coeffs
}

fn to_mod_big(v: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let r = ((v % &pb) + &pb) % &pb;
    u64::try_from(r).expect("reduced below p")
}

/// Normalized Alexander polynomial (`Δ(t) = Δ(1/t)`, `Δ(1) = 1`).
pub fn alexander_polynomial(d: &LinkDiagram) -> Result<LaurentPolynomial> {
    if d.component_count() != 1 {
        return Err(Error::NotAKnot(d.component_count()));
    }
    let n = d.crossing_count();
    if n == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let matrix = presentation_matrix(d);
    let minor: Vec<Vec<Linear>> = matrix[..n - 1].iter().map(|row| row[..n - 1].to_vec()).collect();
    let coeffs = linear_determinant(&minor);
    let raw = LaurentPolynomial::from_terms(coeffs.into_iter().enumerate().map(|(k, c)| (k as i64, c)));
    if raw.is_zero() {
        return Err(Error::DegenerateAlexander("determinant vanishes".into()));
    }
    let norm = raw
        .normalized_symmetric()
        .ok_or_else(|| Error::DegenerateAlexander(format!("{raw} is not symmetric up to units")))?;
    if norm.eval_i64(1) != BigInt::one() {
        return Err(Error::DegenerateAlexander(format!("{norm} has value {} at t = 1", norm.eval_i64(1))));
    }
    Ok(norm)
}

/// `|Δ(−1)|`.
pub fn determinant(d: &LinkDiagram) -> Result<BigInt> {
    Ok(num_traits::Signed::abs(&alexander_polynomial(d)?.eval_i64(-1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    #[test]
    fn small_cases() {
        assert_eq!(alexander_polynomial(&LinkDiagram::unknot()).unwrap(), LaurentPolynomial::one());
        assert_eq!(alexander_polynomial(&curl()).unwrap(), LaurentPolynomial::one());
        assert_eq!(alexander_polynomial(&trefoil()).unwrap(), poly(&[(-1, 1), (0, -1), (1, 1)]));
        assert_eq!(alexander_polynomial(&trefoil().mirror()).unwrap(), poly(&[(-1, 1), (0, -1), (1, 1)]));
        assert_eq!(alexander_polynomial(&figure_eight()).unwrap(), poly(&[(-1, -1), (0, 3), (1, -1)]));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&LinkDiagram::unknot()).unwrap(), BigInt::from(1));
        assert_eq!(determinant(&trefoil()).unwrap(), BigInt::from(3));
        assert_eq!(determinant(&figure_eight()).unwrap(), BigInt::from(5));
    }

    #[test]
    fn links_are_rejected() {
        let l = trefoil().smooth_crossing(1).unwrap();
        assert_eq!(alexander_polynomial(&l), Err(Error::NotAKnot(2)));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = 2147483647u64;
        let coeffs = [5u64, p - 3, 7, 1];
        let xs: Vec<u64> = (0..4).collect();
        let ys: Vec<u64> = xs
            .iter()
            .map(|&x| coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p))
            .collect();
        assert_eq!(interpolate_mod(&xs, &ys, p), coeffs);
    }
}
