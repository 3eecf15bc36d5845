use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Exact rational frequency, always kept in lowest terms with a positive
/// denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalFreq {
    num: i64,
    den: i64,
}

impl RationalFreq {
    pub const ZERO: RationalFreq = RationalFreq { num: 0, den: 1 };

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den).max(1);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        RationalFreq { num: n, den: d }
    }

    pub fn integer(n: i64) -> Self {
        RationalFreq { num: n, den: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn abs(&self) -> Self {
        RationalFreq { num: self.num.abs(), den: self.den }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn mul(&self, other: RationalFreq) -> Self {
        RationalFreq::new(self.num * other.num, self.den * other.den)
    }

    pub fn div(&self, other: RationalFreq) -> Self {
        assert!(!other.is_zero(), "division by zero frequency");
        RationalFreq::new(self.num * other.den, self.den * other.num)
    }

    pub fn add(&self, other: RationalFreq) -> Self {
        RationalFreq::new(self.num * other.den + other.num * self.den, self.den * other.den)
    }

    pub fn neg(&self) -> Self {
        RationalFreq { num: -self.num, den: self.den }
    }
}

impl From<i64> for RationalFreq {
    fn from(n: i64) -> Self {
        RationalFreq::integer(n)
    }
}

impl PartialOrd for RationalFreq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalFreq {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for RationalFreq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for RationalFreq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 0, msg: format!("bad frequency `{s}`") };
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(RationalFreq::new(n, d))
            }
            None => s.trim().parse().map(RationalFreq::integer).map_err(|_| bad()),
        }
    }
}

/// Greatest common divisor of nonzero rationals: gcd of numerators over lcm of
/// denominators. Returns `None` for an empty input.
pub fn rational_gcd<I: IntoIterator<Item = RationalFreq>>(freqs: I) -> Option<RationalFreq> {
    let mut num = 0i64;
    let mut den = 1i64;
    let mut any = false;
    for f in freqs {
        if f.is_zero() {
            continue;
        }
        any = true;
        num = num.gcd(&f.numer());
        den = den.lcm(&f.denom());
    }
    any.then(|| RationalFreq::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let f = RationalFreq::new(6, -4);
        assert_eq!((f.numer(), f.denom()), (-3, 2));
        assert_eq!(RationalFreq::new(0, 7), RationalFreq::ZERO);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("5/2".parse::<RationalFreq>().unwrap(), RationalFreq::new(5, 2));
        assert_eq!("-3".parse::<RationalFreq>().unwrap(), RationalFreq::integer(-3));
        assert!("1/0".parse::<RationalFreq>().is_err());
        assert!("x".parse::<RationalFreq>().is_err());
        assert_eq!(RationalFreq::new(10, 4).to_string(), "5/2");
    }

    #[test]
    fn gcd_of_rationals() {
        let g = rational_gcd([RationalFreq::new(1, 2), RationalFreq::new(3, 2)]).unwrap();
        assert_eq!(g, RationalFreq::new(1, 2));
        let g = rational_gcd([4, 6, 10].map(RationalFreq::integer)).unwrap();
        assert_eq!(g, RationalFreq::integer(2));
        assert_eq!(rational_gcd([RationalFreq::ZERO]), None);
    }
}
