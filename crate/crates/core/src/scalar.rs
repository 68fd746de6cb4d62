//! Exact 2-local rational scalars.
//!
//! A `LocalRational` is a fully reduced fraction whose denominator is odd,
//! i.e. an element of the localization Z_(2).  Constructing a fraction with
//! an even denominator is an error, never a silent acceptance.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Active coefficient ring of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "Z2local")]
    Z2Local,
    #[serde(rename = "F2")]
    F2,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Z2Local => write!(f, "Z2local"),
            Ring::F2 => write!(f, "F2"),
        }
    }
}

/// A reduced fraction with odd denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalRational {
    num: i64,
    den: i64,
}

impl LocalRational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if den % 2 == 0 {
            return Err(Error::NotTwoLocal { num, den });
        }
        Ok(LocalRational { num, den })
    }

    pub fn integer(n: i64) -> Self {
        LocalRational { num: n, den: 1 }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Residue mod 2.  The denominator is odd, hence invertible mod 2, so the
    /// residue is just the parity of the numerator.
    pub fn mod2(&self) -> bool {
        self.num.rem_euclid(2) == 1
    }

    /// Multiplicative inverse, defined when the numerator is odd.
    pub fn inverse(&self) -> Result<Self> {
        if self.num == 0 || self.num % 2 == 0 {
            return Err(Error::NotInvertible(self.num));
        }
        LocalRational::new(self.den, self.num)
    }
}

/// Reduce in i128 so intermediate products cannot overflow; the reduced
/// value must still fit the i64 storage.
fn reduced(num: i128, den: i128) -> LocalRational {
    debug_assert!(den % 2 != 0);
    let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
    let g = num.gcd(&den);
    if g > 1 {
        num /= g;
        den /= g;
    }
    LocalRational {
        num: i64::try_from(num).expect("2-local numerator exceeds i64"),
        den: i64::try_from(den).expect("2-local denominator exceeds i64"),
    }
}

impl Add for LocalRational {
    type Output = LocalRational;
    fn add(self, rhs: Self) -> Self::Output {
        // odd * odd = odd, so the sum stays 2-local
        reduced(
            self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Sub for LocalRational {
    type Output = LocalRational;
    fn sub(self, rhs: Self) -> Self::Output {
        self + (-rhs)
    }
}

impl Mul for LocalRational {
    type Output = LocalRational;
    fn mul(self, rhs: Self) -> Self::Output {
        reduced(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Neg for LocalRational {
    type Output = LocalRational;
    fn neg(self) -> Self::Output {
        LocalRational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl fmt::Display for LocalRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for LocalRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
        };
        match s.split_once('/') {
            Some((n, d)) => LocalRational::new(parse_int(n)?, parse_int(d)?),
            None => Ok(LocalRational::integer(parse_int(s)?)),
        }
    }
}

impl Serialize for LocalRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LocalRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_denominator() {
        assert!(matches!(
            LocalRational::new(1, 2),
            Err(Error::NotTwoLocal { .. })
        ));
        assert!(matches!(
            LocalRational::new(3, -4),
            Err(Error::NotTwoLocal { .. })
        ));
    }

    #[test]
    fn reduces_before_checking() {
        // 2/4 reduces to 1/2, still not 2-local
        assert!(LocalRational::new(2, 4).is_err());
        // 2/6 reduces to 1/3, fine
        let x = LocalRational::new(2, 6).unwrap();
        assert_eq!((x.numerator(), x.denominator()), (1, 3));
    }

    #[test]
    fn sign_normalization() {
        let x = LocalRational::new(1, -3).unwrap();
        assert_eq!((x.numerator(), x.denominator()), (-1, 3));
    }

    #[test]
    fn exact_fraction_sum() {
        let third = LocalRational::new(1, 3).unwrap();
        let two_thirds = LocalRational::new(2, 3).unwrap();
        assert_eq!(third + two_thirds, LocalRational::one());
    }

    #[test]
    fn mod2_of_odd_denominator_inverse() {
        // 1/3 = 3^{-1} = 1 mod 2
        assert!(LocalRational::new(1, 3).unwrap().mod2());
        assert!(!LocalRational::new(2, 3).unwrap().mod2());
        assert!(LocalRational::new(-1, 5).unwrap().mod2());
    }

    #[test]
    fn inverse_of_odd() {
        let x = LocalRational::new(3, 5).unwrap();
        assert_eq!(x * x.inverse().unwrap(), LocalRational::one());
        assert!(LocalRational::new(2, 1).unwrap().inverse().is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["3", "-1/3", "0", "7/9"] {
            let x: LocalRational = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
    }
}
