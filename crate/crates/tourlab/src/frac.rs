//! Exact nonnegative rationals.
//!
//! All density and size-bound arithmetic in this crate is exact: a `Frac` is a
//! reduced `num/den` pair and comparisons cross-multiply in `u128`, so there is
//! no floating-point ambiguity at decision boundaries. The text form is always
//! `"p/q"` (also accepted without the `/q` part, meaning an integer).

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering as CmpOrdering;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Frac {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Frac {
    /// Reduced fraction `num/den`. Panics if `den == 0`.
    pub fn new(num: u64, den: u64) -> Frac {
        assert!(den != 0, "zero denominator");
        if num == 0 {
            return Frac { num: 0, den: 1 };
        }
        let g = gcd(num, den);
        Frac {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Frac {
        Frac { num: 0, den: 1 }
    }

    pub fn one() -> Frac {
        Frac { num: 1, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// `1 - self`; panics if `self > 1`.
    pub fn one_minus(&self) -> Frac {
        assert!(self.num <= self.den, "fraction above one");
        Frac::new(self.den - self.num, self.den)
    }

    pub fn halve(&self) -> Frac {
        Frac::new(
            self.num,
            self.den.checked_mul(2).expect("denominator overflow"),
        )
    }

    pub fn scale(&self, k: u64) -> Frac {
        Frac::new(
            self.num.checked_mul(k).expect("numerator overflow"),
            self.den,
        )
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Frac) -> Option<CmpOrdering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Frac) -> CmpOrdering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFracError(String);

impl fmt::Display for ParseFracError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}, expected \"p/q\"", self.0)
    }
}

impl std::error::Error for ParseFracError {}

impl FromStr for Frac {
    type Err = ParseFracError;

    fn from_str(s: &str) -> Result<Frac, ParseFracError> {
        let bad = || ParseFracError(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let num: u64 = p.trim().parse().map_err(|_| bad())?;
                let den: u64 = q.trim().parse().map_err(|_| bad())?;
                if den == 0 {
                    return Err(bad());
                }
                Ok(Frac::new(num, den))
            }
            None => {
                let num: u64 = s.trim().parse().map_err(|_| bad())?;
                Ok(Frac::new(num, 1))
            }
        }
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Frac, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces() {
        assert_eq!(Frac::new(2, 24), Frac::new(1, 12));
        assert_eq!(Frac::new(0, 7), Frac::zero());
    }

    #[test]
    fn ordering_is_exact() {
        assert!(Frac::new(1, 3) < Frac::new(34, 100));
        assert!(Frac::new(1, 12) < Frac::new(1, 11));
        assert_eq!(Frac::new(7, 14), Frac::new(1, 2));
    }

    #[test]
    fn complement() {
        assert_eq!(Frac::new(1, 12).one_minus(), Frac::new(11, 12));
    }

    #[test]
    fn text_round_trip() {
        let f: Frac = "3/9".parse().unwrap();
        assert_eq!(f, Frac::new(1, 3));
        assert_eq!(f.to_string(), "1/3");
        assert_eq!("2".parse::<Frac>().unwrap(), Frac::new(2, 1));
        assert!("1/0".parse::<Frac>().is_err());
        assert!("x/2".parse::<Frac>().is_err());
    }
}
