//! Roots of unity stored as exact rational exponents modulo one.
//!
//! A [`Phase`] `p/q` stands for `exp(2πi·p/q)`. The group law of the
//! multiplicative group of roots of unity becomes addition modulo one, so
//! every cocycle computation in this crate is carried out additively.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// An element of ℚ/ℤ, i.e. a root of unity written as its exponent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    /// Reduces `num/den` modulo one. Panics if `den == 0`.
    pub fn new(num: i64, den: u64) -> Phase {
        assert!(den > 0, "phase denominator must be positive");
        let d = den as i128;
        let n = (num as i128).rem_euclid(d);
        let g = (n as u64).gcd(&den).max(1);
        Phase {
            num: n as u64 / g,
            den: den / g,
        }
    }

    /// The phase `k/n`, i.e. the `k`-th power of a primitive `n`-th root.
    pub fn from_exponent(k: u64, n: u64) -> Phase {
        Phase::new((k % n) as i64, n)
    }

    pub fn half() -> Phase {
        Phase { num: 1, den: 2 }
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Multiplicative order of the root of unity.
    pub fn order(self) -> u64 {
        self.den
    }

    /// Exponent `k` with `self = k/n`. Returns `None` when the denominator
    /// does not divide `n`.
    pub fn exponent_mod(self, n: u64) -> Option<u64> {
        if !n.is_multiple_of(self.den) {
            return None;
        }
        Some(self.num * (n / self.den))
    }

    pub fn scale(self, k: i64) -> Phase {
        let n = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        Phase::new(n as i64, self.den)
    }

    /// A canonical `x` with `k·x = self`.
    pub fn divide(self, k: u64) -> Phase {
        assert!(k > 0);
        Phase::new(self.num as i64, self.den * k)
    }

    pub fn to_complex(self) -> Complex64 {
        let theta = 2.0 * std::f64::consts::PI * (self.num as f64) / (self.den as f64);
        Complex64::new(theta.cos(), theta.sin())
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let l = self.den.lcm(&rhs.den);
        let a = self.num * (l / self.den) + rhs.num * (l / rhs.den);
        Phase::new((a % l) as i64, l)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        if self.num == 0 {
            self
        } else {
            Phase {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl SubAssign for Phase {
    fn sub_assign(&mut self, rhs: Phase) {
        *self = *self - rhs;
    }
}

impl Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({self})")
    }
}

impl FromStr for Phase {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Phase, ParseError> {
        let s = s.trim();
        let bad = || ParseError::Phase(s.to_string());
        match s.split_once('/') {
            None => {
                let n: i64 = s.parse().map_err(|_| bad())?;
                Ok(Phase::new(n, 1))
            }
            Some((p, q)) => {
                let p: i64 = p.trim().parse().map_err(|_| bad())?;
                let q: u64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(Phase::new(p, q))
            }
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Phase, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of the orders of a collection of phases.
pub fn common_order<I: IntoIterator<Item = Phase>>(phases: I) -> u64 {
    phases.into_iter().fold(1u64, |acc, p| acc.lcm(&p.den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduction_and_display() {
        assert_eq!(Phase::new(3, 2).to_string(), "1/2");
        assert_eq!(Phase::new(-1, 4).to_string(), "3/4");
        assert_eq!(Phase::new(4, 4), Phase::ZERO);
        assert_eq!("2/6".parse::<Phase>().unwrap(), Phase::new(1, 3));
        assert!("1/0".parse::<Phase>().is_err());
    }

    #[test]
    fn exponents() {
        let p = Phase::new(1, 4);
        assert_eq!(p.exponent_mod(8), Some(2));
        assert_eq!(p.exponent_mod(6), None);
        assert_eq!(Phase::half().divide(2), Phase::new(1, 4));
    }

    proptest! {
        #[test]
        fn group_law(a in -50i64..50, b in -50i64..50, c in -50i64..50, q in 1u64..13, r in 1u64..13) {
            let x = Phase::new(a, q);
            let y = Phase::new(b, r);
            let z = Phase::new(c, q * r);
            prop_assert_eq!((x + y) + z, x + (y + z));
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x - x, Phase::ZERO);
            prop_assert_eq!(x.scale(3), x + x + x);
        }
    }
}
