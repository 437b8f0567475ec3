use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A reduced fraction `num/den` with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExactRational {
    num: i64,
    den: i64,
}

impl ExactRational {
    pub const ZERO: ExactRational = ExactRational { num: 0, den: 1 };

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = num.gcd(&den);
        let sign = if den < 0 { -1 } else { 1 };
        Self { num: sign * num / g, den: sign * den / g }
    }

    pub fn from_integer(n: i64) -> Self {
        Self { num: n, den: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.num
    }

    pub fn denom(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.num)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for ExactRational {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Add for ExactRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let l = self.den.lcm(&rhs.den);
        Self::new(self.num * (l / self.den) + rhs.num * (l / rhs.den), l)
    }
}

impl Sub for ExactRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ExactRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { num: -self.num, den: self.den }
    }
}

impl Mul for ExactRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (g1, g2) = (g1.max(1), g2.max(1));
        Self::new((self.num / g1) * (rhs.num / g2), (self.den / g2) * (rhs.den / g1))
    }
}

impl Mul<i64> for ExactRational {
    type Output = Self;
    fn mul(self, rhs: i64) -> Self {
        self * ExactRational::from_integer(rhs)
    }
}

/// Always `num/den`, including integers (`3/1`, `0/1`).
impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse {:?} as a rational", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for ExactRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: i64 = n.parse().map_err(|_| err())?;
        let den: i64 = d.parse().map_err(|_| err())?;
        if den == 0 {
            return Err(err());
        }
        Ok(Self::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reduce_and_render() {
        assert_eq!(ExactRational::new(4, 10).to_string(), "2/5");
        assert_eq!(ExactRational::new(6, -13).to_string(), "-6/13");
        assert_eq!(ExactRational::new(0, 7), ExactRational::ZERO);
        assert_eq!(ExactRational::ZERO.to_string(), "0/1");
        assert_eq!("-6/13".parse::<ExactRational>().unwrap(), ExactRational::new(-6, 13));
        assert_eq!("4".parse::<ExactRational>().unwrap(), ExactRational::from_integer(4));
        assert!("1/0".parse::<ExactRational>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = ExactRational::new(2, 5);
        let b = ExactRational::new(-1, 5);
        assert_eq!(a + b, ExactRational::new(1, 5));
        assert_eq!(a - b, ExactRational::new(3, 5));
        assert_eq!(a * 5, ExactRational::from_integer(2));
        assert_eq!((a * b).to_string(), "-2/25");
        assert_eq!((ExactRational::ZERO * a), ExactRational::ZERO);
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let r = ExactRational::new(n, d);
            prop_assert_eq!(r.to_string().parse::<ExactRational>().unwrap(), r);
            prop_assert_eq!(r.numer().gcd(&r.denom()), 1);
            prop_assert!(r.denom() > 0);
        }

        #[test]
        fn field_laws(a in -200i64..200, b in 1i64..200, c in -200i64..200, d in 1i64..200) {
            let x = ExactRational::new(a, b);
            let y = ExactRational::new(c, d);
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x + y) - y, x);
            prop_assert!(((x * y).to_f64() - x.to_f64() * y.to_f64()).abs() < 1e-9);
        }
    }
}
