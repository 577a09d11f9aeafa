//! Exact half-integer quantum numbers.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A value `n/2`, stored as the doubled integer `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// `numerator / denominator` with `denominator` in `{1, 2}`.
    pub fn half_from(numerator: i64, denominator: i64) -> Result<Self> {
        match denominator {
            1 => Ok(HalfInt::int(numerator)),
            2 => Ok(HalfInt::from_twice(numerator)),
            d => Err(Error::BadDenominator(d)),
        }
    }

    /// Exact conversion from a rational; fails unless `2q` is an integer.
    pub fn from_ratio(q: Ratio<i64>) -> Result<Self> {
        let twice = q * 2;
        if twice.is_integer() {
            Ok(HalfInt::from_twice(twice.to_integer()))
        } else {
            Err(Error::NotHalfInteger(q.to_string()))
        }
    }

    pub const fn twice_value(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_half_odd(self) -> bool {
        self.twice % 2 != 0
    }

    /// True when the value is an integer `>= 0`.
    pub const fn is_nonneg_integer(self) -> bool {
        self.twice >= 0 && self.twice % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    pub const fn is_negative(self) -> bool {
        self.twice < 0
    }

    pub const fn is_zero(self) -> bool {
        self.twice == 0
    }

    pub fn signum(self) -> i64 {
        self.twice.signum()
    }

    /// Integer value; `None` for half-odd values.
    pub fn as_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    /// `(-1)^self` for integral values.
    pub fn neg_one_pow(self) -> Option<i64> {
        self.as_integer().map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 })
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn to_real<T: Real>(self) -> T {
        T::lit(self.to_f64())
    }

    pub fn to_ratio(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice), BigInt::from(2))
    }

    /// `self, self+1, ..., last` (empty if `last < self`).
    pub fn steps_to(self, last: HalfInt) -> impl Iterator<Item = HalfInt> {
        let first = self.twice;
        (0..)
            .map(move |i| HalfInt::from_twice(first + 2 * i))
            .take_while(move |h| h.twice <= last.twice)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3"`, `"-3/2"`, `"+1/2"`, `"4/2"`; floats are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::NotHalfInteger(s.to_string());
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ratio::new(n, d)
            }
            None => Ratio::from_integer(t.parse::<i64>().map_err(|_| bad())?),
        };
        HalfInt::from_ratio(q).map_err(|_| bad())
    }
}

/// Shorthand for a literal `n/2`.
pub const fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn construction() {
        let a = HalfInt::half_from(1, 2).unwrap();
        assert_eq!(a.twice_value(), 1);
        assert_eq!(a.to_f64(), 0.5);
        assert_eq!(HalfInt::half_from(3, 1).unwrap().twice_value(), 6);
        let z = HalfInt::half_from(-1, 2).unwrap() + HalfInt::half_from(1, 2).unwrap();
        assert_eq!(z, HalfInt::ZERO);
        assert_eq!(HalfInt::half_from(1, 3), Err(Error::BadDenominator(3)));
    }

    #[test]
    fn parsing() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), h(3));
        assert_eq!("-1/2".parse::<HalfInt>().unwrap(), h(-1));
        assert_eq!("2".parse::<HalfInt>().unwrap(), h(4));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), h(4));
        assert!("0.3".parse::<HalfInt>().is_err());
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("1/0".parse::<HalfInt>().is_err());
        assert_eq!(h(-3).to_string(), "-3/2");
        assert_eq!(h(4).to_string(), "2");
    }

    #[test]
    fn predicates() {
        assert!(h(4).is_nonneg_integer());
        assert!(!h(-2).is_nonneg_integer());
        assert!(!h(3).is_nonneg_integer());
        assert_eq!(h(6).neg_one_pow(), Some(-1));
        assert_eq!(h(1).neg_one_pow(), None);
        let v: Vec<_> = h(1).steps_to(h(5)).collect();
        assert_eq!(v, vec![h(1), h(3), h(5)]);
    }

    proptest! {
        #[test]
        fn add_sub_exact(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let (x, y) = (h(a), h(b));
            prop_assert_eq!((x + y) - y, x);
            prop_assert_eq!(-(-x), x);
        }

        #[test]
        fn display_parse_roundtrip(a in -1000i64..1000) {
            prop_assert_eq!(h(a).to_string().parse::<HalfInt>().unwrap(), h(a));
        }
    }
}
