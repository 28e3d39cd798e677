//! Exact half-integers.
//!
//! A value `x` in ½ℤ is stored as the integer `2x`, so equality and ordering
//! are exact and nothing ever touches floating point.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
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

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integral(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if there is one.
    pub const fn to_int(self) -> Option<i64> {
        if self.is_integral() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    /// Greatest integer not exceeding the value.
    pub const fn floor(self) -> i64 {
        self.twice.div_euclid(2)
    }

    pub const fn ceil(self) -> i64 {
        -((-self.twice).div_euclid(2))
    }

    pub const fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    /// Same coset of ℤ in ½ℤ.
    pub const fn same_class(self, other: HalfInt) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    /// Panics when the value is not an integer; for call sites where
    /// integrality is an invariant.
    pub fn expect_int(self) -> i64 {
        match self.to_int() {
            Some(n) => n,
            None => panic!("expected an integer, found {self}"),
        }
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt {
            twice: self.twice - rhs.twice,
        }
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt {
            twice: self.twice + 2 * rhs,
        }
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt {
            twice: self.twice - 2 * rhs,
        }
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt {
            twice: self.twice * rhs,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.twice += rhs.twice;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: HalfInt) {
        self.twice -= rhs.twice;
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a half-integer: {0:?}")]
pub struct ParseHalfIntError(pub String);

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts `7`, `-3`, `7/2`, `3.5`, `-0.5`, `.5` and `4.0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseHalfIntError(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| err())?;
            return match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt::from_twice(num)),
                _ => Err(err()),
            };
        }
        if let Some((int, frac)) = t.split_once('.') {
            let neg = int.trim_start().starts_with('-');
            let int_part: i64 = match int.trim() {
                "" | "+" => 0,
                "-" => 0,
                other => other.parse().map_err(|_| err())?,
            };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(err()),
            };
            let twice = 2 * int_part.abs() + half;
            return Ok(HalfInt::from_twice(if neg { -twice } else { twice }));
        }
        t.parse::<i64>().map(HalfInt::from_int).map_err(|_| err())
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct HalfIntVisitor;

impl<'de> Visitor<'de> for HalfIntVisitor {
    type Value = HalfInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer, an \"n/2\" string, or a decimal ending in .5")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<HalfInt, E> {
        Ok(HalfInt::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<HalfInt, E> {
        i64::try_from(v)
            .map(HalfInt::from_int)
            .map_err(|_| E::custom("integer out of range"))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<HalfInt, E> {
        let twice = v * 2.0;
        if twice.fract() == 0.0 && twice.abs() < 9.0e15 {
            Ok(HalfInt::from_twice(twice as i64))
        } else {
            Err(E::custom(format!("{v} is not a half-integer")))
        }
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<HalfInt, E> {
        v.parse().map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(HalfIntVisitor)
    }
}
