use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An angle `r * pi` with `r` rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Ratio<i64>);

impl Angle {
    pub fn new(num: i64, den: i64) -> Self {
        Angle(Ratio::new(num, den))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        Angle(r)
    }

    pub fn zero() -> Self {
        Angle(Ratio::zero())
    }

    pub fn pi() -> Self {
        Angle::new(1, 1)
    }

    pub fn half_pi() -> Self {
        Angle::new(1, 2)
    }

    /// Coefficient of pi.
    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.0 > Ratio::zero()
    }

    /// Reduces into `[0, period)`.
    pub fn rem_euclid(&self, period: Angle) -> Angle {
        let q = (self.0 / period.0).floor();
        Angle(self.0 - q * period.0)
    }

    pub fn to_radians(&self) -> f64 {
        self.0.to_f64().unwrap() * std::f64::consts::PI
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}·pi", self.numer(), self.denom())
    }
}

impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .strip_suffix("·pi")
            .or_else(|| s.strip_suffix("*pi"))
            .ok_or_else(|| format!("angle `{s}` lacks a pi suffix"))?;
        let r: Ratio<i64> = body.parse().map_err(|_| format!("bad angle `{s}`"))?;
        Ok(Angle(r))
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, o: Angle) -> Angle {
        Angle(self.0 + o.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, o: Angle) -> Angle {
        Angle(self.0 - o.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle(-self.0)
    }
}

impl Mul<i64> for Angle {
    type Output = Angle;
    fn mul(self, k: i64) -> Angle {
        Angle(self.0 * k)
    }
}

impl Mul<Ratio<i64>> for Angle {
    type Output = Angle;
    fn mul(self, k: Ratio<i64>) -> Angle {
        Angle(self.0 * k)
    }
}

/// Orders by value; used to sort angle sets.
pub fn cmp_angles(a: &Angle, b: &Angle) -> Ordering {
    a.0.cmp(&b.0)
}
