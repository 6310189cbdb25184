//! Exact arithmetic in cyclotomic fields `Q(zeta_n)` and their maximal real
//! subfields.
//!
//! Elements use the power basis `1, zeta, ..., zeta^(phi(n)-1)` modulo the
//! `n`-th cyclotomic polynomial with `zeta = exp(2 pi i / n)`. Conductors
//! `n = 2 mod 4` are replaced by `n / 2` on construction, so two elements of
//! the same field always share a conductor. Mixed-conductor operations lift
//! both sides to the lcm.

mod field;
mod number;
pub mod ntheory;
mod sign;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use field::{field, FieldCtx};
pub use number::Cyclotomic;

use crate::angle::Angle;
use crate::error::{Error, Result};

/// Element of `Q(zeta_n)` fixed by complex conjugation.
#[derive(Clone, PartialEq, Eq)]
pub struct RealCyclotomic(Cyclotomic);

impl RealCyclotomic {
    pub fn new(x: Cyclotomic) -> Result<Self> {
        if x.is_real() {
            Ok(Self(x))
        } else {
            Err(Error::NotReal)
        }
    }

    /// Caller guarantees `x` is real.
    pub(crate) fn new_unchecked(x: Cyclotomic) -> Self {
        debug_assert!(x.is_real());
        Self(x)
    }

    pub fn zero() -> Self {
        Self(Cyclotomic::zero())
    }

    pub fn one() -> Self {
        Self(Cyclotomic::one())
    }

    pub fn from_integer(k: i64) -> Self {
        Self(Cyclotomic::from_integer(k))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self(Cyclotomic::from_ratio(num, den))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self(Cyclotomic::from_rational(r))
    }

    pub fn as_cyclotomic(&self) -> &Cyclotomic {
        &self.0
    }

    pub fn into_cyclotomic(self) -> Cyclotomic {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn sign(&self) -> i8 {
        sign::real_part_sign(&self.0)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn cmp_exact(&self, o: &Self) -> std::cmp::Ordering {
        match (self - o).sign() {
            -1 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self(self.0.inv()?))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(Self(self.0.div_ref(&o.0)?))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self(self.0.scale(r))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        Self(self.0.scale_int(k))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn lift(&self, m: u64) -> Self {
        Self(self.0.lift(m))
    }

    pub fn conductor(&self) -> u64 {
        self.0.conductor()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_complex_f64().0
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.0.to_rational()
    }
}

/// `cos(r pi) = (zeta_{2q}^p + zeta_{2q}^{-p}) / 2` for `r = p / q`.
pub fn cos_pi(r: Angle) -> RealCyclotomic {
    let (p, q) = (r.numer(), r.denom());
    let n = 2 * q as u64;
    let z = Cyclotomic::root_of_unity(n, p).add_ref(&Cyclotomic::root_of_unity(n, -p));
    RealCyclotomic::new_unchecked(z.scale(&BigRational::new(1.into(), 2.into())))
}

/// `sin(r pi) = cos((1/2 - r) pi)`.
pub fn sin_pi(r: Angle) -> RealCyclotomic {
    cos_pi(Angle::half_pi() - r)
}

/// `sqrt(2) = 2 cos(pi / 4)`.
pub fn sqrt2() -> RealCyclotomic {
    cos_pi(Angle::new(1, 4)).scale_int(2)
}

macro_rules! real_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr for RealCyclotomic {
            type Output = RealCyclotomic;
            fn $m(self, o: RealCyclotomic) -> RealCyclotomic {
                RealCyclotomic(self.0.$imp(&o.0))
            }
        }
        impl<'a> $tr<&'a RealCyclotomic> for &'a RealCyclotomic {
            type Output = RealCyclotomic;
            fn $m(self, o: &'a RealCyclotomic) -> RealCyclotomic {
                RealCyclotomic(self.0.$imp(&o.0))
            }
        }
    };
}

real_binop!(Add, add, add_ref);
real_binop!(Sub, sub, sub_ref);
real_binop!(Mul, mul, mul_ref);

impl Neg for &RealCyclotomic {
    type Output = RealCyclotomic;
    fn neg(self) -> RealCyclotomic {
        RealCyclotomic(-&self.0)
    }
}

impl fmt::Debug for RealCyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (~{:.12})", self.0, self.to_f64())
    }
}

impl fmt::Display for RealCyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for RealCyclotomic {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let c: Cyclotomic = s.parse()?;
        RealCyclotomic::new(c).map_err(|e| e.to_string())
    }
}

impl Serialize for RealCyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RealCyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
