use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{field, FieldCtx};
use super::ntheory::{lcm, normalize_conductor};
use crate::error::{Error, Result};

/// Exact element of `Q(zeta_n)`, stored as integer power-basis coordinates
/// over a common positive denominator.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<FieldCtx>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn from_parts(field: Arc<FieldCtx>, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), field.degree);
        let mut x = Self { field, num, den };
        x.reduce();
        x
    }

    fn reduce(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            for c in &mut self.num {
                *c = -c.clone();
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_parts(field(1), vec![BigInt::from(k)], BigInt::one())
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(field(1), vec![r.numer().clone()], r.denom().clone())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_parts(field(1), vec![BigInt::from(num)], BigInt::from(den))
    }

    /// `zeta_n^k` with `zeta_n = exp(2 pi i / n)`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1);
        let (m, sign, e) = if n % 4 == 2 {
            // zeta_{2m} = -zeta_m^{(m+1)/2} for odd m
            let m = n / 2;
            let e = k.rem_euclid(n as i64) * ((m as i64 + 1) / 2);
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            (m, sign, e)
        } else {
            (n, 1, k)
        };
        let f = field(m);
        let num = f.power(e).iter().map(|&c| BigInt::from(c * sign)).collect();
        Self::from_parts(f, num, BigInt::one())
    }

    pub fn conductor(&self) -> u64 {
        self.field.n
    }

    pub fn degree(&self) -> usize {
        self.field.degree
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// Integer numerators over [`Self::denominator`].
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Rational value when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        let l = self.lower_to_rational_field()?;
        Some(BigRational::new(l.num[0].clone(), l.den.clone()))
    }

    fn lower_to_rational_field(&self) -> Option<Self> {
        if self.field.n == 1 {
            return Some(self.clone());
        }
        // rationals embed as constant polynomials: zeta^0 maps to [1, 0, ...]
        if self.num[1..].iter().all(Zero::is_zero) {
            return Some(Self::from_parts(
                field(1),
                vec![self.num[0].clone()],
                self.den.clone(),
            ));
        }
        None
    }

    /// Same value in `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u64) -> Self {
        let m = normalize_conductor(m);
        let n = self.field.n;
        assert!(m.is_multiple_of(n), "cannot lift conductor {n} to {m}");
        if m == n {
            return self.clone();
        }
        let target = field(m);
        let step = (m / n) as i64;
        let mut out = vec![BigInt::zero(); target.degree];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, &p) in target.power(j as i64 * step).iter().enumerate() {
                if p != 0 {
                    out[k] += c * p;
                }
            }
        }
        Self::from_parts(target, out, self.den.clone())
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if Arc::ptr_eq(&a.field, &b.field) || a.field.n == b.field.n {
            return (a.clone(), b.clone());
        }
        let m = lcm(a.field.n, b.field.n);
        (a.lift(m), b.lift(m))
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    fn combine(&self, o: &Self, plus: bool) -> Self {
        if self.field.n != o.field.n {
            let (a, b) = Self::common(self, o);
            return a.combine(&b, plus);
        }
        let num = self
            .num
            .iter()
            .zip(&o.num)
            .map(|(x, y)| {
                let l = x * &o.den;
                let r = y * &self.den;
                if plus {
                    l + r
                } else {
                    l - r
                }
            })
            .collect();
        Self::from_parts(self.field.clone(), num, &self.den * &o.den)
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.field.n != o.field.n {
            let (a, b) = Self::common(self, o);
            return a.mul_ref(&b);
        }
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let d = self.field.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = prod.drain(..d).collect();
        for (off, c) in prod.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, &p) in self.field.power((d + off) as i64).iter().enumerate() {
                if p != 0 {
                    out[k] += &c * p;
                }
            }
        }
        Self::from_parts(self.field.clone(), out, &self.den * &o.den)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.field.clone(), num, &self.den * r.denom())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Image under `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.field.n as i64;
        let mut out = vec![BigInt::zero(); self.field.degree];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, &p) in self.field.power(n - j as i64).iter().enumerate() {
                if p != 0 {
                    out[k] += c * p;
                }
            }
        }
        Self::from_parts(self.field.clone(), out, self.den.clone())
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Multiplicative inverse by solving the multiplication-matrix system over `Q`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = self.field.degree;
        // column k = x^k * self (with the denominator dropped)
        let base = Self::from_parts(self.field.clone(), self.num.clone(), BigInt::one());
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        let mut cur = base;
        let x = Self::root_of_unity(self.field.n, 1);
        for k in 0..d {
            if k > 0 {
                cur = cur.mul_ref(&x);
            }
            cols.push(cur.coeffs());
        }
        // fraction-free Gauss-Jordan on integer rows: a[r][c] = cols[c][r]
        let col_den = cols
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let mut a: Vec<Vec<BigInt>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigInt> = (0..d)
                    .map(|c| cols[c][r].numer() * (&col_den / cols[c][r].denom()))
                    .collect();
                row.push(if r == 0 { BigInt::one() } else { BigInt::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            a.swap(col, piv);
            let prow = a[col].clone();
            let p = &prow[col];
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(prow.iter()) {
                    *v = &*v * p - pv * &f;
                }
                let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
                if !g.is_zero() && !g.is_one() {
                    for v in row.iter_mut() {
                        *v /= &g;
                    }
                }
            }
        }
        // diagonal system a[r][r] y_r = a[r][d]; the inverse of `self` is
        // col_den * self.den * y
        let den = a.iter().enumerate().fold(BigInt::one(), |acc, (r, row)| acc.lcm(&row[r]));
        let scale = &col_den * &self.den;
        let num = a
            .iter()
            .enumerate()
            .map(|(r, row)| &row[d] * (&den / &row[r]) * &scale)
            .collect();
        Ok(Self::from_parts(self.field.clone(), num, den))
    }

    pub fn div_ref(&self, o: &Self) -> Result<Self> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Floating-point value `(re, im)`.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let n = self.field.n as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let t = 2.0 * std::f64::consts::PI * j as f64 / n;
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * t.cos();
            im += c * t.sin();
        }
        (re / den, im / den)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, o: &Self) -> bool {
        if self.field.n != o.field.n {
            let (a, b) = Self::common(self, o);
            return a == b;
        }
        self.den == o.den && self.num == o.num
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

/// `[c0, c1, ...]/den @ zeta_n`, rational coefficients in the power basis.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(|c| c.to_string()).collect();
        write!(f, "Q(zeta_{})[{}]", self.field.n, parts.join(","))
    }
}

impl std::str::FromStr for Cyclotomic {
    type Err = String;

    /// Inverse of the `Display` form.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let rest = s
            .strip_prefix("Q(zeta_")
            .ok_or_else(|| format!("bad cyclotomic literal `{s}`"))?;
        let (n, body) = rest
            .split_once(")[")
            .ok_or_else(|| format!("bad cyclotomic literal `{s}`"))?;
        let body = body
            .strip_suffix(']')
            .ok_or_else(|| format!("bad cyclotomic literal `{s}`"))?;
        let n: u64 = n.parse().map_err(|_| format!("bad conductor in `{s}`"))?;
        if normalize_conductor(n) != n {
            return Err(format!("conductor {n} is not normalized"));
        }
        let f = field(n);
        let coeffs: Vec<BigRational> = body
            .split(',')
            .map(|t| t.trim().parse::<BigRational>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| format!("bad coefficient in `{s}`"))?;
        if coeffs.len() != f.degree {
            return Err(format!("expected {} coefficients", f.degree));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = coeffs
            .iter()
            .map(|r| r.numer() * (&den / r.denom()))
            .collect();
        Ok(Self::from_parts(f, num, den))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, o: Cyclotomic) -> Cyclotomic {
                self.$imp(&o)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, o: &'a Cyclotomic) -> Cyclotomic {
                self.$imp(o)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale_int(-1)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.scale_int(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, k)
    }

    #[test]
    fn basic_identities() {
        assert_eq!(z(4, 1).mul_ref(&z(4, 1)), Cyclotomic::from_integer(-1));
        let s = Cyclotomic::one().add_ref(&z(3, 1)).add_ref(&z(3, 2));
        assert!(s.is_zero());
        assert_eq!(z(3, 1).lift(12), z(12, 4));
        assert_eq!(z(3, 1), z(12, 4));
    }

    #[test]
    fn two_mod_four_conductors_normalize() {
        // zeta_10 = -zeta_5^3
        let a = z(10, 1);
        assert_eq!(a.conductor(), 5);
        assert_eq!(a, -z(5, 3));
        let (re, im) = a.to_complex_f64();
        let t = std::f64::consts::PI / 5.0;
        assert!((re - t.cos()).abs() < 1e-12 && (im - t.sin()).abs() < 1e-12);
        assert_eq!(z(2, 1), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn inverse_and_conjugate() {
        let a = Cyclotomic::from_integer(2).add_ref(&z(7, 3));
        let b = a.inv().unwrap();
        assert_eq!(a.mul_ref(&b), Cyclotomic::one());
        assert_eq!(z(12, 5).conj(), z(12, 7));
        assert_eq!(Cyclotomic::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_round_trip() {
        let a = z(12, 5).scale(&BigRational::new(3.into(), 7.into())).add_ref(&z(3, 1));
        let s = a.to_string();
        let b: Cyclotomic = s.parse().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rational_detection() {
        let a = z(8, 1).add_ref(&z(8, 7));
        assert!(a.to_rational().is_none());
        let two = a.mul_ref(&a);
        assert_eq!(two.to_rational().unwrap(), BigRational::from_integer(2.into()));
    }
}
