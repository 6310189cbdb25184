//! Certified sign of real cyclotomic numbers by fixed-point interval
//! evaluation with precision doubling.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::number::Cyclotomic;

const START_BITS: u64 = 64;
/// Per-value error budget for `cos(2 pi k / n)`, in units of the last place,
/// per power step.
const ULPS_PER_STEP: u64 = 128;

/// Sign of the real part of `x`. Zero exactly when `x` has zero real part.
pub fn real_part_sign(x: &Cyclotomic) -> i8 {
    let re = x.add_ref(&x.conj());
    if re.is_zero() {
        return 0;
    }
    if let Some(s) = float_sign(&re) {
        return s;
    }
    let mut bits = START_BITS;
    loop {
        if let Some(s) = fixed_point_sign(&re, bits) {
            return s;
        }
        bits *= 2;
    }
}

/// Quick decision with an f64 evaluation; gives up near zero or on overflow.
fn float_sign(x: &Cyclotomic) -> Option<i8> {
    let n = x.conductor() as f64;
    let mut sum = 0.0f64;
    let mut mag = 0.0f64;
    for (j, c) in x.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.to_f64()?;
        if !c.is_finite() {
            return None;
        }
        let t = (2.0 * std::f64::consts::PI * j as f64 / n).cos();
        sum += c * t;
        mag += c.abs();
    }
    let bound = mag * 1e-12;
    if sum.abs() > bound && bound.is_finite() {
        Some(if sum > 0.0 { 1 } else { -1 })
    } else {
        None
    }
}

fn fixed_point_sign(x: &Cyclotomic, bits: u64) -> Option<i8> {
    let n = x.conductor();
    let guard = 24 + 64 - n.leading_zeros() as u64;
    let w = bits + guard;
    let cosines = cos_table(n, w);
    let mut value = BigInt::zero();
    let mut mag = BigInt::zero();
    for (c, cj) in x.numerators().iter().zip(&cosines) {
        if c.is_zero() {
            continue;
        }
        value += c * cj;
        mag += c.abs();
    }
    let err = mag * BigInt::from(ULPS_PER_STEP * (n + 1));
    if value.abs() > err {
        Some(if value.is_positive() { 1 } else { -1 })
    } else {
        None
    }
}

/// `cos(2 pi k / n) * 2^w` for `0 <= k < n`, each within
/// `ULPS_PER_STEP * (k + 1)` units.
fn cos_table(n: u64, w: u64) -> Vec<BigInt> {
    let one = BigInt::from(1) << w;
    let pi = pi_fixed(w);
    let theta = (&pi * 2) / BigInt::from(n);
    let (c1, s1) = cos_sin_fixed(&theta, w);
    let mut out = Vec::with_capacity(n as usize);
    let (mut c, mut s) = (one, BigInt::zero());
    for _ in 0..n {
        out.push(c.clone());
        let nc = (&c * &c1 - &s * &s1) >> w;
        let ns = (&s * &c1 + &c * &s1) >> w;
        c = nc;
        s = ns;
    }
    out
}

fn cos_sin_fixed(theta: &BigInt, w: u64) -> (BigInt, BigInt) {
    let mut term = BigInt::from(1) << w;
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        match k % 4 {
            0 => cos += &term,
            1 => sin += &term,
            2 => cos -= &term,
            _ => sin -= &term,
        }
        k += 1;
        term = ((term * theta) >> w) / BigInt::from(k);
    }
    (cos, sin)
}

/// `pi * 2^w` by Machin's formula.
fn pi_fixed(w: u64) -> BigInt {
    let a = atan_inv(5, w);
    let b = atan_inv(239, w);
    a * 16 - b * 4
}

/// `atan(1/k) * 2^w`.
fn atan_inv(k: u64, w: u64) -> BigInt {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = (BigInt::from(1) << w) / &k;
    let mut sum = BigInt::zero();
    let mut m: u64 = 0;
    while !power.is_zero() {
        let t = &power / BigInt::from(2 * m + 1);
        if m.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        power /= &k2;
        m += 1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = pi_fixed(200);
        let approx = (p >> 148u32).to_f64().unwrap() / (1u64 << 52) as f64;
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn fixed_point_agrees_with_float_path() {
        // cos(2 pi/7) - 0.6234898 > 0
        let x = Cyclotomic::root_of_unity(7, 1)
            .add_ref(&Cyclotomic::root_of_unity(7, 6))
            .sub_ref(&Cyclotomic::from_ratio(12469796, 10000000));
        assert_eq!(fixed_point_sign(&x.add_ref(&x.conj()), 64), Some(1));
    }

    #[test]
    fn near_zero_element_needs_refinement() {
        // 2cos(pi/5) = golden ratio; compare to a rational 1e-30 away
        let phi = Cyclotomic::root_of_unity(10, 1).add_ref(&Cyclotomic::root_of_unity(10, 9));
        let approx = Cyclotomic::from_rational(&"1618033988749894848204586834365638117720309/1000000000000000000000000000000000000000000".parse().unwrap());
        let d = phi.sub_ref(&approx);
        assert_eq!(float_sign(&d.add_ref(&d.conj())), None);
        assert_eq!(real_part_sign(&d), 1);
    }
}
