//! Elementary number theory for cyclotomic conductors.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub fn prime_divisors(mut n: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.insert(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.insert(n);
    }
    out
}

pub fn totient(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// `Q(zeta_n) = Q(zeta_{n/2})` when `n = 2 mod 4`.
pub fn normalize_conductor(n: u64) -> u64 {
    assert!(n >= 1, "conductor must be positive");
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Coefficients of `Phi_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let mut memo = HashMap::new();
    cyclotomic_poly_memo(n, &mut memo)
}

fn cyclotomic_poly_memo(n: u64, memo: &mut HashMap<u64, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly_memo(d, memo);
            num = div_monic(&num, &phi_d);
        }
    }
    memo.insert(n, num.clone());
    num
}

/// Exact quotient of `a` by the monic polynomial `b`.
fn div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let dq = a.len() - 1 - db;
    let mut q = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db];
        q[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[k + j] -= c * bj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact division");
    q
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberTheory {
    pub n: u64,
    pub phi: u64,
    pub cyclotomic_poly: Vec<i64>,
    pub prime_divisors: BTreeSet<u64>,
}

pub fn number_theory(n: u64) -> NumberTheory {
    NumberTheory {
        n,
        phi: totient(n),
        cyclotomic_poly: cyclotomic_poly(n),
        prime_divisors: prime_divisors(n),
    }
}
