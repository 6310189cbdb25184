use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use super::ntheory::{cyclotomic_poly, normalize_conductor};

/// Reduction data for `Q(zeta_n) = Q[x] / Phi_n`.
#[derive(Debug)]
pub struct FieldCtx {
    pub(crate) n: u64,
    pub(crate) degree: usize,
    /// `x^j mod Phi_n` for `0 <= j < n`, each of length `degree`.
    pub(crate) powers: Vec<Vec<i64>>,
}

impl FieldCtx {
    fn build(n: u64) -> Self {
        let poly = cyclotomic_poly(n);
        let degree = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x
            let top = cur[degree - 1];
            for k in (1..degree).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (k, c) in cur.iter_mut().enumerate() {
                    *c = c
                        .checked_sub(top.checked_mul(poly[k]).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        Self { n, degree, powers }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Power-basis coordinates of `zeta_n^e`.
    pub(crate) fn power(&self, e: i64) -> &[i64] {
        &self.powers[e.rem_euclid(self.n as i64) as usize]
    }
}

static FIELDS: LazyLock<RwLock<HashMap<u64, Arc<FieldCtx>>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Shared context for the (normalized) conductor `n`.
pub fn field(n: u64) -> Arc<FieldCtx> {
    let n = normalize_conductor(n);
    if let Some(f) = FIELDS.read().unwrap().get(&n) {
        return f.clone();
    }
    let ctx = Arc::new(FieldCtx::build(n));
    FIELDS
        .write()
        .unwrap()
        .entry(n)
        .or_insert(ctx)
        .clone()
}
