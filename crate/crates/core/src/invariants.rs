//! Scissors-congruence J-invariant and holonomy-field identification.
//!
//! A vector `(x, y)` with cyclotomic coordinates becomes a rational vector of
//! length `2d`: the power-basis coordinates of `x`, then those of `y`. The
//! wedge `u ^ v` over `Q` is the antisymmetric matrix `u v^T - v u^T`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::TriangleSignature;
use crate::cyclotomic::ntheory::{lcm, normalize_conductor, prime_divisors, totient};
use crate::cyclotomic::{field, Cyclotomic, RealCyclotomic};
use crate::error::Result;
use crate::plane::Point;
use crate::unfold::{unfold, UnfoldedSurface};

/// Antisymmetric `2d x 2d` rational matrix, stored as integers over a common
/// positive denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct JInvariant {
    conductor: u64,
    dimension: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl JInvariant {
    pub fn zero(conductor: u64) -> Self {
        let conductor = normalize_conductor(conductor);
        let d = field(conductor).degree;
        Self {
            conductor,
            dimension: d,
            num: vec![BigInt::zero(); 4 * d * d],
            den: BigInt::one(),
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `d = phi(conductor)`; the matrix has side `2d`.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn side(&self) -> usize {
        2 * self.dimension
    }

    pub fn entry(&self, r: usize, c: usize) -> BigRational {
        BigRational::new(self.num[r * self.side() + c].clone(), self.den.clone())
    }

    pub fn matrix(&self) -> Vec<Vec<BigRational>> {
        let s = self.side();
        (0..s).map(|r| (0..s).map(|c| self.entry(r, c)).collect()).collect()
    }

    pub fn is_antisymmetric(&self) -> bool {
        let s = self.side();
        (0..s).all(|r| (0..s).all(|c| self.num[r * s + c] == -&self.num[c * s + r]))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn normalized(mut self) -> Self {
        let g = self.num.iter().fold(self.den.clone(), |g, v| g.gcd(v));
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            for v in &mut self.num {
                *v /= &g;
            }
            self.den /= &g;
        }
        self
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self {
            conductor: self.conductor,
            dimension: self.dimension,
            num: self.num.iter().map(|v| v * r.numer()).collect(),
            den: &self.den * r.denom(),
        }
        .normalized()
    }

    pub fn add(&self, o: &Self) -> Self {
        let m = lcm(self.conductor, o.conductor);
        let (a, b) = (self.lift(m), o.lift(m));
        Self {
            conductor: a.conductor,
            dimension: a.dimension,
            num: a
                .num
                .iter()
                .zip(&b.num)
                .map(|(x, y)| x * &b.den + y * &a.den)
                .collect(),
            den: &a.den * &b.den,
        }
        .normalized()
    }

    /// Same invariant in coordinates of `Q(zeta_m)`, `m` a multiple of the
    /// conductor: `L J L^T` for the block-diagonal embedding `L`.
    pub fn lift(&self, m: u64) -> Self {
        let m = normalize_conductor(m);
        if m == self.conductor {
            return self.clone();
        }
        let d = self.dimension;
        let images: Vec<Vec<BigInt>> = (0..d)
            .map(|j| {
                let e = Cyclotomic::root_of_unity(self.conductor, j as i64).lift(m);
                debug_assert!(e.denominator().is_one());
                e.numerators().to_vec()
            })
            .collect();
        let d2 = images[0].len();
        // embedding of basis vector r of the 2d space into the 2 d2 space
        let embed = |r: usize| -> Vec<(usize, &BigInt)> {
            let (block, j) = (r / d, r % d);
            images[j]
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (block * d2 + k, v))
                .collect()
        };
        let s = 2 * d;
        let s2 = 2 * d2;
        let mut out = vec![BigInt::zero(); s2 * s2];
        for r in 0..s {
            for c in 0..s {
                let v = &self.num[r * s + c];
                if v.is_zero() {
                    continue;
                }
                for (i, a) in embed(r) {
                    for (k, b) in embed(c) {
                        out[i * s2 + k] += v * a * b;
                    }
                }
            }
        }
        Self {
            conductor: m,
            dimension: d2,
            num: out,
            den: self.den.clone(),
        }
    }
}

impl fmt::Debug for JInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero = self.num.iter().filter(|v| !v.is_zero()).count();
        write!(
            f,
            "JInvariant {{ conductor: {}, side: {}, nonzero: {}, den: {} }}",
            self.conductor,
            self.side(),
            nonzero,
            self.den
        )
    }
}

impl Serialize for JInvariant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<Vec<String>> = self
            .matrix()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        let mut st = s.serialize_struct("JInvariant", 3)?;
        st.serialize_field("conductor", &self.conductor)?;
        st.serialize_field("dimension", &self.dimension)?;
        st.serialize_field("matrix", &rows)?;
        st.end()
    }
}

/// Integer coordinates of `p - o` scaled by `den`, as a `2d` vector.
fn coords(p: &Point, m: u64, den: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    for c in [&p.x, &p.y] {
        let c = c.as_cyclotomic().lift(m);
        let k = den / c.denominator();
        out.extend(c.numerators().iter().map(|v| v * &k));
    }
    out
}

/// `sum_i orientation_i * (b_i - a_i) ^ (c_i - a_i)` over triangles
/// `(a, b, c, counterclockwise)`.
pub fn j_of_triangles<'a, I>(triangles: I) -> JInvariant
where
    I: IntoIterator<Item = ([&'a Point; 3], bool)>,
{
    let edges: Vec<(Point, Point, bool)> = triangles
        .into_iter()
        .map(|([a, b, c], ccw)| (b.sub(a), c.sub(a), ccw))
        .collect();
    let mut m = 1;
    let mut den = BigInt::one();
    for (u, v, _) in &edges {
        for x in [&u.x, &u.y, &v.x, &v.y] {
            m = lcm(m, x.conductor());
            den = den.lcm(x.as_cyclotomic().denominator());
        }
    }
    let mut j = JInvariant::zero(m);
    let s = j.side();
    let m = j.conductor;
    // accumulate A = sum u v^T; J = A - A^T
    let mut acc = vec![BigInt::zero(); s * s];
    for (u, v, ccw) in &edges {
        let (u, v) = (coords(u, m, &den), coords(v, m, &den));
        let vs: Vec<(usize, &BigInt)> = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        for (r, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = if *ccw { a.clone() } else { -a };
            for &(c, b) in &vs {
                acc[r * s + c] += &a * b;
            }
        }
    }
    for r in 0..s {
        for c in 0..s {
            j.num[r * s + c] = &acc[r * s + c] - &acc[c * s + r];
        }
    }
    j.den = &den * &den;
    j.normalized()
}

pub fn j_invariant_of(surface: &UnfoldedSurface) -> JInvariant {
    j_of_triangles(surface.copies.iter().map(|c| {
        let [a, b, d] = &c.vertices;
        ([a, b, d], c.counterclockwise)
    }))
}

pub fn j_invariant(sig: &TriangleSignature, scale: RealCyclotomic) -> Result<JInvariant> {
    Ok(j_invariant_of(&unfold(sig, scale)?))
}

/// `jx == n * jy` after lifting to a common conductor.
pub fn j_compare(jx: &JInvariant, jy: &JInvariant, n: &BigRational) -> bool {
    let m = lcm(jx.conductor, jy.conductor);
    let (a, b) = (jx.lift(m), jy.lift(m));
    let lhs_k = &b.den * n.denom();
    let rhs_k = &a.den * n.numer();
    a.num
        .iter()
        .zip(&b.num)
        .all(|(x, y)| x * &lhs_k == y * &rhs_k)
}

/// Holonomy field `Q(zeta_Q + zeta_Q^-1)`, identified by its normalized
/// conductor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HolonomyFieldId {
    pub normalized_conductor: u64,
    pub degree: u64,
}

pub fn holonomy_field_of_q(q: u64) -> HolonomyFieldId {
    let m = normalize_conductor(q);
    HolonomyFieldId {
        normalized_conductor: m,
        degree: (totient(m) / 2).max(1),
    }
}

pub fn holonomy_field(sig: &TriangleSignature) -> HolonomyFieldId {
    holonomy_field_of_q(sig.q())
}

pub fn same_holonomy(qx: u64, qy: u64) -> bool {
    holonomy_field_of_q(qx) == holonomy_field_of_q(qy)
}

/// `qx == qy`, or the smaller is odd and the larger is twice it.
pub fn q_compatible(qx: u64, qy: u64) -> bool {
    let (lo, hi) = (qx.min(qy), qx.max(qy));
    lo == hi || (lo % 2 == 1 && hi == 2 * lo)
}

/// Decides equality of the maximal real subfields of `Q(zeta_m)` and
/// `Q(zeta_n)` from ramification data: equal odd prime divisors, the same
/// answer to "4 divides", and equal totients after replacing an odd
/// conductor by its double when the parities differ.
pub fn real_subfield_oracle(m: u64, n: u64) -> bool {
    let odd = |k: u64| -> Vec<u64> { prime_divisors(k).into_iter().filter(|&p| p != 2).collect() };
    if odd(m) != odd(n) {
        return false;
    }
    if m.is_multiple_of(4) != n.is_multiple_of(4) {
        return false;
    }
    if totient(m) != totient(n) {
        return false;
    }
    let (m2, n2) = (m % 2, n % 2);
    if m2 == n2 {
        // equal odd primes and totients force equal exponents
        return m == n;
    }
    let (odd_one, other) = if m2 == 1 { (m, n) } else { (n, m) };
    2 * odd_one == other
}

/// Absolute value of the largest numerator, for diagnostics.
pub fn j_height(j: &JInvariant) -> BigInt {
    j.num.iter().map(|v| v.abs()).max().unwrap_or_default()
}
