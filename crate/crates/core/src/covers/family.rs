//! The right/isosceles family: a right triangle `T = (a1+a2, a1, a2)` is
//! covered by the isosceles triangles obtained by reflecting it across
//! either leg.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::CoverKind;
use crate::combinatorics::TriangleSignature;
use crate::error::{Error, Result};

/// One explicit family member: the right triangle and both reflections,
/// all with vertex order as constructed (apex first for the isosceles ones).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma7Family {
    pub a1: u64,
    pub a2: u64,
    /// `(a1 + a2, a1, a2)`: right angle first.
    pub y: TriangleSignature,
    /// Reflection across the leg through the `a2` vertex.
    pub x1: TriangleSignature,
    pub degree1: u64,
    /// Reflection across the leg through the `a1` vertex.
    pub x2: TriangleSignature,
    pub degree2: u64,
    /// `(X_odd, X_even)` when one reflection has degree 1.
    pub composition: Option<(TriangleSignature, TriangleSignature)>,
}

impl Lemma7Family {
    pub fn x(&self, which: CoverKind) -> Option<(TriangleSignature, u64)> {
        match which {
            CoverKind::F1 => Some((self.x1, self.degree1)),
            CoverKind::F2 => Some((self.x2, self.degree2)),
            _ => None,
        }
    }
}

pub fn lemma7_family(a1: u64, a2: u64) -> Result<Lemma7Family> {
    if a1 == 0 || a2 == 0 {
        return Err(Error::NonPositiveEntry([(a1 + a2) as i64, a1 as i64, a2 as i64]));
    }
    if a1.gcd(&a2) != 1 {
        return Err(Error::NotCoprime(a1, a2));
    }
    let s = (a1 + a2) as i64;
    let y = TriangleSignature::normalize(s, a1 as i64, a2 as i64)?;
    // normalize divides by the gcd, so the odd/even split falls out
    let x1 = TriangleSignature::normalize(2 * a2 as i64, a1 as i64, a1 as i64)?;
    let x2 = TriangleSignature::normalize(2 * a1 as i64, a2 as i64, a2 as i64)?;
    let degree = |x: &TriangleSignature| 2 * x.q() / y.q();
    let (degree1, degree2) = (degree(&x1), degree(&x2));
    let composition = match (degree1, degree2) {
        (2, 1) => Some((x1, x2)),
        (1, 2) => Some((x2, x1)),
        _ => None,
    };
    Ok(Lemma7Family {
        a1,
        a2,
        y,
        x1,
        degree1,
        x2,
        degree2,
        composition,
    })
}

/// The other member of the translation-equivalence pair
/// `(a, a, b) ~ (2a, b, 2a + b)` with `b` odd, canonicalized.
pub fn partner_signature(sig: &TriangleSignature) -> Option<TriangleSignature> {
    let [p, q, r] = sig.canonical_key();
    // isosceles (a, a, b) with b odd
    let iso = if p == q && r % 2 == 1 {
        Some((p, r))
    } else if q == r && p % 2 == 1 {
        Some((q, p))
    } else {
        None
    };
    if let Some((a, b)) = iso {
        return TriangleSignature::normalize((2 * a) as i64, b as i64, (2 * a + b) as i64)
            .ok()
            .map(|s| s.canonical());
    }
    // right (2a, b, 2a + b) with b odd
    if r == p + q {
        let (even, odd) = if p % 2 == 0 && q % 2 == 1 {
            (p, q)
        } else if q % 2 == 0 && p % 2 == 1 {
            (q, p)
        } else {
            return None;
        };
        return TriangleSignature::normalize((even / 2) as i64, (even / 2) as i64, odd as i64)
            .ok()
            .map(|s| s.canonical());
    }
    None
}

/// Equal triangles, or the two sides of `(a, a, b) ~ (2a, b, 2a + b)`.
pub fn translation_equivalent(a: &TriangleSignature, b: &TriangleSignature) -> bool {
    a.same_triangle(b)
        || partner_signature(a).is_some_and(|p| p.same_triangle(b))
        || partner_signature(b).is_some_and(|p| p.same_triangle(a))
}

/// A cover known to exist, between canonical signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyCover {
    pub source: TriangleSignature,
    pub target: TriangleSignature,
    pub degree: u64,
    pub kind: CoverKind,
    /// Legs `(a1, a2)` of the right triangle it comes from.
    pub legs: (u64, u64),
}

/// All family covers, their inverses of degree 1 and the composites
/// `X_odd -> Y ~ X_even`, with every surface at `Q <= qmax`.
pub fn family_closure(qmax: u64) -> Vec<FamilyCover> {
    let mut out = BTreeSet::new();
    for s in 3..=qmax {
        for a1 in 1..s {
            let a2 = s - a1;
            if a1 > a2 || a1.gcd(&a2) != 1 {
                continue;
            }
            let fam = lemma7_family(a1, a2).expect("coprime legs");
            if fam.y.q() > qmax {
                continue;
            }
            let legs = (a1, a2);
            let y = fam.y.canonical();
            let xs = [
                (fam.x1.canonical(), fam.degree1, CoverKind::F1),
                (fam.x2.canonical(), fam.degree2, CoverKind::F2),
            ];
            for &(x, d, kind) in &xs {
                out.insert(FamilyCover { source: x, target: y, degree: d, kind, legs });
                if d == 1 {
                    out.insert(FamilyCover {
                        source: y,
                        target: x,
                        degree: 1,
                        kind: CoverKind::Equivalence,
                        legs,
                    });
                }
            }
            for &(xs_, ds, _) in &xs {
                for &(xt, dt, _) in &xs {
                    if ds == 2 && dt == 1 {
                        out.insert(FamilyCover {
                            source: xs_,
                            target: xt,
                            degree: 2,
                            kind: CoverKind::Composition,
                            legs,
                        });
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}
