//! Fingerprints of triangulation vertices: the configuration of shortest
//! geodesics from a point to the singularities.
//!
//! A shortest geodesic from a corner point `P` over `v_i` is either a
//! triangulation edge to another singular class, or the segment to an own
//! class point perpendicularly bisected by the opposite side. Around `P` the
//! copies alternate orientation, so the directions repeat with period
//! `2 * angle(v_i)`; within one period the candidates are `0` (edge to the
//! lower of the other two vertices), `angle(v_i)` (edge to the other one) and
//! the altitude direction, each mirrored by `d -> 2 angle(v_i) - d`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::combinatorics::TriangleSignature;
use crate::cyclotomic::{sin_pi, RealCyclotomic};
use crate::error::{Error, Result};
use crate::plane::Point;
use crate::tiling::corner_cycles;
use crate::unfold::UnfoldedSurface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FingerprintType {
    I,
    II,
}

impl fmt::Display for FingerprintType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FingerprintType::I => "I",
            FingerprintType::II => "II",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    /// Distinct gaps between adjacent shortest geodesics, ascending.
    pub angle_set: Vec<Angle>,
    pub cone_angle: Angle,
    pub length: RealCyclotomic,
    pub fp_type: FingerprintType,
    /// Vertex indices whose classes realize the minimum distance.
    pub shortest_targets: BTreeSet<usize>,
}

impl Fingerprint {
    /// Equal angle set, cone angle and length.
    pub fn same_as(&self, other: &Fingerprint) -> bool {
        self.angle_set == other.angle_set
            && self.cone_angle == other.cone_angle
            && self.length == other.length
    }
}

fn others(i: usize) -> (usize, usize) {
    match i {
        1 => (2, 3),
        2 => (1, 3),
        3 => (1, 2),
        _ => unreachable!(),
    }
}

fn is_obtuse(sig: &TriangleSignature, v: usize) -> bool {
    2 * sig.entry(v) > sig.q()
}

fn is_acute_or_right(sig: &TriangleSignature, v: usize) -> bool {
    2 * sig.entry(v) <= sig.q()
}

/// Checks the puncture hypotheses: only whole singular classes, none obtuse,
/// never the base class, and at least one singular class left.
pub fn validate_punctures(
    sig: &TriangleSignature,
    i: usize,
    punctured: &BTreeSet<usize>,
) -> Result<()> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidVertex(i));
    }
    if punctured.is_empty() {
        return Ok(());
    }
    for &p in punctured {
        if !(1..=3).contains(&p) {
            return Err(Error::InvalidVertex(p));
        }
        if p == i {
            return Err(Error::InvalidPuncture(format!(
                "vertex {p} is the base point's own class"
            )));
        }
        if !sig.is_singular(p) {
            return Err(Error::InvalidPuncture(format!("class {p} is not singular")));
        }
        if is_obtuse(sig, p) {
            return Err(Error::InvalidPuncture(format!(
                "class {p} comes from an obtuse angle"
            )));
        }
    }
    if sig.singular_vertices().len() < 2 {
        return Err(Error::InvalidPuncture(
            "punctures require more than one singular class".into(),
        ));
    }
    if sig.singular_vertices().iter().all(|v| punctured.contains(v)) {
        return Err(Error::NoSingularTarget);
    }
    Ok(())
}

/// Length of the candidate shortest geodesic from a point over `v_i` to each
/// unpunctured singular class. Other classes are reached along the edge; the
/// own class is present when the altitude foot lies on the opposite side.
pub fn saddle_distances(
    sig: &TriangleSignature,
    i: usize,
    punctured: &BTreeSet<usize>,
    scale: &RealCyclotomic,
) -> Result<BTreeMap<usize, RealCyclotomic>> {
    validate_punctures(sig, i, punctured)?;
    if !scale.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    let (j, k) = others(i);
    let mut out = BTreeMap::new();
    for &(t, third) in &[(j, k), (k, j)] {
        if sig.is_singular(t) && !punctured.contains(&t) {
            out.insert(t, scale * &sin_pi(sig.angle(third)));
        }
    }
    if sig.is_singular(i) && is_acute_or_right(sig, j) && is_acute_or_right(sig, k) {
        let d = &(&sin_pi(sig.angle(j)) * &sin_pi(sig.angle(k))).scale_int(2) * scale;
        out.insert(i, d);
    }
    if out.is_empty() {
        return Err(Error::NoSingularTarget);
    }
    Ok(out)
}

/// Directions of the shortest geodesics within one period `[0, 2 angle(v_i))`,
/// ascending, paired with the target vertex index.
pub fn shortest_directions(
    sig: &TriangleSignature,
    i: usize,
    punctured: &BTreeSet<usize>,
    scale: &RealCyclotomic,
) -> Result<(RealCyclotomic, Vec<(Angle, usize)>)> {
    let dist = saddle_distances(sig, i, punctured, scale)?;
    let min = dist
        .values()
        .min_by(|a, b| a.cmp_exact(b))
        .cloned()
        .expect("nonempty");
    let (j, k) = others(i);
    let alpha = sig.angle(i);
    let period = alpha * 2;
    let mut dirs: Vec<(Angle, usize)> = Vec::new();
    for (&t, d) in &dist {
        if *d != min {
            continue;
        }
        let base = if t == j {
            Angle::zero()
        } else if t == k {
            alpha
        } else {
            Angle::half_pi() - sig.angle(j)
        };
        for d in [base, period - base] {
            let d = d.rem_euclid(period);
            if !dirs.iter().any(|(e, _)| *e == d) {
                dirs.push((d, t));
            }
        }
    }
    dirs.sort();
    Ok((min, dirs))
}

pub fn fingerprint(
    sig: &TriangleSignature,
    i: usize,
    punctured: &BTreeSet<usize>,
    scale: &RealCyclotomic,
) -> Result<Fingerprint> {
    let (length, dirs) = shortest_directions(sig, i, punctured, scale)?;
    let period = sig.angle(i) * 2;
    let mut gaps: Vec<Angle> = dirs
        .windows(2)
        .map(|w| w[1].0 - w[0].0)
        .collect();
    gaps.push(dirs[0].0 + period - dirs[dirs.len() - 1].0);
    gaps.sort();
    gaps.dedup();
    let fp_type = match gaps.len() {
        1 => FingerprintType::I,
        2 => FingerprintType::II,
        n => {
            return Err(Error::InternalTrichotomyViolation { vertex: i, gaps: n });
        }
    };
    Ok(Fingerprint {
        angle_set: gaps,
        cone_angle: Angle::new(2 * sig.cone_turns(i) as i64, 1),
        length,
        fp_type,
        shortest_targets: dirs.iter().map(|d| d.1).collect(),
    })
}

/// Which case of the angle trichotomy a fingerprint falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TrichotomyCase {
    /// Type I with gap equal to the vertex angle.
    ApexAngle,
    /// Type I with gap twice the vertex angle.
    DoubleAngle,
    /// Type II with the two gaps summing to twice the vertex angle.
    TwoGaps,
}

/// Classifies `fp` against `angle(v_i)`; `None` if no case applies.
pub fn trichotomy_case(sig: &TriangleSignature, i: usize, fp: &Fingerprint) -> Option<TrichotomyCase> {
    let alpha = sig.angle(i);
    match fp.angle_set.as_slice() {
        [t] if *t == alpha => {
            let s = sig.shape();
            (s.is_isosceles && s.apex_index == Some(i)).then_some(TrichotomyCase::ApexAngle)
        }
        [t] if *t == alpha * 2 => Some(TrichotomyCase::DoubleAngle),
        [a, b] if *a + *b == alpha * 2 => Some(TrichotomyCase::TwoGaps),
        _ => None,
    }
}

/// Triangle with angles `(t1 + t2) / 2`, `(pi - t1) / 2`, `(pi - t2) / 2`.
pub fn reconstruct_from_type2(t1: Angle, t2: Angle) -> Result<TriangleSignature> {
    if t1 == t2 {
        return Err(Error::InvalidAngles("Type II needs two distinct gaps".into()));
    }
    let half = Ratio::new(1, 2);
    let angles = [
        (t1.ratio() + t2.ratio()) * half,
        (Ratio::from_integer(1) - t1.ratio()) * half,
        (Ratio::from_integer(1) - t2.ratio()) * half,
    ];
    if angles.iter().any(|a| *a <= Ratio::from_integer(0)) {
        return Err(Error::InvalidAngles(format!(
            "gaps {t1}, {t2} give a nonpositive angle"
        )));
    }
    let den = angles
        .iter()
        .fold(1i64, |l, a| num_integer::lcm(l, *a.denom()));
    let [a, b, c] = angles.map(|a| (a * den).to_integer());
    TriangleSignature::normalize(a, b, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverCompatibility {
    Compatible,
    CompatibleWithDoubling,
    Incompatible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFingerprintCheck {
    pub outcome: CoverCompatibility,
    /// False when the caller could not vouch for consistent scales and only
    /// angle data were compared.
    pub length_compared: bool,
}

/// Compares the fingerprint of a source point with that of its image under a
/// presumed balanced cover.
pub fn check_cover_fingerprints(
    fx: &Fingerprint,
    fy: &Fingerprint,
    x_isosceles_apex: bool,
    compare_length: bool,
) -> CoverFingerprintCheck {
    let base = fx.angle_set == fy.angle_set && (!compare_length || fx.length == fy.length);
    let outcome = if base && fx.cone_angle == fy.cone_angle {
        CoverCompatibility::Compatible
    } else if base && fx.cone_angle == fy.cone_angle * 2 && x_isosceles_apex {
        CoverCompatibility::CompatibleWithDoubling
    } else {
        CoverCompatibility::Incompatible
    };
    CoverFingerprintCheck {
        outcome,
        length_compared: compare_length,
    }
}

/// Half-segments of the shortest geodesics at the surface point over `v_i`
/// containing copy `copy`: full edges, and altitude halves from the point to
/// the bisecting side.
pub fn geodesic_segments(
    surface: &UnfoldedSurface,
    i: usize,
    copy: usize,
    punctured: &BTreeSet<usize>,
) -> Result<Vec<(Point, Point)>> {
    let sig = &surface.signature;
    let fp = fingerprint(sig, i, punctured, &surface.placement.scale)?;
    let cycle = corner_cycles(surface)?
        .into_iter()
        .find(|c| c.label == i && c.tiles.contains(&copy))
        .ok_or(Error::InvalidVertex(i))?;
    let (j, k) = others(i);
    let mut out = Vec::new();
    for &t in &cycle.tiles {
        let v = &surface.copies[t].vertices;
        let p = &v[i - 1];
        for &target in &fp.shortest_targets {
            if target == i {
                let (a, b) = (&v[j - 1], &v[k - 1]);
                let u = b.sub(a);
                let s = p.sub(a).dot(&u).div(&u.norm_sq())?;
                out.push((p.clone(), a.add(&u.scale(&s))));
            } else {
                out.push((p.clone(), v[target - 1].clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(a: i64, b: i64, c: i64) -> TriangleSignature {
        TriangleSignature::normalize(a, b, c).unwrap()
    }

    fn none() -> BTreeSet<usize> {
        BTreeSet::new()
    }

    fn one() -> RealCyclotomic {
        RealCyclotomic::one()
    }

    #[test]
    fn distances_examples() {
        let d = saddle_distances(&sig(3, 4, 5), 3, &none(), &one()).unwrap();
        assert_eq!(d.len(), 1);
        assert!((d[&3].to_f64() - 6f64.sqrt() / 2.0).abs() < 1e-12);
        let d = saddle_distances(&sig(1, 2, 2), 2, &none(), &one()).unwrap();
        assert!((d[&3].to_f64() - 0.587785252292).abs() < 1e-11);
        assert!((d[&2].to_f64() - 1.118033988750).abs() < 1e-11);
        assert_eq!(
            saddle_distances(&sig(1, 1, 2), 1, &none(), &one()),
            Err(Error::NoSingularTarget)
        );
    }

    #[test]
    fn fingerprint_examples() {
        let f = fingerprint(&sig(3, 4, 5), 3, &none(), &one()).unwrap();
        assert_eq!(f.fp_type, FingerprintType::II);
        assert_eq!(f.angle_set, vec![Angle::new(1, 3), Angle::new(1, 2)]);
        assert_eq!(f.cone_angle, Angle::new(10, 1));

        let f = fingerprint(&sig(1, 1, 4), 3, &none(), &one()).unwrap();
        assert_eq!(f.angle_set, vec![Angle::new(2, 3)]);
        assert_eq!(f.cone_angle, Angle::new(4, 1));
        assert_eq!(trichotomy_case(&sig(1, 1, 4), 3, &f), Some(TrichotomyCase::ApexAngle));

        let f = fingerprint(&sig(1, 2, 2), 2, &none(), &one()).unwrap();
        assert_eq!(f.angle_set, vec![Angle::new(4, 5)]);
        assert_eq!(trichotomy_case(&sig(1, 2, 2), 2, &f), Some(TrichotomyCase::DoubleAngle));
    }

    #[test]
    fn reconstruction() {
        let s = reconstruct_from_type2(Angle::new(1, 3), Angle::new(1, 2)).unwrap();
        assert_eq!(s.canonical_key(), [3, 4, 5]);
        assert!(reconstruct_from_type2(Angle::new(1, 3), Angle::new(1, 3)).is_err());
        assert!(reconstruct_from_type2(Angle::new(1, 1), Angle::new(1, 3)).is_err());
    }

    #[test]
    fn cover_check_examples() {
        // construction-consistent scales for the degree-1 cover
        // X(1,1,3) -> X(2,3,5): the Y scale is sin(pi/5) times the X scale
        let sx = one();
        let sy = sin_pi(Angle::new(1, 5));
        let fx = fingerprint(&sig(1, 1, 3), 3, &none(), &sx).unwrap();
        let fy = fingerprint(&sig(2, 3, 5), 2, &none(), &sy).unwrap();
        assert_eq!(fx.angle_set, vec![Angle::new(3, 5)]);
        assert_eq!(fy.angle_set, vec![Angle::new(3, 5)]);
        assert_eq!(
            check_cover_fingerprints(&fx, &fy, true, true).outcome,
            CoverCompatibility::Compatible
        );
        let f136 = fingerprint(&sig(1, 3, 6), 3, &none(), &one()).unwrap();
        assert_eq!(f136.angle_set, vec![Angle::new(6, 5)]);
        assert_eq!(
            check_cover_fingerprints(&f136, &fy, false, false).outcome,
            CoverCompatibility::Incompatible
        );
        assert_eq!(
            check_cover_fingerprints(&fx, &fx, false, true).outcome,
            CoverCompatibility::Compatible
        );
    }

    #[test]
    fn puncture_validation() {
        let s = sig(2, 3, 4);
        let p: BTreeSet<usize> = [3].into();
        assert!(fingerprint(&s, 1, &p, &one()).is_ok());
        let p: BTreeSet<usize> = [2].into();
        assert!(matches!(fingerprint(&s, 1, &p, &one()), Err(Error::InvalidPuncture(_))));
        let p: BTreeSet<usize> = [1].into();
        assert!(matches!(fingerprint(&s, 1, &p, &one()), Err(Error::InvalidPuncture(_))));
    }

    #[test]
    fn overlay_segments_exist() {
        let x = crate::unfold::unfold(&sig(1, 1, 4), one()).unwrap();
        let segs = geodesic_segments(&x, 3, 0, &none()).unwrap();
        assert!(!segs.is_empty());
    }
}
