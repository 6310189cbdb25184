//! Explicit family covers. Each isosceles copy splits along its altitude into
//! two halves congruent to the right triangle; matching every half with the
//! right-triangle copy of equal edge vectors gives the map.

use std::collections::BTreeMap;

use super::family::{lemma7_family, Lemma7Family};
use super::{CoverDescriptor, CoverKind, ProfileEntry, TargetClass};
use crate::angle::Angle;
use crate::combinatorics::TriangleSignature;
use crate::cyclotomic::{sin_pi, RealCyclotomic};
use crate::error::{Error, Result};
use crate::plane::Point;
use crate::tiling::{check_gluing, corner_cycles, edge_vector, SideRef, Tiling};
use crate::unfold::{unfold, unfold_placed, Placement, UnfoldedSurface};

/// An isosceles unfolding cut into right-triangle halves. Corners carry the
/// labels of the right triangle: 1 is the foot of the altitude, `apex_label`
/// the apex, `base_label` the base vertex.
#[derive(Debug, Clone)]
pub struct HalfTiling {
    pub surface: UnfoldedSurface,
    pub apex_label: usize,
    pub base_label: usize,
    corners: Vec<[Point; 3]>,
    over: Vec<[Option<usize>; 3]>,
    gluing: Vec<[SideRef; 3]>,
}

impl HalfTiling {
    /// Halves `2c` (containing `v2`) and `2c + 1` (containing `v3`) of copy `c`.
    pub fn new(surface: UnfoldedSurface, apex_label: usize, base_label: usize) -> Result<Self> {
        if apex_label == base_label || !(2..=3).contains(&apex_label) || !(2..=3).contains(&base_label)
        {
            return Err(Error::MapInconsistent(format!(
                "labels {apex_label}, {base_label} must be 2 and 3"
            )));
        }
        let n = surface.copies.len();
        let mut corners = Vec::with_capacity(2 * n);
        let mut over = Vec::with_capacity(2 * n);
        let mut gluing = Vec::with_capacity(2 * n);
        for (c, copy) in surface.copies.iter().enumerate() {
            let [v1, v2, v3] = &copy.vertices;
            let mid = v2.midpoint(v3);
            for (half, base, base_vertex) in [(0, v2, 2), (1, v3, 3)] {
                let mut pts = [mid.clone(), mid.clone(), mid.clone()];
                pts[apex_label - 1] = v1.clone();
                pts[base_label - 1] = base.clone();
                corners.push(pts);
                let mut o = [None; 3];
                o[apex_label - 1] = Some(1);
                o[base_label - 1] = Some(base_vertex);
                over.push(o);
                // side across the original copy edge through this half
                let copy_side = if half == 0 { 3 } else { 2 };
                let mut g = [(0, 0); 3];
                g[base_label - 1] = (2 * c + 1 - half, base_label);
                g[0] = (2 * surface.gluing[c][copy_side - 1].0 + half, 1);
                g[apex_label - 1] = (2 * surface.gluing[c][0].0 + half, apex_label);
                gluing.push(g);
            }
        }
        Ok(Self {
            surface,
            apex_label,
            base_label,
            corners,
            over,
            gluing,
        })
    }
}

impl Tiling for HalfTiling {
    fn tile_count(&self) -> usize {
        self.corners.len()
    }

    fn corner(&self, t: usize, i: usize) -> &Point {
        &self.corners[t][i - 1]
    }

    fn partner(&self, t: usize, side: usize) -> SideRef {
        self.gluing[t][side - 1]
    }
}

/// Either side of a constructed map.
#[derive(Debug, Clone)]
pub enum ConstructedSurface {
    /// Tile labels equal vertex labels.
    Unfolded(UnfoldedSurface),
    Halves(HalfTiling),
}

impl ConstructedSurface {
    pub fn signature(&self) -> &TriangleSignature {
        match self {
            ConstructedSurface::Unfolded(s) => &s.signature,
            ConstructedSurface::Halves(h) => &h.surface.signature,
        }
    }

    pub fn unfolded(&self) -> &UnfoldedSurface {
        match self {
            ConstructedSurface::Unfolded(s) => s,
            ConstructedSurface::Halves(h) => &h.surface,
        }
    }

    /// Triangle vertex under corner `label` of tile `t`; `None` for the foot
    /// of an altitude, which is a regular point.
    pub fn over(&self, t: usize, label: usize) -> Option<usize> {
        match self {
            ConstructedSurface::Unfolded(_) => Some(label),
            ConstructedSurface::Halves(h) => h.over[t][label - 1],
        }
    }

    fn tiling(&self) -> &dyn Tiling {
        match self {
            ConstructedSurface::Unfolded(s) => s,
            ConstructedSurface::Halves(h) => h,
        }
    }
}

/// Tile `t` of the source goes onto tile `image[t]` of the target by a
/// translation, corner labels preserved.
#[derive(Debug, Clone)]
pub struct CoverMap {
    pub source: ConstructedSurface,
    pub target: ConstructedSurface,
    pub image: Vec<usize>,
    pub degree: u64,
    pub kind: CoverKind,
}

impl CoverMap {
    /// Verifies the map, then reads the ramification profile off the corner
    /// cycles: local degree is the ratio of cycle lengths.
    pub fn descriptor(&self) -> Result<CoverDescriptor> {
        verify_map(self)?;
        let src = self.source.tiling();
        let tgt = self.target.tiling();
        let tcycles = corner_cycles(tgt)?;
        let mut cycle_of = vec![[usize::MAX; 3]; tgt.tile_count()];
        for (k, c) in tcycles.iter().enumerate() {
            for &t in &c.tiles {
                cycle_of[t][c.label - 1] = k;
            }
        }
        let tsig = *self.target.signature();
        let mut counts: BTreeMap<(usize, TargetClass, u64), u64> = BTreeMap::new();
        for c in corner_cycles(src)? {
            let t0 = c.tiles[0];
            let Some(i) = self.source.over(t0, c.label) else {
                continue;
            };
            let image_tile = self.image[t0];
            let tc = &tcycles[cycle_of[image_tile][c.label - 1]];
            if c.tiles.len() % tc.tiles.len() != 0 {
                return Err(Error::MapInconsistent(format!(
                    "cycle of {} tiles over one of {}",
                    c.tiles.len(),
                    tc.tiles.len()
                )));
            }
            let m = (c.tiles.len() / tc.tiles.len()) as u64;
            let target = match self.target.over(tc.tiles[0], c.label) {
                Some(j) if tsig.is_singular(j) => TargetClass::Class(j),
                _ => TargetClass::Nonsingular,
            };
            *counts.entry((i, target, m)).or_default() += 1;
        }
        let ramification_profile: Vec<ProfileEntry> = counts
            .into_iter()
            .map(|((source_class, target, multiplicity), count)| ProfileEntry {
                source_class,
                target,
                multiplicity,
                count,
            })
            .collect();
        let balanced = ramification_profile.iter().all(|e| {
            !self.source.signature().is_singular(e.source_class)
                || e.target != TargetClass::Nonsingular
        });
        Ok(CoverDescriptor {
            source: *self.source.signature(),
            target: tsig,
            degree: self.degree,
            kind: self.kind,
            balanced,
            ramification_profile,
        })
    }
}

/// Checks that both tilings are consistent, that every tile maps by a
/// translation, that the map commutes with all gluings, and that every target
/// tile has exactly `degree` preimages.
pub fn verify_map(map: &CoverMap) -> Result<()> {
    let src = map.source.tiling();
    let tgt = map.target.tiling();
    let bad = |msg: String| Err(Error::MapInconsistent(msg));
    if let Err((t, s)) = check_gluing(src) {
        return bad(format!("source gluing fails at tile {t} side {s}"));
    }
    if let Err((t, s)) = check_gluing(tgt) {
        return bad(format!("target gluing fails at tile {t} side {s}"));
    }
    if map.image.len() != src.tile_count() {
        return bad("image table has the wrong length".into());
    }
    let mut hits = vec![0u64; tgt.tile_count()];
    for (t, &u) in map.image.iter().enumerate() {
        if u >= tgt.tile_count() {
            return bad(format!("tile {t} maps outside the target"));
        }
        hits[u] += 1;
        for side in 1..=3 {
            if edge_vector(src, t, side) != edge_vector(tgt, u, side) {
                return bad(format!("tile {t} is not a translate of tile {u}"));
            }
            let (pt, _) = src.partner(t, side);
            let (pu, _) = tgt.partner(u, side);
            if map.image[pt] != pu {
                return bad(format!("gluing of tile {t} side {side} is not respected"));
            }
        }
    }
    if let Some(u) = hits.iter().position(|&h| h != map.degree) {
        return bad(format!(
            "target tile {u} has {} preimages, expected {}",
            hits[u], map.degree
        ));
    }
    Ok(())
}

/// The right triangle at circumdiameter 1 with its right angle at the origin.
fn right_surface(fam: &Lemma7Family) -> Result<UnfoldedSurface> {
    unfold(&fam.y, RealCyclotomic::one())
}

/// The isosceles surface placed so that its copies are unions of
/// right-triangle copies.
fn isosceles_halves(fam: &Lemma7Family, which: CoverKind) -> Result<HalfTiling> {
    let qy = fam.y.q() as i64;
    let (x, leg, rotation, apex, base) = match which {
        CoverKind::F1 => (fam.x1, fam.a1, Angle::new(qy + fam.a1 as i64, qy), 3, 2),
        CoverKind::F2 => (fam.x2, fam.a2, Angle::new(qy - fam.a1 as i64, qy), 2, 3),
        _ => unreachable!(),
    };
    // apex-to-base side equals the hypotenuse
    let scale = sin_pi(Angle::new(leg as i64, qy)).inv()?;
    let surface = unfold_placed(&x, Placement { scale, rotation })?;
    HalfTiling::new(surface, apex, base)
}

/// For every half, the right-triangle copy with the same edge vectors.
fn match_halves(h: &HalfTiling, y: &UnfoldedSurface) -> Result<Vec<usize>> {
    let approx = |t: &dyn Tiling, k: usize| {
        let (a, b) = edge_vector(t, k, 2).to_f64();
        let (c, d) = edge_vector(t, k, 3).to_f64();
        [a, b, c, d]
    };
    let ys: Vec<[f64; 4]> = (0..y.tile_count()).map(|k| approx(y, k)).collect();
    (0..h.tile_count())
        .map(|t| {
            let p = approx(h, t);
            let best = ys
                .iter()
                .enumerate()
                .min_by(|a, b| dist(a.1, &p).total_cmp(&dist(b.1, &p)))
                .map(|(k, _)| k)
                .ok_or_else(|| Error::MapInconsistent("empty target".into()))?;
            if (1..=3).all(|s| edge_vector(h, t, s) == edge_vector(y, best, s)) {
                Ok(best)
            } else {
                Err(Error::MapInconsistent(format!(
                    "half {t} matches no right-triangle copy"
                )))
            }
        })
        .collect()
}

fn dist(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// `F1` or `F2` of the family with legs `(a1, a2)`: isosceles onto right.
pub fn construct_lemma7_map(a1: u64, a2: u64, which: CoverKind) -> Result<CoverMap> {
    let fam = lemma7_family(a1, a2)?;
    let (_, degree) = fam
        .x(which)
        .ok_or_else(|| Error::MapInconsistent(format!("{which} is not a reflection")))?;
    let y = right_surface(&fam)?;
    let h = isosceles_halves(&fam, which)?;
    let image = match_halves(&h, &y)?;
    Ok(CoverMap {
        source: ConstructedSurface::Halves(h),
        target: ConstructedSurface::Unfolded(y),
        image,
        degree,
        kind: which,
    })
}

fn invert(image: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut inv = vec![usize::MAX; n];
    for (t, &u) in image.iter().enumerate() {
        if inv[u] != usize::MAX {
            return Err(Error::MapInconsistent("degree-1 map is not injective".into()));
        }
        inv[u] = t;
    }
    Ok(inv)
}

/// Any member of the family closure for legs `(a1, a2)`:
/// `F1`/`F2`, the inverse of a degree-1 reflection (`Equivalence`, with
/// `which` naming the reflection), or `X_odd -> X_even` (`Composition`).
pub fn construct_family_map(a1: u64, a2: u64, kind: CoverKind, which: CoverKind) -> Result<CoverMap> {
    match kind {
        CoverKind::F1 | CoverKind::F2 => construct_lemma7_map(a1, a2, kind),
        CoverKind::Equivalence => {
            let f = construct_lemma7_map(a1, a2, which)?;
            if f.degree != 1 {
                return Err(Error::MapInconsistent(format!("{which} has degree {}", f.degree)));
            }
            let image = invert(&f.image, f.target.tiling().tile_count())?;
            Ok(CoverMap {
                source: f.target,
                target: f.source,
                image,
                degree: 1,
                kind,
            })
        }
        CoverKind::Composition => {
            let f1 = construct_lemma7_map(a1, a2, CoverKind::F1)?;
            let f2 = construct_lemma7_map(a1, a2, CoverKind::F2)?;
            let (two, one) = match (f1.degree, f2.degree) {
                (2, 1) => (f1, f2),
                (1, 2) => (f2, f1),
                (d1, d2) => {
                    return Err(Error::MapInconsistent(format!(
                        "no composite for degrees {d1} and {d2}"
                    )))
                }
            };
            let back = invert(&one.image, one.target.tiling().tile_count())?;
            let image = two.image.iter().map(|&u| back[u]).collect();
            Ok(CoverMap {
                source: two.source,
                target: one.source,
                image,
                degree: 2,
                kind,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_two_family() {
        let f1 = construct_lemma7_map(1, 2, CoverKind::F1).unwrap();
        let d = f1.descriptor().unwrap();
        assert_eq!(d.degree, 2);
        assert_eq!(d.source.entries(), [4, 1, 1]);
        assert!(d.satisfies_riemann_hurwitz());
        assert!(d.satisfies_cone_relation());
        let f2 = construct_lemma7_map(1, 2, CoverKind::F2).unwrap();
        assert_eq!(f2.descriptor().unwrap().degree, 1);
    }

    #[test]
    fn composite_and_inverse() {
        for kind in [CoverKind::Composition, CoverKind::Equivalence] {
            let m = construct_family_map(1, 2, kind, CoverKind::F2).unwrap();
            let d = m.descriptor().unwrap();
            assert!(d.satisfies_riemann_hurwitz(), "{kind}: {d:?}");
        }
    }

    #[test]
    fn corrupted_map_is_rejected() {
        let mut m = construct_lemma7_map(2, 3, CoverKind::F1).unwrap();
        m.image.swap(0, 1);
        assert!(matches!(verify_map(&m), Err(Error::MapInconsistent(_))));
    }
}
