//! Unfolding of a rational triangle by its dihedral reflection group into a
//! closed translation surface tiled by `2Q` triangle copies.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::combinatorics::TriangleSignature;
use crate::cyclotomic::{sin_pi, RealCyclotomic};
use crate::error::{Error, Result};
use crate::plane::Point;
use crate::tiling::{check_gluing, corner_cycles, CornerCycle, SideRef, Tiling};

/// Element of `D_{2Q}` acting linearly as rotation by `2 pi k / Q`, preceded
/// by reflection in the horizontal axis when `reflected`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralElement {
    pub rotation: u64,
    pub reflected: bool,
}

impl DihedralElement {
    pub fn identity() -> Self {
        Self {
            rotation: 0,
            reflected: false,
        }
    }

    /// `self * other`.
    pub fn compose(&self, other: &Self, q: u64) -> Self {
        let k2 = if self.reflected {
            (q - other.rotation % q) % q
        } else {
            other.rotation % q
        };
        Self {
            rotation: (self.rotation + k2) % q,
            reflected: self.reflected ^ other.reflected,
        }
    }

    /// Reflection in the line of side `side` of the base triangle (side `s`
    /// is opposite vertex `s`).
    pub fn side_reflection(sig: &TriangleSignature, side: usize) -> Self {
        let q = sig.q();
        let rotation = match side {
            3 => 0,
            2 => sig.entry(1) % q,
            1 => (q - sig.entry(2) % q) % q,
            _ => panic!("side index {side} out of range"),
        };
        Self {
            rotation,
            reflected: true,
        }
    }

    /// Dense index in `0..2Q`.
    pub fn index(&self, q: u64) -> usize {
        (self.rotation + if self.reflected { q } else { 0 }) as usize
    }

    pub fn from_index(i: usize, q: u64) -> Self {
        let i = i as u64;
        Self {
            rotation: i % q,
            reflected: i >= q,
        }
    }

    pub fn apply(&self, p: &Point, q: u64) -> Point {
        let p = if self.reflected { p.reflect_x() } else { p.clone() };
        p.rotate(Angle::new(2 * self.rotation as i64, q as i64))
    }
}

/// Size and orientation of the base triangle. `v1` sits at the origin and
/// `v1 -> v2` points in direction `rotation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    /// Circumdiameter of the base triangle.
    pub scale: RealCyclotomic,
    pub rotation: Angle,
}

impl Default for Placement {
    fn default() -> Self {
        Self {
            scale: RealCyclotomic::one(),
            rotation: Angle::zero(),
        }
    }
}

impl Placement {
    pub fn with_scale(scale: RealCyclotomic) -> Self {
        Self {
            scale,
            rotation: Angle::zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCopy {
    pub label: DihedralElement,
    /// Indexed by base vertex: `vertices[i - 1]` lies over `v_i`.
    pub vertices: [Point; 3],
    pub counterclockwise: bool,
}

impl TriangleCopy {
    /// Vertices in counterclockwise order.
    pub fn ccw_vertices(&self) -> [&Point; 3] {
        let [a, b, c] = &self.vertices;
        if self.counterclockwise {
            [a, b, c]
        } else {
            [a, c, b]
        }
    }
}

#[derive(Debug, Clone)]
pub struct UnfoldedSurface {
    pub signature: TriangleSignature,
    pub placement: Placement,
    pub copies: Vec<TriangleCopy>,
    /// `gluing[c][s - 1]` is the side glued to side `s` of copy `c`.
    pub gluing: Vec<[SideRef; 3]>,
}

impl Tiling for UnfoldedSurface {
    fn tile_count(&self) -> usize {
        self.copies.len()
    }

    fn corner(&self, t: usize, i: usize) -> &Point {
        &self.copies[t].vertices[i - 1]
    }

    fn partner(&self, t: usize, side: usize) -> SideRef {
        self.gluing[t][side - 1]
    }
}

/// Vertices of the base triangle for a placement, before any group action.
pub fn base_triangle(sig: &TriangleSignature, placement: &Placement) -> [Point; 3] {
    let s = &placement.scale;
    let v2 = Point::polar(&(s * &sin_pi(sig.angle(3))), placement.rotation);
    let v3 = Point::polar(
        &(s * &sin_pi(sig.angle(2))),
        placement.rotation + sig.angle(1),
    );
    [Point::origin(), v2, v3]
}

pub fn unfold(sig: &TriangleSignature, scale: RealCyclotomic) -> Result<UnfoldedSurface> {
    unfold_placed(sig, Placement::with_scale(scale))
}

/// Builds all `2Q` copies with exact coordinates and the gluing
/// `(g, s) <-> (g * r_s, s)`. Copies are translated so that the ones
/// around each point over `v1` form a fan, one fan per point and turn.
pub fn unfold_placed(sig: &TriangleSignature, placement: Placement) -> Result<UnfoldedSurface> {
    if !placement.scale.is_positive() {
        return Err(Error::NonPositiveScale);
    }
    let q = sig.q();
    let n = 2 * q as usize;
    // canonical base, rotation applied after the group action
    let canon = base_triangle(
        sig,
        &Placement::with_scale(placement.scale.clone()),
    );
    let conductor = crate::cyclotomic::ntheory::lcm(4 * q, 4 * placement.rotation.denom() as u64);
    let mut copies = Vec::with_capacity(n);
    for idx in 0..n {
        let g = DihedralElement::from_index(idx, q);
        let vertices = canon.clone().map(|v| {
            g.apply(&v, q)
                .rotate(placement.rotation)
                .lift(lcm_conductor(conductor, &placement.scale))
        });
        copies.push(TriangleCopy {
            label: g,
            vertices,
            counterclockwise: !g.reflected,
        });
    }
    let reflections = [1, 2, 3].map(|s| DihedralElement::side_reflection(sig, s));
    let gluing = (0..n)
        .map(|idx| {
            let g = DihedralElement::from_index(idx, q);
            [1, 2, 3].map(|s| (g.compose(&reflections[s - 1], q).index(q), s))
        })
        .collect();
    let mut surface = UnfoldedSurface {
        signature: *sig,
        placement,
        copies,
        gluing,
    };
    surface.layout_fans()?;
    Ok(surface)
}

fn lcm_conductor(base: u64, scale: &RealCyclotomic) -> u64 {
    crate::cyclotomic::ntheory::lcm(base, scale.conductor())
}

impl UnfoldedSurface {
    pub fn q(&self) -> u64 {
        self.signature.q()
    }

    fn layout_fans(&mut self) -> Result<()> {
        let q = self.q() as i64;
        let a1 = self.signature.entry(1) as i64;
        let step = RealCyclotomic::from_ratio(5, 2) * self.placement.scale.clone();
        let cycles: Vec<CornerCycle> = corner_cycles(self)?
            .into_iter()
            .filter(|c| c.label == 1)
            .collect();
        for (p, cycle) in cycles.iter().enumerate() {
            for (w, &tile) in cycle.tiles.iter().enumerate() {
                let turn = (w as i64 * a1) / (2 * q);
                if turn == 0 && p == 0 {
                    continue;
                }
                let offset = Point::new(
                    step.scale_int(turn),
                    step.scale_int(-(p as i64)),
                );
                let copy = &mut self.copies[tile];
                copy.vertices = copy.vertices.clone().map(|v| v.add(&offset));
            }
        }
        Ok(())
    }

    /// Lcm of all coordinate conductors.
    pub fn conductor(&self) -> u64 {
        self.copies
            .iter()
            .flat_map(|c| c.vertices.iter())
            .flat_map(|p| [p.x.conductor(), p.y.conductor()])
            .fold(1, crate::cyclotomic::ntheory::lcm)
    }

    /// Gluing invariants: involution without fixed points, same side label,
    /// and identical edge vectors on both sides of every pair.
    pub fn check(&self) -> std::result::Result<(), SideRef> {
        check_gluing(self)
    }

    pub fn edge_pairs(&self) -> usize {
        3 * self.copies.len() / 2
    }

    /// Side length of the base triangle opposite vertex `i`.
    pub fn side_length(&self, i: usize) -> RealCyclotomic {
        &self.placement.scale * &sin_pi(self.signature.angle(i))
    }

    pub fn traverse_vertex_classes(&self) -> Result<Vec<VertexCycleRecord>> {
        let cycles = corner_cycles(self)?;
        let two_q = 2 * self.q();
        let mut out = Vec::new();
        for i in 1..=3 {
            let a = self.signature.entry(i);
            let mut turns = Vec::new();
            for c in cycles.iter().filter(|c| c.label == i) {
                let total = c.tiles.len() as u64 * a;
                if !total.is_multiple_of(two_q) {
                    return Err(Error::InconsistentGluing {
                        copy: c.tiles[0],
                        vertex: i,
                    });
                }
                turns.push(total / two_q);
            }
            out.push(VertexCycleRecord {
                vertex_index: i,
                points: turns.len() as u64,
                cone_turns: turns,
            });
        }
        Ok(out)
    }

    pub fn euler_and_area(&self) -> Result<EulerArea> {
        let v: u64 = self
            .traverse_vertex_classes()?
            .iter()
            .map(|r| r.points)
            .sum();
        let f = self.copies.len() as u64;
        let e = 3 * f / 2;
        let chi = v as i64 - e as i64 + f as i64;
        let half = BigRational::new(1.into(), 2.into());
        let mut area = RealCyclotomic::zero();
        for c in &self.copies {
            let [a, b, d] = c.ccw_vertices();
            area = &area + &b.sub(a).cross(&d.sub(a)).scale(&half);
        }
        Ok(EulerArea {
            v,
            e,
            f,
            chi,
            genus: ((2 - chi) / 2) as u64,
            area,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCycleRecord {
    pub vertex_index: usize,
    pub points: u64,
    pub cone_turns: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerArea {
    #[serde(rename = "V")]
    pub v: u64,
    #[serde(rename = "E")]
    pub e: u64,
    #[serde(rename = "F")]
    pub f: u64,
    pub chi: i64,
    pub genus: u64,
    pub area: RealCyclotomic,
}

/// Area of the base triangle: `scale^2 sin a1 sin a2 sin a3 / 2`.
pub fn triangle_area(sig: &TriangleSignature, scale: &RealCyclotomic) -> RealCyclotomic {
    let s = [1, 2, 3].map(|i| sin_pi(sig.angle(i)));
    (&(&(&s[0] * &s[1]) * &s[2]) * &scale.square()).scale(&BigRational::new(1.into(), 2.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::sqrt2;

    fn sig(a: i64, b: i64, c: i64) -> TriangleSignature {
        TriangleSignature::normalize(a, b, c).unwrap()
    }

    #[test]
    fn group_law() {
        for s in [sig(3, 4, 5), sig(1, 2, 2), sig(2, 3, 4)] {
            let q = s.q();
            let all: Vec<_> = (0..2 * q as usize)
                .map(|i| DihedralElement::from_index(i, q))
                .collect();
            for a in &all {
                assert_eq!(a.compose(&DihedralElement::identity(), q), *a);
                for b in &all {
                    let ab = a.compose(b, q);
                    assert!(ab.rotation < q);
                    for c in &all[..4] {
                        assert_eq!(ab.compose(c, q), a.compose(&b.compose(c, q), q));
                    }
                }
            }
            for side in 1..=3 {
                let r = DihedralElement::side_reflection(&s, side);
                assert_eq!(r.compose(&r, q), DihedralElement::identity());
            }
        }
    }

    #[test]
    fn side_reflections_fix_their_sides() {
        let s = sig(3, 4, 5);
        let q = s.q();
        let base = base_triangle(&s, &Placement::default());
        for side in 1..=3 {
            let (a, b) = crate::tiling::side_corners(side);
            let dir = base[b - 1].sub(&base[a - 1]);
            let r = DihedralElement::side_reflection(&s, side);
            assert_eq!(r.apply(&dir, q), dir, "side {side}");
        }
    }

    #[test]
    fn copy_and_pair_counts() {
        let x = unfold(&sig(1, 1, 2), RealCyclotomic::one()).unwrap();
        assert_eq!(x.copies.len(), 8);
        assert_eq!(x.edge_pairs(), 12);
        assert!(x.check().is_ok());
        let x = unfold(&sig(1, 1, 1), RealCyclotomic::one()).unwrap();
        assert_eq!(x.copies.len(), 6);
        assert_eq!(x.euler_and_area().unwrap().genus, 1);
    }

    #[test]
    fn traversal_examples() {
        let x = unfold(&sig(3, 4, 5), RealCyclotomic::one()).unwrap();
        let t = x.traverse_vertex_classes().unwrap();
        assert_eq!(t[2].points, 1);
        assert_eq!(t[2].cone_turns, vec![5]);
        let ea = x.euler_and_area().unwrap();
        assert_eq!((ea.v, ea.e, ea.f, ea.genus), (8, 36, 24, 3));
        let t1 = triangle_area(&x.signature, &RealCyclotomic::one());
        assert_eq!(ea.area, t1.scale_int(24));

        let x = unfold(&sig(1, 2, 3), RealCyclotomic::one()).unwrap();
        let t = x.traverse_vertex_classes().unwrap();
        assert!(t.iter().all(|r| r.cone_turns.iter().all(|&c| c == 1)));
        assert_eq!(t.iter().map(|r| r.points).sum::<u64>(), 6);

        let x = unfold(&sig(1, 1, 4), RealCyclotomic::one()).unwrap();
        let t = x.traverse_vertex_classes().unwrap();
        assert_eq!(t[2].cone_turns, vec![2, 2]);
        assert_eq!(x.euler_and_area().unwrap().genus, 2);

        let x = unfold(&sig(1, 1, 2), RealCyclotomic::one()).unwrap();
        assert_eq!(x.euler_and_area().unwrap().chi, 0);
    }

    #[test]
    fn area_scales_quadratically() {
        let s = sig(2, 3, 4);
        let a1 = unfold(&s, RealCyclotomic::one()).unwrap().euler_and_area().unwrap().area;
        let a2 = unfold(&s, sqrt2()).unwrap().euler_and_area().unwrap().area;
        assert_eq!(a2, a1.scale_int(2));
    }

    #[test]
    fn rejects_nonpositive_scale() {
        assert!(unfold(&sig(1, 2, 3), RealCyclotomic::zero()).is_err());
    }
}
