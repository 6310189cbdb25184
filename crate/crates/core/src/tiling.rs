//! Triangle tilings glued by translations along labeled sides, and the
//! corner walk that recovers surface points from the gluing alone.
//!
//! Tiles have corners labeled 1, 2, 3; side `s` is the side opposite corner
//! `s`. Every gluing pairs side `s` of one tile with side `s` of another and
//! identifies equally labeled endpoints.

use crate::error::{Error, Result};
use crate::plane::Point;

/// `(tile, side)` with `side` in 1..=3.
pub type SideRef = (usize, usize);

pub trait Tiling {
    fn tile_count(&self) -> usize;
    /// Corner `i` (1-based) of tile `t`.
    fn corner(&self, t: usize, i: usize) -> &Point;
    fn partner(&self, t: usize, side: usize) -> SideRef;
}

/// The two corners bounding side `s`, ascending.
pub fn side_corners(s: usize) -> (usize, usize) {
    match s {
        1 => (2, 3),
        2 => (1, 3),
        3 => (1, 2),
        _ => panic!("side index {s} out of range"),
    }
}

pub fn edge_vector<T: Tiling + ?Sized>(t: &T, tile: usize, side: usize) -> Point {
    let (a, b) = side_corners(side);
    t.corner(tile, b).sub(t.corner(tile, a))
}

/// One surface point: the ordered tiles whose corner `label` meets there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerCycle {
    pub label: usize,
    pub tiles: Vec<usize>,
}

/// Walks around every corner by alternately crossing the two sides that meet
/// at it. Cycles come out ordered by label, then by smallest tile.
pub fn corner_cycles<T: Tiling + ?Sized>(t: &T) -> Result<Vec<CornerCycle>> {
    let n = t.tile_count();
    let mut out = Vec::new();
    for label in 1..=3 {
        let mut seen = vec![false; n];
        let others: Vec<usize> = (1..=3).filter(|&s| s != label).collect();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut tiles = Vec::new();
            let mut cur = start;
            let mut cross = 0;
            loop {
                if seen[cur] || tiles.len() > n {
                    return Err(Error::InconsistentGluing {
                        copy: start,
                        vertex: label,
                    });
                }
                seen[cur] = true;
                tiles.push(cur);
                let (next, side) = t.partner(cur, others[cross]);
                if side != others[cross] {
                    return Err(Error::InconsistentGluing {
                        copy: cur,
                        vertex: label,
                    });
                }
                cur = next;
                cross ^= 1;
                if cur == start {
                    if cross != 0 {
                        return Err(Error::InconsistentGluing {
                            copy: start,
                            vertex: label,
                        });
                    }
                    break;
                }
            }
            out.push(CornerCycle { label, tiles });
        }
    }
    Ok(out)
}

/// Involution and translation checks on the gluing table. Returns the first
/// offending side.
pub fn check_gluing<T: Tiling + ?Sized>(t: &T) -> std::result::Result<(), SideRef> {
    for tile in 0..t.tile_count() {
        for side in 1..=3 {
            let (pt, ps) = t.partner(tile, side);
            if ps != side || pt == tile || t.partner(pt, ps) != (tile, side) {
                return Err((tile, side));
            }
            if edge_vector(t, tile, side) != edge_vector(t, pt, ps) {
                return Err((tile, side));
            }
        }
    }
    Ok(())
}
