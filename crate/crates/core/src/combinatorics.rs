//! Integer model of rational triangles `T(a1, a2, a3)` and the vertex data of
//! their unfolded surfaces.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};

/// Reduced angle numerators of a rational triangle. Vertex `i` has angle
/// `a_i * pi / Q` with `Q = a1 + a2 + a3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriangleSignature {
    a: [u64; 3],
}

impl TriangleSignature {
    /// Divides out the common gcd. Input order is kept for vertex indexing.
    pub fn normalize(a1: i64, a2: i64, a3: i64) -> Result<Self> {
        if a1 < 1 || a2 < 1 || a3 < 1 {
            return Err(Error::NonPositiveEntry([a1, a2, a3]));
        }
        let g = a1.gcd(&a2).gcd(&a3);
        Ok(Self {
            a: [(a1 / g) as u64, (a2 / g) as u64, (a3 / g) as u64],
        })
    }

    pub fn from_array(a: [u64; 3]) -> Result<Self> {
        Self::normalize(a[0] as i64, a[1] as i64, a[2] as i64)
    }

    pub fn entries(&self) -> [u64; 3] {
        self.a
    }

    /// Entry for the 1-based vertex index.
    pub fn entry(&self, vertex: usize) -> u64 {
        self.a[vertex - 1]
    }

    pub fn q(&self) -> u64 {
        self.a.iter().sum()
    }

    /// Sorted ascending; two signatures name the same surface iff their keys agree.
    pub fn canonical_key(&self) -> [u64; 3] {
        let mut k = self.a;
        k.sort_unstable();
        k
    }

    pub fn canonical(&self) -> Self {
        Self {
            a: self.canonical_key(),
        }
    }

    pub fn same_triangle(&self, other: &Self) -> bool {
        self.canonical_key() == other.canonical_key()
    }

    /// Interior angle at the 1-based vertex, as a multiple of pi.
    pub fn angle(&self, vertex: usize) -> Angle {
        Angle::new(self.entry(vertex) as i64, self.q() as i64)
    }

    /// Number of surface points over the vertex.
    pub fn class_size(&self, vertex: usize) -> u64 {
        self.entry(vertex).gcd(&self.q())
    }

    /// Cone angle of each point over the vertex, in units of `2 pi`.
    pub fn cone_turns(&self, vertex: usize) -> u64 {
        self.entry(vertex) / self.class_size(vertex)
    }

    pub fn is_singular(&self, vertex: usize) -> bool {
        self.cone_turns(vertex) > 1
    }

    pub fn singular_vertices(&self) -> Vec<usize> {
        (1..=3).filter(|&i| self.is_singular(i)).collect()
    }

    pub fn vertex_classes(&self) -> [VertexClassSummary; 3] {
        [1, 2, 3].map(|i| VertexClassSummary {
            vertex_index: i,
            angle: self.angle(i),
            class_size: self.class_size(i),
            cone_turns: self.cone_turns(i),
            singular: self.is_singular(i),
        })
    }

    /// `g = 1 + (Q - sum gcd(a_i, Q)) / 2`.
    pub fn genus(&self) -> u64 {
        let v: u64 = (1..=3).map(|i| self.class_size(i)).sum();
        1 + (self.q() - v) / 2
    }

    /// Sum of `a_i` over the singular classes. The cone angles of all
    /// singular points add up to `2 pi` times this.
    pub fn singular_mass(&self) -> u64 {
        self.singular_vertices().iter().map(|&i| self.entry(i)).sum()
    }

    pub fn shape(&self) -> Shape {
        let [a1, a2, a3] = self.a;
        let is_isosceles = a1 == a2 || a2 == a3 || a1 == a3;
        let apex_index = if a1 == a2 && a2 == a3 {
            None
        } else if a2 == a3 {
            Some(1)
        } else if a1 == a3 {
            Some(2)
        } else if a1 == a2 {
            Some(3)
        } else {
            None
        };
        let q = self.q();
        let right_index = (1..=3).find(|&i| 2 * self.entry(i) == q);
        Shape {
            is_isosceles,
            apex_index,
            is_right: right_index.is_some(),
            right_index,
        }
    }

    /// Index of an obtuse angle, if any.
    pub fn obtuse_vertex(&self) -> Option<usize> {
        (1..=3).find(|&i| 2 * self.entry(i) > self.q())
    }

    /// Every reduced signature with `Q <= qmax`, as canonical (sorted) triples.
    pub fn enumerate_canonical(qmax: u64) -> Vec<Self> {
        let mut out = Vec::new();
        for q in 3..=qmax {
            for a1 in 1..=q / 3 {
                for a2 in a1..=(q - a1) / 2 {
                    let a3 = q - a1 - a2;
                    if a3 < a2 {
                        continue;
                    }
                    if a1.gcd(&a2).gcd(&a3) == 1 {
                        out.push(Self { a: [a1, a2, a3] });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for TriangleSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({},{},{})", self.a[0], self.a[1], self.a[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClassSummary {
    pub vertex_index: usize,
    pub angle: Angle,
    pub class_size: u64,
    pub cone_turns: u64,
    pub singular: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub is_isosceles: bool,
    /// Absent for equilateral triangles.
    pub apex_index: Option<usize>,
    pub is_right: bool,
    pub right_index: Option<usize>,
}
