//! Translation covers among triangular billiards surfaces: the right/isosceles
//! family, its explicit construction, necessary-condition filters, and the
//! exhaustive classification search.

mod construct;
mod family;
mod filters;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::combinatorics::TriangleSignature;

pub use construct::{
    construct_family_map, construct_lemma7_map, verify_map, ConstructedSurface, CoverMap,
    HalfTiling,
};
pub use family::{
    family_closure, lemma7_family, partner_signature, translation_equivalent, FamilyCover,
    Lemma7Family,
};
pub use filters::{
    class_matching, feasible_degrees, filter_chain, filter_chain_with, profile_is_balanced,
    FingerprintCache,
};
pub use search::{search, search_with_threads, SearchReport, SearchRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoverKind {
    F1,
    F2,
    Composition,
    Equivalence,
}

impl fmt::Display for CoverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverKind::F1 => "F1",
            CoverKind::F2 => "F2",
            CoverKind::Composition => "Composition",
            CoverKind::Equivalence => "Equivalence",
        })
    }
}

/// Image of a source vertex class: a singular target class or regular points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TargetClass {
    Class(usize),
    Nonsingular,
}

impl fmt::Display for TargetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetClass::Class(j) => write!(f, "{j}"),
            TargetClass::Nonsingular => f.write_str("regular"),
        }
    }
}

/// `count` points of source class `source_class` map to `target` with local
/// degree `multiplicity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub source_class: usize,
    pub target: TargetClass,
    pub multiplicity: u64,
    pub count: u64,
}

pub type Profile = Vec<ProfileEntry>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDescriptor {
    pub source: TriangleSignature,
    pub target: TriangleSignature,
    pub degree: u64,
    pub kind: CoverKind,
    pub balanced: bool,
    pub ramification_profile: Profile,
}

impl CoverDescriptor {
    /// `sum (m - 1) * count` over the profile.
    pub fn total_ramification(&self) -> u64 {
        self.ramification_profile
            .iter()
            .map(|e| (e.multiplicity - 1) * e.count)
            .sum()
    }

    /// `2 g_src - 2 == degree (2 g_tgt - 2) + R`.
    pub fn satisfies_riemann_hurwitz(&self) -> bool {
        let lhs = 2 * self.source.genus() as i64 - 2;
        let rhs = self.degree as i64 * (2 * self.target.genus() as i64 - 2)
            + self.total_ramification() as i64;
        lhs == rhs
    }

    /// `m * cone_turns(target) == cone_turns(source)` on every singular entry.
    pub fn satisfies_cone_relation(&self) -> bool {
        self.ramification_profile.iter().all(|e| match e.target {
            TargetClass::Class(j) => {
                e.multiplicity * self.target.cone_turns(j) == self.source.cone_turns(e.source_class)
            }
            TargetClass::Nonsingular => e.multiplicity == self.source.cone_turns(e.source_class),
        })
    }
}

/// Which constraint a filter enforced on the whole degree range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DegreeBoundSource {
    RiemannHurwitz,
    ConeMass,
    /// Genus-1 targets: higher degrees factor through torus self-covers.
    TorusTarget,
}

/// Why a candidate cover (or a whole degree range) cannot exist.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "filter", rename_all = "kebab-case")]
pub enum Reason {
    /// Different holonomy fields.
    HolonomyField { q_source: u64, q_target: u64 },
    /// A surface of genus at least 2 covers itself only by degree 1.
    SelfCover,
    /// No degree above `max_degree` is possible.
    DegreeBound { max_degree: u64, bound: DegreeBoundSource },
    RiemannHurwitz { degree: u64 },
    ConeMass { degree: u64 },
    ClassMatching { degree: u64 },
    /// Degree-1 covers exist only between translation-equivalent surfaces.
    NotEquivalent,
    /// Balanced covers have degree at most 2.
    BalancedDegree { degree: u64 },
    FingerprintType { degree: u64, source_class: usize, target_class: usize },
    FingerprintAngles {
        degree: u64,
        source_class: usize,
        target_class: usize,
        source_angles: Vec<Angle>,
        target_angles: Vec<Angle>,
    },
    /// Local degree other than 1, or 2 away from an isosceles apex.
    FingerprintCone { degree: u64, source_class: usize, target_class: usize, multiplicity: u64 },
    FingerprintLength { degree: u64, source_class: usize, target_class: usize },
    /// Equal Type II fingerprints pin down the triangle.
    TypeIiRigidity { degree: u64, source_class: usize, target_class: usize },
}

impl Reason {
    pub fn filter(&self) -> &'static str {
        match self {
            Reason::HolonomyField { .. } => "holonomy-field",
            Reason::SelfCover => "self-cover",
            Reason::DegreeBound { .. } => "degree-bound",
            Reason::RiemannHurwitz { .. } => "riemann-hurwitz",
            Reason::ConeMass { .. } => "cone-mass",
            Reason::ClassMatching { .. } => "class-matching",
            Reason::NotEquivalent => "not-equivalent",
            Reason::BalancedDegree { .. } => "balanced-degree",
            Reason::FingerprintType { .. } => "fingerprint-type",
            Reason::FingerprintAngles { .. } => "fingerprint-angles",
            Reason::FingerprintCone { .. } => "fingerprint-cone",
            Reason::FingerprintLength { .. } => "fingerprint-length",
            Reason::TypeIiRigidity { .. } => "type-ii-rigidity",
        }
    }

    pub fn degree(&self) -> Option<u64> {
        match self {
            Reason::HolonomyField { .. } | Reason::SelfCover | Reason::DegreeBound { .. } => None,
            Reason::NotEquivalent => Some(1),
            Reason::RiemannHurwitz { degree }
            | Reason::ConeMass { degree }
            | Reason::ClassMatching { degree }
            | Reason::BalancedDegree { degree }
            | Reason::FingerprintType { degree, .. }
            | Reason::FingerprintAngles { degree, .. }
            | Reason::FingerprintCone { degree, .. }
            | Reason::FingerprintLength { degree, .. }
            | Reason::TypeIiRigidity { degree, .. } => Some(*degree),
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::HolonomyField { q_source, q_target } => {
                write!(f, "holonomy-field(Q={q_source} vs Q={q_target})")
            }
            Reason::SelfCover => f.write_str("self-cover(degree 1 only)"),
            Reason::NotEquivalent => f.write_str("not-equivalent(n=1)"),
            Reason::DegreeBound { max_degree, bound } => {
                write!(f, "degree-bound(n<={max_degree} by {bound:?})")
            }
            Reason::FingerprintType { degree, source_class, target_class }
            | Reason::FingerprintLength { degree, source_class, target_class }
            | Reason::TypeIiRigidity { degree, source_class, target_class } => write!(
                f,
                "{}(n={degree},{source_class}->{target_class})",
                self.filter()
            ),
            Reason::FingerprintAngles {
                degree,
                source_class,
                target_class,
                source_angles,
                target_angles,
            } => {
                let show = |v: &Vec<Angle>| {
                    v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ")
                };
                write!(
                    f,
                    "fingerprint-angles(n={degree},{source_class}->{target_class},{{{}}} vs {{{}}})",
                    show(source_angles),
                    show(target_angles)
                )
            }
            Reason::FingerprintCone { degree, source_class, target_class, multiplicity } => write!(
                f,
                "fingerprint-cone(n={degree},{source_class}->{target_class},m={multiplicity})"
            ),
            other => write!(f, "{}(n={})", other.filter(), other.degree().unwrap_or(0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Impossible { reasons: Vec<Reason> },
    InFamily { descriptors: Vec<CoverDescriptor> },
    Undecided { diagnostics: Vec<String> },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Impossible { .. } => "Impossible",
            Verdict::InFamily { .. } => "InFamily",
            Verdict::Undecided { .. } => "Undecided",
        }
    }

    pub fn reasons(&self) -> &[Reason] {
        match self {
            Verdict::Impossible { reasons } => reasons,
            _ => &[],
        }
    }

    pub fn has_filter(&self, name: &str) -> bool {
        self.reasons().iter().any(|r| r.filter() == name)
    }
}
