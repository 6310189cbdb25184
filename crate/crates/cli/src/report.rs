//! JSON payloads. Exact values are strings; floats appear only as `approx`
//! annotations rounded to 12 significant digits.

use std::collections::{BTreeMap, BTreeSet};

use billiard_covers::angle::Angle;
use billiard_covers::combinatorics::TriangleSignature;
use billiard_covers::covers::{CoverDescriptor, SearchReport, Verdict};
use billiard_covers::cyclotomic::RealCyclotomic;
use billiard_covers::error::Result;
use billiard_covers::fingerprint::{fingerprint, reconstruct_from_type2, trichotomy_case};
use billiard_covers::invariants::holonomy_field;
use billiard_covers::unfold::unfold;
use serde::Serialize;

pub const TOOL: &str = "bcovers";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Envelope<P: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub args: Vec<String>,
    pub payload: P,
}

pub fn round12(x: f64) -> f64 {
    format!("{:.11e}", x).parse().unwrap_or(x)
}

#[derive(Serialize)]
pub struct Exact {
    pub exact: String,
    pub approx: f64,
}

impl From<&RealCyclotomic> for Exact {
    fn from(x: &RealCyclotomic) -> Self {
        Exact {
            exact: x.to_string(),
            approx: round12(x.to_f64()),
        }
    }
}

#[derive(Serialize)]
pub struct ClassInfo {
    pub vertex: usize,
    pub entry: u64,
    pub angle: Angle,
    pub class_size: u64,
    pub cone_turns: u64,
    pub cone_angle: Angle,
    pub singular: bool,
}

#[derive(Serialize)]
pub struct Holonomy {
    pub normalized_conductor: u64,
    pub degree: u64,
}

#[derive(Serialize)]
pub struct Info {
    pub signature: String,
    pub entries: [u64; 3],
    pub canonical: [u64; 3],
    pub q: u64,
    pub classes: Vec<ClassInfo>,
    pub singular_classes: usize,
    pub genus: u64,
    pub vertices: u64,
    pub edges: u64,
    pub faces: u64,
    pub euler_characteristic: i64,
    pub area: Exact,
    pub isosceles: bool,
    pub apex: Option<usize>,
    pub right: bool,
    pub obtuse: Option<usize>,
    pub holonomy_field: Holonomy,
}

pub fn info(sig: &TriangleSignature) -> Result<Info> {
    let surface = unfold(sig, RealCyclotomic::one())?;
    let ea = surface.euler_and_area()?;
    let shape = sig.shape();
    let h = holonomy_field(sig);
    Ok(Info {
        signature: sig.to_string(),
        entries: sig.entries(),
        canonical: sig.canonical_key(),
        q: sig.q(),
        classes: (1..=3)
            .map(|i| ClassInfo {
                vertex: i,
                entry: sig.entry(i),
                angle: sig.angle(i),
                class_size: sig.class_size(i),
                cone_turns: sig.cone_turns(i),
                cone_angle: Angle::new(2 * sig.cone_turns(i) as i64, 1),
                singular: sig.is_singular(i),
            })
            .collect(),
        singular_classes: sig.singular_vertices().len(),
        genus: sig.genus(),
        vertices: ea.v,
        edges: ea.e,
        faces: ea.f,
        euler_characteristic: ea.chi,
        area: Exact::from(&ea.area),
        isosceles: shape.is_isosceles,
        apex: shape.apex_index,
        right: shape.is_right,
        obtuse: sig.obtuse_vertex(),
        holonomy_field: Holonomy {
            normalized_conductor: h.normalized_conductor,
            degree: h.degree,
        },
    })
}

#[derive(Serialize)]
pub struct FingerprintInfo {
    pub signature: String,
    pub vertex: usize,
    pub punctured: Vec<usize>,
    #[serde(rename = "type")]
    pub fp_type: String,
    pub angle_set: Vec<Angle>,
    pub cone_angle: Angle,
    pub length: Exact,
    pub shortest_targets: Vec<usize>,
    pub trichotomy_case: Option<String>,
    pub reconstructed: Option<[u64; 3]>,
}

pub fn fingerprint_info(
    sig: &TriangleSignature,
    vertex: usize,
    punctured: &BTreeSet<usize>,
) -> Result<FingerprintInfo> {
    let fp = fingerprint(sig, vertex, punctured, &RealCyclotomic::one())?;
    let reconstructed = match fp.angle_set.as_slice() {
        [t1, t2] => Some(reconstruct_from_type2(*t1, *t2)?.canonical_key()),
        _ => None,
    };
    Ok(FingerprintInfo {
        signature: sig.to_string(),
        vertex,
        punctured: punctured.iter().copied().collect(),
        fp_type: fp.fp_type.to_string(),
        angle_set: fp.angle_set.clone(),
        cone_angle: fp.cone_angle,
        length: Exact::from(&fp.length),
        shortest_targets: fp.shortest_targets.iter().copied().collect(),
        trichotomy_case: trichotomy_case(sig, vertex, &fp).map(|c| format!("{c:?}")),
        reconstructed,
    })
}

#[derive(Serialize)]
pub struct Row {
    pub source: String,
    pub target: String,
    pub verdict: &'static str,
    pub degree: Vec<u64>,
    pub kind: Vec<String>,
    pub reasons: Vec<String>,
    pub diagnostics: Vec<String>,
}

impl Row {
    pub fn new(source: &TriangleSignature, target: &TriangleSignature, v: &Verdict) -> Self {
        let (degree, kind, diagnostics) = match v {
            Verdict::InFamily { descriptors } => (
                descriptors.iter().map(|d| d.degree).collect(),
                descriptors.iter().map(|d| d.kind.to_string()).collect(),
                Vec::new(),
            ),
            Verdict::Undecided { diagnostics } => (Vec::new(), Vec::new(), diagnostics.clone()),
            Verdict::Impossible { .. } => (Vec::new(), Vec::new(), Vec::new()),
        };
        Row {
            source: source.to_string(),
            target: target.to_string(),
            verdict: v.label(),
            degree,
            kind,
            reasons: v.reasons().iter().map(|r| r.to_string()).collect(),
            diagnostics,
        }
    }
}

#[derive(Serialize)]
pub struct Search {
    pub qmax: u64,
    pub pairs: usize,
    pub in_family: usize,
    pub impossible: usize,
    pub undecided: usize,
    pub impossible_by_filter: BTreeMap<String, usize>,
    pub covers: Vec<CoverDescriptor>,
    pub rows: Vec<Row>,
}

pub fn search(r: &SearchReport) -> Search {
    Search {
        qmax: r.qmax,
        pairs: r.pairs,
        in_family: r.in_family,
        impossible: r.impossible,
        undecided: r.undecided,
        impossible_by_filter: r.impossible_by_filter.clone(),
        covers: r
            .in_family_rows()
            .flat_map(|row| match &row.verdict {
                Verdict::InFamily { descriptors } => descriptors.clone(),
                _ => Vec::new(),
            })
            .collect(),
        rows: r
            .rows
            .iter()
            .map(|row| Row::new(&row.source, &row.target, &row.verdict))
            .collect(),
    }
}

pub fn search_csv(r: &SearchReport) -> std::result::Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(["source", "target", "verdict", "degree", "kind", "reasons"])?;
    for row in &r.rows {
        let row = Row::new(&row.source, &row.target, &row.verdict);
        let join = |v: Vec<String>| v.join(";");
        w.write_record([
            row.source,
            row.target,
            row.verdict.to_string(),
            join(row.degree.iter().map(|d| d.to_string()).collect()),
            join(row.kind),
            join(if row.reasons.is_empty() { row.diagnostics } else { row.reasons }),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Serialize)]
pub struct Pair {
    pub source: String,
    pub target: String,
    pub feasible_degrees: Vec<u64>,
    pub verdict: Row,
    pub descriptors: Vec<CoverDescriptor>,
}
