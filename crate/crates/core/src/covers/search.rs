//! Exhaustive classification of ordered pairs of triangular surfaces.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::construct::construct_family_map;
use super::family::{family_closure, lemma7_family, FamilyCover};
use super::filters::{filter_chain_with, FingerprintCache};
use super::{CoverDescriptor, CoverKind, Verdict};
use crate::combinatorics::TriangleSignature;
use crate::error::{Error, Result};
use crate::invariants::q_compatible;

type PairKey = ([u64; 3], [u64; 3]);

/// Builds and verifies every closure member with both surfaces at
/// `Q <= qmax` that `keep` accepts, grouped by canonical pair.
pub(crate) fn family_descriptors(
    qmax: u64,
    keep: impl Fn(&FamilyCover) -> bool + Sync,
) -> Result<BTreeMap<PairKey, Vec<CoverDescriptor>>> {
    let wanted: Vec<FamilyCover> = family_closure(qmax).into_iter().filter(|f| keep(f)).collect();
    let built: Vec<(PairKey, CoverDescriptor)> = wanted
        .par_iter()
        .map(|f| {
            let (a1, a2) = f.legs;
            let which = match f.kind {
                CoverKind::Equivalence => equivalence_side(a1, a2, &f.target)?,
                k => k,
            };
            let d = construct_family_map(a1, a2, f.kind, which)?.descriptor()?;
            Ok(((f.source.canonical_key(), f.target.canonical_key()), d))
        })
        .collect::<Result<_>>()?;
    let mut out: BTreeMap<PairKey, Vec<CoverDescriptor>> = BTreeMap::new();
    for (k, d) in built {
        let v = out.entry(k).or_default();
        if !v.iter().any(|e| e.degree == d.degree) {
            v.push(d);
        }
    }
    Ok(out)
}

/// Which reflection has `x` as its degree-1 source.
fn equivalence_side(a1: u64, a2: u64, x: &TriangleSignature) -> Result<CoverKind> {
    let fam = lemma7_family(a1, a2)?;
    if fam.degree1 == 1 && fam.x1.same_triangle(x) {
        Ok(CoverKind::F1)
    } else if fam.degree2 == 1 && fam.x2.same_triangle(x) {
        Ok(CoverKind::F2)
    } else {
        Err(Error::MapInconsistent(format!("{x} is not a degree-1 reflection")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub source: TriangleSignature,
    pub target: TriangleSignature,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub qmax: u64,
    pub pairs: usize,
    pub in_family: usize,
    pub impossible: usize,
    pub undecided: usize,
    /// For each filter, the number of impossible pairs where it fired.
    pub impossible_by_filter: BTreeMap<String, usize>,
    pub rows: Vec<SearchRow>,
}

impl SearchReport {
    pub fn in_family_rows(&self) -> impl Iterator<Item = &SearchRow> {
        self.rows
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::InFamily { .. }))
    }

    pub fn undecided_rows(&self) -> impl Iterator<Item = &SearchRow> {
        self.rows
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::Undecided { .. }))
    }
}

/// Every ordered pair `(A, B)` of canonical signatures with `Q <= qmax`,
/// `genus(A) >= 2` and compatible Q-values, in lexicographic order.
pub fn search(qmax: u64) -> Result<SearchReport> {
    let sigs = TriangleSignature::enumerate_canonical(qmax);
    let family = family_descriptors(qmax, |_| true)?;
    let cache = FingerprintCache::new();
    let pairs: Vec<(TriangleSignature, TriangleSignature)> = sigs
        .iter()
        .filter(|a| a.genus() >= 2)
        .flat_map(|a| {
            sigs.iter()
                .filter(move |b| q_compatible(a.q(), b.q()))
                .map(move |b| (*a, *b))
        })
        .collect();
    let rows: Vec<SearchRow> = pairs
        .par_iter()
        .map(|(a, b)| {
            let key = (a.canonical_key(), b.canonical_key());
            let descs = family.get(&key).map(Vec::as_slice).unwrap_or(&[]);
            let verdict = filter_chain_with(a, b, descs, &cache)?;
            Ok(SearchRow { source: *a, target: *b, verdict })
        })
        .collect::<Result<_>>()?;
    let mut report = SearchReport {
        qmax,
        pairs: rows.len(),
        in_family: 0,
        impossible: 0,
        undecided: 0,
        impossible_by_filter: BTreeMap::new(),
        rows,
    };
    for r in &report.rows {
        match &r.verdict {
            Verdict::InFamily { .. } => report.in_family += 1,
            Verdict::Undecided { .. } => report.undecided += 1,
            Verdict::Impossible { reasons } => {
                report.impossible += 1;
                let names: std::collections::BTreeSet<&str> =
                    reasons.iter().map(|x| x.filter()).collect();
                for name in names {
                    *report.impossible_by_filter.entry(name.to_string()).or_default() += 1;
                }
            }
        }
    }
    Ok(report)
}

/// `search` on a dedicated pool of `threads` workers.
pub fn search_with_threads(qmax: u64, threads: usize) -> Result<SearchReport> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::MapInconsistent(format!("thread pool: {e}")))?
        .install(|| search(qmax))
}
