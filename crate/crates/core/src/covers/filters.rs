//! Necessary conditions on a translation cover `A -> B`, applied in order:
//! holonomy field, degree bounds, class matching, balanced degree bound and
//! fingerprint comparison on every admissible ramification profile.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use super::family::translation_equivalent;
use super::{
    CoverDescriptor, DegreeBoundSource, Profile, ProfileEntry, Reason, TargetClass, Verdict,
};
use crate::combinatorics::TriangleSignature;
use crate::cyclotomic::RealCyclotomic;
use crate::error::Result;
use crate::fingerprint::{
    check_cover_fingerprints, fingerprint, reconstruct_from_type2, validate_punctures,
    CoverCompatibility, Fingerprint, FingerprintType,
};
use crate::invariants::q_compatible;
use crate::unfold::triangle_area;

/// Degrees `n` allowed by Riemann-Hurwitz and by cone mass. Genus-1 targets
/// are capped at 2; identical surfaces only allow 1.
pub fn feasible_degrees(a: &TriangleSignature, b: &TriangleSignature) -> BTreeSet<u64> {
    let (max, _) = degree_cap(a, b);
    (1..=max).filter(|&n| degree_reason(a, b, n).is_none()).collect()
}

fn degree_cap(a: &TriangleSignature, b: &TriangleSignature) -> (u64, DegreeBoundSource) {
    if a.same_triangle(b) {
        return (1, DegreeBoundSource::RiemannHurwitz);
    }
    let ea = 2 * a.genus() as i64 - 2;
    let eb = 2 * b.genus() as i64 - 2;
    if eb <= 0 {
        return (2, DegreeBoundSource::TorusTarget);
    }
    let rh = (ea / eb).max(0) as u64;
    let mb = b.singular_mass();
    let cm = a.singular_mass() / mb;
    if cm < rh {
        (cm, DegreeBoundSource::ConeMass)
    } else {
        (rh, DegreeBoundSource::RiemannHurwitz)
    }
}

fn degree_reason(a: &TriangleSignature, b: &TriangleSignature, n: u64) -> Option<Reason> {
    let ea = 2 * a.genus() as i64 - 2;
    let eb = 2 * b.genus() as i64 - 2;
    let r = ea - n as i64 * eb;
    if r < 0 || (n == 1 && r != 0) {
        return Some(Reason::RiemannHurwitz { degree: n });
    }
    let (ma, mb) = (a.singular_mass(), n * b.singular_mass());
    if ma < mb || (n == 1 && ma != mb) {
        return Some(Reason::ConeMass { degree: n });
    }
    None
}

/// No singular source class sends points to regular points.
pub fn profile_is_balanced(a: &TriangleSignature, profile: &[ProfileEntry]) -> bool {
    profile
        .iter()
        .all(|e| !a.is_singular(e.source_class) || e.target != TargetClass::Nonsingular)
}

/// Every way to send the points of each singular class of `a` to singular
/// points of `b` (local degree `t_a / t_b`) or to regular points (local
/// degree `t_a <= n`) so that each singular point of `b` has total
/// multiplicity `n`. Regular classes of `a` go to regular points.
pub fn class_matching(a: &TriangleSignature, b: &TriangleSignature, n: u64) -> Vec<Profile> {
    let bsing = b.singular_vertices();
    let need: Vec<u64> = bsing.iter().map(|&j| n * b.class_size(j)).collect();
    let classes: Vec<(usize, Vec<(TargetClass, u64)>)> = a
        .singular_vertices()
        .into_iter()
        .map(|i| {
            let tau = a.cone_turns(i);
            let mut opts: Vec<(TargetClass, u64)> = bsing
                .iter()
                .filter(|&&j| tau.is_multiple_of(b.cone_turns(j)) && tau / b.cone_turns(j) <= n)
                .map(|&j| (TargetClass::Class(j), tau / b.cone_turns(j)))
                .collect();
            if tau <= n {
                opts.push((TargetClass::Nonsingular, tau));
            }
            (i, opts)
        })
        .collect();
    let mut out = Vec::new();
    let mut acc = vec![0u64; bsing.len()];
    let mut cur = Vec::new();
    distribute(a, &bsing, &need, &classes, 0, &mut acc, &mut cur, &mut out);
    for p in &mut out {
        for i in 1..=3 {
            if !a.is_singular(i) {
                p.push(ProfileEntry {
                    source_class: i,
                    target: TargetClass::Nonsingular,
                    multiplicity: 1,
                    count: a.class_size(i),
                });
            }
        }
        p.sort();
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn distribute(
    a: &TriangleSignature,
    bsing: &[usize],
    need: &[u64],
    classes: &[(usize, Vec<(TargetClass, u64)>)],
    k: usize,
    acc: &mut Vec<u64>,
    cur: &mut Vec<ProfileEntry>,
    out: &mut Vec<Profile>,
) {
    if k == classes.len() {
        if acc.as_slice() == need {
            out.push(cur.clone());
        }
        return;
    }
    let (i, opts) = &classes[k];
    split(a, bsing, need, classes, k, *i, opts, 0, a.class_size(*i), acc, cur, out);
}

#[allow(clippy::too_many_arguments)]
fn split(
    a: &TriangleSignature,
    bsing: &[usize],
    need: &[u64],
    classes: &[(usize, Vec<(TargetClass, u64)>)],
    k: usize,
    i: usize,
    opts: &[(TargetClass, u64)],
    o: usize,
    left: u64,
    acc: &mut Vec<u64>,
    cur: &mut Vec<ProfileEntry>,
    out: &mut Vec<Profile>,
) {
    if left == 0 {
        distribute(a, bsing, need, classes, k + 1, acc, cur, out);
        return;
    }
    if o == opts.len() {
        return;
    }
    let (target, m) = opts[o];
    let slot = match target {
        TargetClass::Class(j) => bsing.iter().position(|&x| x == j),
        TargetClass::Nonsingular => None,
    };
    let max = match slot {
        Some(s) => left.min((need[s] - acc[s]) / m),
        None => left,
    };
    for c in (0..=max).rev() {
        if c > 0 {
            if let Some(s) = slot {
                acc[s] += c * m;
            }
            cur.push(ProfileEntry {
                source_class: i,
                target,
                multiplicity: m,
                count: c,
            });
        }
        split(a, bsing, need, classes, k, i, opts, o + 1, left - c, acc, cur, out);
        if c > 0 {
            cur.pop();
            if let Some(s) = slot {
                acc[s] -= c * m;
            }
        }
    }
}

type FpKey = ([u64; 3], usize, Vec<usize>);

/// Unit-scale fingerprints and surface areas, shared across threads.
#[derive(Debug, Default, Clone)]
pub struct FingerprintCache {
    fps: Arc<Mutex<HashMap<FpKey, Option<Fingerprint>>>>,
    areas: Arc<Mutex<HashMap<[u64; 3], RealCyclotomic>>>,
}

impl FingerprintCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `None` when the puncture set violates the hypotheses.
    pub fn fingerprint(
        &self,
        sig: &TriangleSignature,
        i: usize,
        punctured: &BTreeSet<usize>,
    ) -> Result<Option<Fingerprint>> {
        let key = (sig.entries(), i, punctured.iter().copied().collect());
        if let Some(f) = self.fps.lock().expect("cache lock").get(&key) {
            return Ok(f.clone());
        }
        let f = if validate_punctures(sig, i, punctured).is_err() {
            None
        } else {
            Some(fingerprint(sig, i, punctured, &RealCyclotomic::one())?)
        };
        self.fps.lock().expect("cache lock").insert(key, f.clone());
        Ok(f)
    }

    pub fn area(&self, sig: &TriangleSignature) -> RealCyclotomic {
        let key = sig.canonical_key();
        if let Some(a) = self.areas.lock().expect("cache lock").get(&key) {
            return a.clone();
        }
        let a = triangle_area(sig, &RealCyclotomic::one()).scale_int(2 * sig.q() as i64);
        self.areas.lock().expect("cache lock").insert(key, a.clone());
        a
    }
}

/// Every failed test for one profile; empty if it survives. Each matched
/// class pair reports its first failing fingerprint test.
fn profile_reasons(
    a: &TriangleSignature,
    b: &TriangleSignature,
    n: u64,
    profile: &[ProfileEntry],
    cache: &FingerprintCache,
) -> Result<Vec<Reason>> {
    let mut out = Vec::new();
    let mut to_regular = BTreeSet::new();
    let mut to_singular = BTreeSet::new();
    for e in profile.iter().filter(|e| a.is_singular(e.source_class)) {
        match e.target {
            TargetClass::Nonsingular => to_regular.insert(e.source_class),
            TargetClass::Class(_) => to_singular.insert(e.source_class),
        };
    }
    // a class split between both kinds of image cannot be punctured
    let punctures_ok = to_regular.is_disjoint(&to_singular);
    let apex = a.shape().apex_index;
    let mut seen = BTreeSet::new();
    for e in profile.iter().filter(|_| punctures_ok) {
        let TargetClass::Class(j) = e.target else {
            continue;
        };
        let (i, m) = (e.source_class, e.multiplicity);
        if !seen.insert((i, j, m)) {
            continue;
        }
        let Some(fa) = cache.fingerprint(a, i, &to_regular)? else {
            continue;
        };
        let Some(fb) = cache.fingerprint(b, j, &BTreeSet::new())? else {
            continue;
        };
        if let Some(r) = pair_reason(a, b, n, (i, j, m), &fa, &fb, apex == Some(i), cache)? {
            out.push(r);
        }
    }
    if profile_is_balanced(a, profile) && n > 2 {
        out.push(Reason::BalancedDegree { degree: n });
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn pair_reason(
    a: &TriangleSignature,
    b: &TriangleSignature,
    n: u64,
    (source_class, target_class, multiplicity): (usize, usize, u64),
    fa: &Fingerprint,
    fb: &Fingerprint,
    is_apex: bool,
    cache: &FingerprintCache,
) -> Result<Option<Reason>> {
    if fa.fp_type != fb.fp_type {
        return Ok(Some(Reason::FingerprintType { degree: n, source_class, target_class }));
    }
    if fa.angle_set != fb.angle_set {
        return Ok(Some(Reason::FingerprintAngles {
            degree: n,
            source_class,
            target_class,
            source_angles: fa.angle_set.clone(),
            target_angles: fb.angle_set.clone(),
        }));
    }
    if check_cover_fingerprints(fa, fb, is_apex, false).outcome == CoverCompatibility::Incompatible
    {
        return Ok(Some(Reason::FingerprintCone {
            degree: n,
            source_class,
            target_class,
            multiplicity,
        }));
    }
    // lengths agree once both surfaces carry the cover's scale:
    // L_a^2 / area_a == L_b^2 / (n area_b)
    let lhs = (&fa.length.square() * &cache.area(b)).scale_int(n as i64);
    let rhs = &fb.length.square() * &cache.area(a);
    if lhs != rhs {
        return Ok(Some(Reason::FingerprintLength { degree: n, source_class, target_class }));
    }
    if fa.fp_type == FingerprintType::II && !a.same_triangle(b) {
        let ra = reconstruct_from_type2(fa.angle_set[0], fa.angle_set[1])?;
        let rb = reconstruct_from_type2(fb.angle_set[0], fb.angle_set[1])?;
        if ra.same_triangle(a) && rb.same_triangle(b) {
            return Ok(Some(Reason::TypeIiRigidity { degree: n, source_class, target_class }));
        }
    }
    Ok(None)
}

/// Degrees and profiles that pass every filter, plus the reasons that
/// eliminated the rest.
#[derive(Debug, Clone, Default)]
struct Screening {
    survivors: BTreeMap<u64, Vec<Profile>>,
    reasons: Vec<Reason>,
}

fn screen(a: &TriangleSignature, b: &TriangleSignature, cache: &FingerprintCache) -> Result<Screening> {
    let mut s = Screening::default();
    if !q_compatible(a.q(), b.q()) {
        s.reasons.push(Reason::HolonomyField { q_source: a.q(), q_target: b.q() });
        return Ok(s);
    }
    if a.same_triangle(b) {
        s.reasons.push(Reason::SelfCover);
        return Ok(s);
    }
    let (max, bound) = degree_cap(a, b);
    s.reasons.push(Reason::DegreeBound { max_degree: max, bound });
    for n in 1..=max {
        if let Some(r) = degree_reason(a, b, n) {
            s.reasons.push(r);
            continue;
        }
        if n == 1 && !translation_equivalent(a, b) {
            s.reasons.push(Reason::NotEquivalent);
            continue;
        }
        let profiles = class_matching(a, b, n);
        if profiles.is_empty() {
            s.reasons.push(Reason::ClassMatching { degree: n });
            continue;
        }
        for p in profiles {
            let rs = profile_reasons(a, b, n, &p, cache)?;
            if rs.is_empty() {
                s.survivors.entry(n).or_default().push(p);
            }
            for r in rs {
                if !s.reasons.contains(&r) {
                    s.reasons.push(r);
                }
            }
        }
    }
    Ok(s)
}

/// The full chain on canonical or raw signatures. `family` lists the
/// verified family covers from `a` to `b` (empty if none).
pub fn filter_chain_with(
    a: &TriangleSignature,
    b: &TriangleSignature,
    family: &[CoverDescriptor],
    cache: &FingerprintCache,
) -> Result<Verdict> {
    let (a, b) = (a.canonical(), b.canonical());
    let s = screen(&a, &b, cache)?;
    let family_degrees: BTreeSet<u64> = family.iter().map(|d| d.degree).collect();
    let mut diagnostics = Vec::new();
    for (n, profiles) in &s.survivors {
        if !family_degrees.contains(n) {
            for p in profiles {
                diagnostics.push(format!("degree {n} survives with profile {}", show_profile(p)));
            }
        }
    }
    for n in &family_degrees {
        if !s.survivors.contains_key(n) {
            diagnostics.push(format!("family cover of degree {n} was rejected by a filter"));
        }
    }
    if !diagnostics.is_empty() {
        return Ok(Verdict::Undecided { diagnostics });
    }
    if family.is_empty() {
        Ok(Verdict::Impossible { reasons: s.reasons })
    } else {
        Ok(Verdict::InFamily { descriptors: family.to_vec() })
    }
}

/// The full chain, building any family covers from `a` to `b` explicitly.
pub fn filter_chain(a: &TriangleSignature, b: &TriangleSignature) -> Result<Verdict> {
    let qmax = a.q().max(b.q());
    let family = super::search::family_descriptors(qmax, |f| {
        f.source.same_triangle(a) && f.target.same_triangle(b)
    })?;
    let descs: Vec<CoverDescriptor> = family.into_values().flatten().collect();
    filter_chain_with(a, b, &descs, &FingerprintCache::new())
}

pub(crate) fn show_profile(p: &[ProfileEntry]) -> String {
    p.iter()
        .map(|e| format!("{}->{}^{}x{}", e.source_class, e.target, e.multiplicity, e.count))
        .collect::<Vec<_>>()
        .join(",")
}
