//! One PASS/FAIL line per acceptance criterion. Tolerance is exact equality
//! throughout; runtime targets are reported, not enforced.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use billiard_covers::angle::Angle;
use billiard_covers::combinatorics::TriangleSignature;
use billiard_covers::covers::*;
use billiard_covers::cyclotomic::{cos_pi, sin_pi, Cyclotomic, RealCyclotomic};
use billiard_covers::error::Error;
use billiard_covers::fingerprint::{
    check_cover_fingerprints, fingerprint, reconstruct_from_type2, trichotomy_case,
    validate_punctures, CoverCompatibility, FingerprintType,
};
use billiard_covers::invariants::{
    j_compare, j_invariant, j_invariant_of, real_subfield_oracle, same_holonomy,
};
use billiard_covers::plane::Point;
use billiard_covers::unfold::unfold;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, runtime target in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn sig(a: [u64; 3]) -> TriangleSignature {
    TriangleSignature::from_array(a).unwrap()
}

fn none() -> BTreeSet<usize> {
    BTreeSet::new()
}

fn err(e: Error) -> String {
    e.to_string()
}

fn combinatorics_oracle() -> Outcome {
    let sigs = TriangleSignature::enumerate_canonical(30);
    for s in &sigs {
        let x = unfold(s, RealCyclotomic::one()).map_err(err)?;
        let records = x.traverse_vertex_classes().map_err(err)?;
        for r in &records {
            let i = r.vertex_index;
            let g = s.entry(i).gcd(&s.q());
            ensure!(r.points == g && s.class_size(i) == g, "{s} v{i}: {} points, gcd {g}", r.points);
            let turns = s.entry(i) / g;
            ensure!(
                r.cone_turns.iter().all(|&t| t == turns) && s.cone_turns(i) == turns,
                "{s} v{i}: turns {:?} vs {turns}",
                r.cone_turns
            );
            ensure!(s.is_singular(i) == (turns > 1), "{s} v{i}: singular flag");
        }
        let ea = x.euler_and_area().map_err(err)?;
        ensure!(ea.chi == 2 - 2 * s.genus() as i64, "{s}: chi {} genus {}", ea.chi, s.genus());
        let sum_g: u64 = (1..=3).map(|i| s.entry(i).gcd(&s.q())).sum();
        ensure!(2 * s.genus() == 2 + s.q() - sum_g, "{s}: genus formula");
    }
    Ok(format!("{} signatures", sigs.len()))
}

fn genus_one_census() -> Outcome {
    let found: Vec<[u64; 3]> = TriangleSignature::enumerate_canonical(30)
        .into_iter()
        .filter(|s| s.genus() == 1)
        .map(|s| s.canonical_key())
        .collect();
    let mut expected = vec![sig([1, 1, 1]), sig([1, 1, 2]), sig([1, 2, 3])]
        .into_iter()
        .map(|s| s.canonical_key())
        .collect::<Vec<_>>();
    expected.sort();
    let mut sorted = found.clone();
    sorted.sort();
    ensure!(sorted == expected, "genus 1: {found:?}");
    Ok(format!("{found:?}"))
}

fn dossier_345() -> Outcome {
    let s = sig([3, 4, 5]);
    ensure!(s.genus() == 3, "genus {}", s.genus());
    let singular = s.singular_vertices();
    ensure!(singular.len() == 1, "singular classes {singular:?}");
    let v = singular[0];
    ensure!(s.class_size(v) == 1 && s.cone_turns(v) == 5, "cone angle {}·2pi", s.cone_turns(v));
    let fp = fingerprint(&s, v, &none(), &RealCyclotomic::one()).map_err(err)?;
    ensure!(fp.cone_angle == Angle::new(10, 1), "fingerprint cone {}", fp.cone_angle);
    ensure!(fp.fp_type == FingerprintType::II, "type {:?}", fp.fp_type);
    ensure!(fp.angle_set == vec![Angle::new(1, 3), Angle::new(1, 2)], "angles {:?}", fp.angle_set);
    let r = reconstruct_from_type2(fp.angle_set[0], fp.angle_set[1]).map_err(err)?;
    ensure!(r.canonical_key() == [3, 4, 5], "reconstructed {r}");
    Ok(format!("genus 3, v{v} cone 10pi, Type II {{pi/3, pi/2}}, roundtrip (3,4,5)"))
}

fn coprime_legs(max_sum: u64) -> Vec<(u64, u64)> {
    (3..=max_sum)
        .flat_map(|s| (1..s).map(move |a1| (a1, s - a1)))
        .filter(|(a1, a2)| a1.gcd(a2) == 1)
        .collect()
}

/// Fingerprints of every matched singular pair of a reflection map, with the
/// source at the cover's scale and regular images punctured.
fn reflection_fingerprints(m: &CoverMap, scale: &RealCyclotomic) -> Result<(usize, usize), String> {
    let d = m.descriptor().map_err(err)?;
    let x = d.source;
    let y = d.target;
    let mut to_regular = BTreeSet::new();
    let mut to_singular = BTreeSet::new();
    for e in d.ramification_profile.iter().filter(|e| x.is_singular(e.source_class)) {
        match e.target {
            TargetClass::Nonsingular => to_regular.insert(e.source_class),
            TargetClass::Class(_) => to_singular.insert(e.source_class),
        };
    }
    ensure!(to_regular.is_disjoint(&to_singular), "{x}: class split between images");
    let (mut checked, mut skipped) = (0, 0);
    let pairs: BTreeSet<(usize, usize)> = d
        .ramification_profile
        .iter()
        .filter_map(|e| match e.target {
            TargetClass::Class(j) if y.is_singular(j) => Some((e.source_class, j)),
            _ => None,
        })
        .collect();
    for (i, j) in pairs {
        if validate_punctures(&x, i, &to_regular).is_err() {
            skipped += 1;
            continue;
        }
        let fx = fingerprint(&x, i, &to_regular, scale).map_err(err)?;
        let fy = fingerprint(&y, j, &none(), &RealCyclotomic::one()).map_err(err)?;
        let apex = x.shape().apex_index == Some(i);
        let c = check_cover_fingerprints(&fx, &fy, apex, true);
        ensure!(
            c.outcome != CoverCompatibility::Incompatible && c.length_compared,
            "{x} v{i} -> {y} v{j}: {:?} vs {:?}",
            fx,
            fy
        );
        checked += 1;
    }
    Ok((checked, skipped))
}

fn lemma7_verification() -> Outcome {
    let legs = coprime_legs(20);
    let (mut maps, mut fp_checked, mut fp_skipped) = (0, 0, 0);
    for &(a1, a2) in &legs {
        let fam = lemma7_family(a1, a2).map_err(err)?;
        ensure!((fam.degree1 == 2) == (a1 % 2 == 1), "({a1},{a2}) degree1 {}", fam.degree1);
        ensure!((fam.degree2 == 2) == (a2 % 2 == 1), "({a1},{a2}) degree2 {}", fam.degree2);
        ensure!(fam.degree1 == 2 || fam.degree2 == 2, "({a1},{a2}) no degree-2 reflection");
        let qy = fam.y.q() as i64;
        for (kind, leg) in [(CoverKind::F1, a1), (CoverKind::F2, a2)] {
            let m = construct_lemma7_map(a1, a2, kind).map_err(err)?;
            verify_map(&m).map_err(err)?;
            let n = BigRational::from_integer(BigInt::from(m.degree));
            let (x, y) = (m.source.unfolded(), m.target.unfolded());
            ensure!(
                j_compare(&j_invariant_of(x), &j_invariant_of(y), &n),
                "({a1},{a2}) {kind}: J"
            );
            let ax = x.euler_and_area().map_err(err)?.area;
            let ay = y.euler_and_area().map_err(err)?.area;
            ensure!(ax == ay.scale_int(m.degree as i64), "({a1},{a2}) {kind}: area");
            let scale = sin_pi(Angle::new(leg as i64, qy)).inv().map_err(err)?;
            let (c, s) = reflection_fingerprints(&m, &scale)?;
            fp_checked += c;
            fp_skipped += s;
            maps += 1;
        }
    }
    ensure!(fp_checked > 0, "no fingerprint pair checked");
    Ok(format!(
        "{} leg pairs, {maps} maps verified, {fp_checked} fingerprint pairs compatible, {fp_skipped} outside puncture hypotheses",
        legs.len()
    ))
}

fn classification() -> Outcome {
    let r = search(24).map_err(err)?;
    ensure!(r.undecided == 0, "{} undecided: {:?}", r.undecided, r.undecided_rows().next());
    let closure: BTreeMap<([u64; 3], [u64; 3]), BTreeSet<u64>> = family_closure(24)
        .into_iter()
        .filter(|f| f.source.genus() >= 2)
        .fold(BTreeMap::new(), |mut acc, f| {
            acc.entry((f.source.canonical_key(), f.target.canonical_key()))
                .or_insert_with(BTreeSet::new)
                .insert(f.degree);
            acc
        });
    let mut found = BTreeMap::new();
    for row in r.in_family_rows() {
        let Verdict::InFamily { descriptors } = &row.verdict else {
            unreachable!()
        };
        for d in descriptors {
            ensure!(
                d.satisfies_riemann_hurwitz() && d.satisfies_cone_relation(),
                "{} -> {}: descriptor bookkeeping",
                row.source,
                row.target
            );
        }
        let degrees: BTreeSet<u64> = descriptors.iter().map(|d| d.degree).collect();
        found.insert((row.source.canonical_key(), row.target.canonical_key()), degrees);
    }
    ensure!(
        found == closure,
        "in-family {} pairs vs closure {} pairs",
        found.len(),
        closure.len()
    );
    Ok(format!(
        "{} pairs: {} in family = closure, {} impossible, 0 undecided",
        r.pairs, r.in_family, r.impossible
    ))
}

/// Q(zeta_m) = Q(zeta_n) iff both contain the same roots of unity.
fn roots_of_unity(m: u64) -> u64 {
    m.lcm(&2)
}

fn number_theory() -> Outcome {
    let mut equal = 0;
    for m in 3..=200u64 {
        for n in 3..=200u64 {
            let s = same_holonomy(m, n);
            ensure!(s == real_subfield_oracle(m, n), "({m},{n}) vs real_subfield_oracle");
            ensure!(s == (roots_of_unity(m) == roots_of_unity(n)), "({m},{n}) vs roots of unity");
            equal += s as u32;
        }
    }
    ensure!(same_holonomy(5, 10), "(5,10)");
    ensure!(!same_holonomy(8, 16), "(8,16)");
    ensure!(!same_holonomy(12, 24), "(12,24)");
    Ok(format!("198x198 grid, {equal} equal pairs; (5,10) equal, (8,16) and (12,24) unequal"))
}

fn paper_negatives() -> Outcome {
    let mut lines = Vec::new();
    let v = filter_chain(&sig([1, 3, 6]), &sig([2, 3, 5])).map_err(err)?;
    ensure!(matches!(v, Verdict::Impossible { .. }), "(1,3,6)->(2,3,5): {}", v.label());
    ensure!(
        v.reasons().iter().any(|r| matches!(
            r,
            Reason::FingerprintAngles { degree: 3, source_angles, target_angles, .. }
                if source_angles == &vec![Angle::new(6, 5)] && target_angles == &vec![Angle::new(3, 5)]
        )),
        "(1,3,6)->(2,3,5): {:?}",
        v.reasons()
    );
    lines.push("(1,3,6)->(2,3,5) fingerprint-angles");
    for a in [sig([2, 5, 5]), sig([1, 1, 10])] {
        let v = filter_chain(&a, &sig([3, 4, 5])).map_err(err)?;
        ensure!(matches!(v, Verdict::Impossible { .. }), "{a}->(3,4,5): {}", v.label());
        ensure!(
            v.has_filter("fingerprint-type") || v.has_filter("type-ii-rigidity"),
            "{a}->(3,4,5): {:?}",
            v.reasons()
        );
    }
    lines.push("(2,5,5),(1,1,10)->(3,4,5) fingerprint-type");
    let v = filter_chain(&sig([1, 1, 28]), &sig([3, 5, 7])).map_err(err)?;
    ensure!(matches!(v, Verdict::Impossible { .. }), "(1,1,28)->(3,5,7): {}", v.label());
    ensure!(
        feasible_degrees(&sig([1, 1, 28]), &sig([3, 5, 7])).contains(&4),
        "degree 4 not feasible"
    );
    ensure!(
        v.reasons().contains(&Reason::BalancedDegree { degree: 4 }),
        "(1,1,28)->(3,5,7): {:?}",
        v.reasons()
    );
    lines.push("(1,1,28)->(3,5,7) balanced-degree n=4");
    Ok(lines.join("; "))
}

fn random_cyclotomic(rng: &mut ChaCha8Rng, n: u64) -> Cyclotomic {
    (0..4).fold(Cyclotomic::zero(), |acc, _| {
        let c = Cyclotomic::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        acc.add_ref(&c.mul_ref(&Cyclotomic::root_of_unity(n, rng.gen_range(0..n as i64))))
    })
}

fn property_summary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut field_cases = 0;
    for n in [5u64, 7, 8, 12, 15, 24, 30] {
        for _ in 0..20 {
            let (a, b, c) = (
                random_cyclotomic(&mut rng, n),
                random_cyclotomic(&mut rng, n),
                random_cyclotomic(&mut rng, n),
            );
            ensure!(a.mul_ref(&b).mul_ref(&c) == a.mul_ref(&b.mul_ref(&c)), "associativity in Q(zeta_{n})");
            ensure!(
                a.mul_ref(&b.add_ref(&c)) == a.mul_ref(&b).add_ref(&a.mul_ref(&c)),
                "distributivity in Q(zeta_{n})"
            );
            if !a.is_zero() {
                ensure!(a.mul_ref(&a.inv().map_err(err)?) == Cyclotomic::one(), "inverse in Q(zeta_{n})");
            }
            field_cases += 1;
        }
    }
    for q in 1..=30i64 {
        for k in 0..2 * q {
            let t = Angle::new(k, q);
            let (c, s) = (cos_pi(t), sin_pi(t));
            ensure!(&c.square() + &s.square() == RealCyclotomic::one(), "cos^2+sin^2 at {t}");
        }
    }
    for s in TriangleSignature::enumerate_canonical(12) {
        let x = unfold(&s, RealCyclotomic::one()).map_err(err)?;
        let j0 = j_invariant_of(&x);
        ensure!(j0.is_antisymmetric(), "{s}: J antisymmetry");
        let mut moved = x.clone();
        for c in &mut moved.copies {
            let t = Point::new(
                RealCyclotomic::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                cos_pi(Angle::new(rng.gen_range(0..24), s.q() as i64)),
            );
            c.vertices = c.vertices.clone().map(|v| v.add(&t));
        }
        ensure!(j_invariant_of(&moved).lift(j0.conductor()) == j0, "{s}: J translation");
        let j3 = j_invariant(&s, RealCyclotomic::from_ratio(3, 2)).map_err(err)?;
        let nine_quarters = BigRational::new(9.into(), 4.into());
        ensure!(j_compare(&j3, &j0, &nine_quarters), "{s}: J scaling");
    }
    let scale = &RealCyclotomic::from_ratio(5, 3) * &sin_pi(Angle::new(2, 9));
    let mut trichotomy = 0;
    for s in TriangleSignature::enumerate_canonical(30) {
        for i in 1..=3 {
            match fingerprint(&s, i, &none(), &RealCyclotomic::one()) {
                Ok(fp) => {
                    ensure!(trichotomy_case(&s, i, &fp).is_some(), "{s} v{i}: trichotomy");
                    trichotomy += 1;
                    if s.q() <= 12 {
                        let g = fingerprint(&s, i, &none(), &scale).map_err(err)?;
                        ensure!(g.angle_set == fp.angle_set, "{s} v{i}: scale invariance");
                        ensure!(g.length == &fp.length * &scale, "{s} v{i}: length scaling");
                    }
                }
                Err(Error::NoSingularTarget) => ensure!(s.genus() == 1, "{s}: no target"),
                Err(e) => return Err(format!("{s} v{i}: {e}")),
            }
        }
    }
    Ok(format!(
        "{field_cases} field axiom cases, J invariance Q<=12, {trichotomy} trichotomy vertices Q<=30; CLI determinism and JSON round-trips in the bcovers tests"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("combinatorics oracle, Q <= 30", 30, combinatorics_oracle),
        ("genus-1 census", 30, genus_one_census),
        ("X(3,4,5) dossier", 30, dossier_345),
        ("reflection family, a1+a2 <= 20", 120, lemma7_verification),
        ("classification, Qmax = 24", 300, classification),
        ("holonomy fields, 3 <= m,n <= 200", 10, number_theory),
        ("cited negatives", 60, paper_negatives),
        ("property suites", 120, property_summary),
    ];
    let mut failed = 0;
    for (k, (name, target, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let timing = format!("{:.1}s, target < {}s", elapsed.as_secs_f64(), target);
        let slow = if elapsed > Duration::from_secs(*target) { " (over target)" } else { "" };
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{timing}]{slow}", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e} [{timing}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
