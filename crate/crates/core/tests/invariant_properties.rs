use billiard_covers::angle::Angle;
use billiard_covers::combinatorics::TriangleSignature;
use billiard_covers::cyclotomic::{cos_pi, RealCyclotomic};
use billiard_covers::invariants::{
    j_invariant, j_invariant_of, real_subfield_oracle, same_holonomy, j_compare, q_compatible,
};
use billiard_covers::plane::Point;
use billiard_covers::unfold::unfold;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_real(rng: &mut ChaCha8Rng, q: u64) -> RealCyclotomic {
    let a = RealCyclotomic::from_ratio(rng.gen_range(-20..=20), rng.gen_range(1..=7));
    let k = rng.gen_range(0..2 * q as i64);
    let b = cos_pi(Angle::new(k, q as i64)).scale_int(rng.gen_range(-3..=3));
    &a + &b
}

#[test]
fn translating_copies_leaves_j_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for sig in TriangleSignature::enumerate_canonical(20) {
        let base = unfold(&sig, RealCyclotomic::one()).unwrap();
        let j0 = j_invariant_of(&base);
        assert!(j0.is_antisymmetric(), "{sig}");
        for _ in 0..20 {
            let mut x = base.clone();
            for c in &mut x.copies {
                let t = Point::new(random_real(&mut rng, sig.q()), random_real(&mut rng, sig.q()));
                c.vertices = c.vertices.clone().map(|v| v.add(&t));
            }
            assert_eq!(j_invariant_of(&x).lift(j0.conductor()), j0, "{sig}");
        }
    }
}

#[test]
fn j_scales_quadratically() {
    for sig in TriangleSignature::enumerate_canonical(12) {
        let j1 = j_invariant(&sig, RealCyclotomic::one()).unwrap();
        for (p, q) in [(2, 1), (3, 5), (7, 3)] {
            let jc = j_invariant(&sig, RealCyclotomic::from_ratio(p, q)).unwrap();
            let c2 = BigRational::new((p * p).into(), (q * q).into());
            assert!(j_compare(&jc, &j1, &c2), "{sig}");
            assert!(jc.is_antisymmetric());
        }
    }
}

#[test]
fn holonomy_matches_oracle_on_full_grid() {
    let mut equal = 0;
    for m in 3..=200u64 {
        for n in 3..=200u64 {
            let s = same_holonomy(m, n);
            assert_eq!(s, real_subfield_oracle(m, n), "({m}, {n})");
            assert_eq!(s, q_compatible(m, n), "({m}, {n})");
            equal += s as u32;
        }
    }
    assert!(equal > 198);
    assert!(real_subfield_oracle(5, 10));
    assert!(!real_subfield_oracle(8, 16));
    assert!(!real_subfield_oracle(12, 24));
}
