use billiard_covers::angle::Angle;
use billiard_covers::cyclotomic::{cos_pi, sin_pi, Cyclotomic, RealCyclotomic};
use proptest::prelude::*;

fn element(n: u64) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((-5i64..=5, 0i64..40), 1..5).prop_map(move |terms| {
        terms.into_iter().fold(Cyclotomic::zero(), |acc, (c, k)| {
            acc.add_ref(&Cyclotomic::root_of_unity(n, k).scale_int(c))
        })
    })
}

fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    // third element lives in a subfield, so products exercise lifting
    (3u64..=120, 1u64..=4).prop_flat_map(|(n, k)| {
        let d = (1..=k).rev().find(|d| n % d == 0).unwrap_or(1);
        (element(n), element(n), element((n / d).max(1)))
    })
}

fn real_element() -> impl Strategy<Value = RealCyclotomic> {
    (3u64..=60, prop::collection::vec((-9i64..=9, 0i64..60), 1..6)).prop_map(|(n, terms)| {
        terms.into_iter().fold(RealCyclotomic::zero(), |acc, (c, k)| {
            &acc + &cos_pi(Angle::new(2 * k, n as i64)).scale_int(c)
        })
    })
}

/// Independent evaluation through the complex embedding.
fn float_eval(x: &RealCyclotomic) -> f64 {
    x.as_cyclotomic().to_complex_f64().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.sub_ref(&a), Cyclotomic::zero());
    }

    #[test]
    fn conjugation_fixes_real_elements(x in real_element()) {
        prop_assert_eq!(x.as_cyclotomic().conj(), x.as_cyclotomic().clone());
    }

    #[test]
    fn sign_agrees_with_float(x in real_element()) {
        let f = float_eval(&x);
        if f.abs() > 1e-6 {
            prop_assert_eq!(x.sign(), if f > 0.0 { 1 } else { -1 });
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn inverse_is_exact((a, _, _) in triple()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.mul_ref(&a.inv().unwrap()), Cyclotomic::one());
    }
}

#[test]
fn pythagorean_identity_up_to_q60() {
    for q in 1..=60i64 {
        for p in 0..2 * q {
            let r = Angle::new(p, q);
            let s = sin_pi(r);
            let c = cos_pi(r);
            assert_eq!(&s.square() + &c.square(), RealCyclotomic::one(), "{p}/{q}");
        }
    }
}

#[test]
fn spec_examples() {
    let z4 = Cyclotomic::root_of_unity(4, 1);
    assert_eq!(z4.mul_ref(&z4), Cyclotomic::from_integer(-1));
    let s = Cyclotomic::one()
        .add_ref(&Cyclotomic::root_of_unity(3, 1))
        .add_ref(&Cyclotomic::root_of_unity(3, 2));
    assert!(s.is_zero());
    assert_eq!(Cyclotomic::root_of_unity(3, 1).lift(12), Cyclotomic::root_of_unity(12, 4));
    assert_eq!(Cyclotomic::root_of_unity(3, 1).lift(12).conductor(), 12);
}
