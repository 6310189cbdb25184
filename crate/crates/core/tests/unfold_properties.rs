use billiard_covers::combinatorics::TriangleSignature;
use billiard_covers::cyclotomic::RealCyclotomic;
use billiard_covers::tiling::{Tiling, check_gluing};
use billiard_covers::unfold::{triangle_area, unfold};

#[test]
fn traversal_matches_class_formulas_up_to_q30() {
    let sigs = TriangleSignature::enumerate_canonical(30);
    assert!(sigs.len() > 300);
    for sig in sigs {
        let x = unfold(&sig, RealCyclotomic::one()).unwrap();
        assert_eq!(x.tile_count() as u64, 2 * sig.q());
        let records = x.traverse_vertex_classes().unwrap();
        for (rec, class) in records.iter().zip(sig.vertex_classes()) {
            assert_eq!(rec.points, class.class_size, "{sig}");
            assert!(rec.cone_turns.iter().all(|&t| t == class.cone_turns), "{sig}");
            assert_eq!(rec.cone_turns.iter().any(|&t| t > 1), class.singular, "{sig}");
        }
        let ea = x.euler_and_area().unwrap();
        assert_eq!(ea.genus, sig.genus(), "{sig}");
        assert_eq!(ea.f, 2 * sig.q());
        assert_eq!(ea.e, 3 * sig.q());
    }
}

#[test]
fn gluing_is_a_translation_involution() {
    for sig in TriangleSignature::enumerate_canonical(18) {
        let x = unfold(&sig, RealCyclotomic::one()).unwrap();
        assert_eq!(check_gluing(&x), Ok(()), "{sig}");
        for t in 0..x.tile_count() {
            for s in 1..=3 {
                let (u, r) = x.partner(t, s);
                assert_eq!(x.partner(u, r), (t, s));
            }
        }
        let ea = x.euler_and_area().unwrap();
        assert_eq!(ea.area, triangle_area(&sig, &RealCyclotomic::one()).scale_int(2 * sig.q() as i64));
    }
}
