use horikawa_core::charts::section_monomials;
use horikawa_core::classify::{enumerate, validate, Candidate, Validation};
use horikawa_core::cohomology::{cohomology, CechOracle, OracleField};
use horikawa_core::cover::invariants;
use horikawa_core::foliation::{analyze, FoliationRecipe};
use horikawa_core::lattice::{canonical_class, intersect, DivisorClass, SurfaceModel};
use proptest::prelude::*;

fn class() -> impl Strategy<Value = DivisorClass> {
    prop_oneof![
        (0u32..7, -8i64..=8, -20i64..=20).prop_map(|(d, a, b)| DivisorClass::hirzebruch(d, a, b)),
        (-12i64..=12).prop_map(DivisorClass::plane),
    ]
}

fn pair_on_fd() -> impl Strategy<Value = (DivisorClass, DivisorClass, DivisorClass)> {
    (0u32..6).prop_flat_map(|d| {
        let c = move || (-9i64..=9, -9i64..=9).prop_map(move |(a, b)| DivisorClass::hirzebruch(d, a, b));
        (c(), c(), c())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_is_symmetric_and_bilinear((x, y, z) in pair_on_fd(), k in -4i64..=4) {
        prop_assert_eq!(intersect(&x, &y).unwrap(), intersect(&y, &x).unwrap());
        let lhs = intersect(&(&x + &y.scale(k)), &z).unwrap();
        prop_assert_eq!(lhs, intersect(&x, &z).unwrap() + k * intersect(&y, &z).unwrap());
    }

    #[test]
    fn adjunction_parity(c in class()) {
        // D·(D - K) is even on every smooth surface
        let k = canonical_class(c.surface());
        prop_assert_eq!(intersect(&c, &(&c - &k)).unwrap() % 2, 0);
    }

    #[test]
    fn formula_matches_cech_in_both_characteristics(c in class()) {
        let formula = cohomology(&c).unwrap();
        let oracle = CechOracle::with_limit(64);
        prop_assert_eq!(oracle.compute(&c).unwrap(), formula);
        prop_assert_eq!(oracle.over(OracleField::Gf2).compute(&c).unwrap(), formula);
        let dual = &canonical_class(c.surface()) - &c;
        prop_assert_eq!(cohomology(&dual).unwrap(), formula.dual());
    }

    #[test]
    fn h0_counts_section_monomials(c in class()) {
        prop_assert_eq!(section_monomials(&c).len() as u64, cohomology(&c).unwrap().h0);
    }
}

#[test]
fn every_enumerated_datum_validates_to_itself() {
    for pg in 3..=40 {
        for h in enumerate(pg).unwrap() {
            match validate(Candidate::Image(h.image), &h.l) {
                Validation::Accept { datum } => assert_eq!(datum, h),
                other => panic!("{} {}: {other:?}", h.image, h.l),
            }
            let inv = invariants(&h.cover()).unwrap();
            assert_eq!((inv.ksq, inv.pg, inv.h01), (2 * pg as i64 - 4, pg, 0));
        }
    }
}

#[test]
fn swapped_rulings_on_f0_are_the_same_datum() {
    let l = DivisorClass::hirzebruch(0, 5, 3);
    assert!(validate(Candidate::Surface(SurfaceModel::Hirzebruch(0)), &l).is_accept());
}

#[test]
fn cone_exists_only_for_small_pg() {
    for pg in 3..=30u64 {
        let cones = enumerate(pg)
            .unwrap()
            .iter()
            .filter(|h| !h.image.is_smooth())
            .count();
        assert_eq!(cones, usize::from((4..=6).contains(&pg)), "p_g = {pg}");
    }
}

fn recipe() -> impl Strategy<Value = (u32, usize, usize)> {
    (prop_oneof![Just(0u32), Just(2), Just(4)], 0usize..12, 0usize..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The zeros found chart by chart account for the whole Chern count, and
    /// the divisor class does not depend on the case.
    #[test]
    fn recipe_zeros_exhaust_the_chern_count((d, ell, m) in recipe()) {
        let e = 2 * ell as i64 - 2 * m as i64 + 2;
        prop_assume!(ell + m > 0 && e >= 0 && e <= 5 * d as i64);
        let r = FoliationRecipe::with_defaults(d, ell, m, None).unwrap();
        let a = analyze(&r).unwrap();
        prop_assert!(a.additive);
        prop_assert_eq!(&a.report.divisor_class, &r.expected_class());
        prop_assert_eq!(a.report.total_multiplicity as i64, a.chern_count);
        prop_assert_eq!(a.chern_count, 20 * d as i64 + 20 * m as i64 - 8);
    }
}
