mod common;

use bmlab::arrow::{
    arrow_hom_count, codiagonal, fiber_at, join, pullback_hom, pushout_product, pushout_product_over,
    pushout_product_over_by_base_change, sliced_isomorphic, sphere, SlicedMap,
};
use bmlab::finset::{arrow_isomorphic, compose, FinMap, FinSet, Label};
use common::{arb_map, arb_map_to, Raw};
use num_bigint::BigUint;
use proptest::prelude::*;

/// A map over a base of size at most 2: total map plus anchors.
fn arb_sliced(base: usize) -> impl Strategy<Value = SlicedMap> {
    arb_map_to(base, 2).prop_flat_map(|anchor_cod| {
        arb_map_to(anchor_cod.dom().len(), 2).prop_map(move |total| {
            let anchor_dom = compose(&anchor_cod, &total).unwrap();
            SlicedMap::new(total, anchor_dom, anchor_cod.clone()).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn hom_count_matches_enumeration(w in arb_map(2), f in arb_map(2)) {
        prop_assert_eq!(arrow_hom_count(&w, &f), BigUint::from(common::arrow_hom_brute(&Raw::of(&w), &Raw::of(&f))));
    }

    #[test]
    fn constructions_match_the_oracles(u in arb_map(2), v in arb_map(2)) {
        prop_assert!(arrow_isomorphic(&pushout_product(&u, &v), &common::pushout_product(&Raw::of(&u), &Raw::of(&v)).to_map()));
        prop_assert!(arrow_isomorphic(&pullback_hom(&u, &v), &common::pullback_hom(&Raw::of(&u), &Raw::of(&v)).to_map()));
    }

    #[test]
    fn adjunction_counts(u in arb_map(2), v in arb_map(2), f in arb_map(2)) {
        let left = arrow_hom_count(&pushout_product(&u, &v), &f);
        let right = arrow_hom_count(&u, &pullback_hom(&v, &f));
        prop_assert_eq!(&left, &right);
        let (ru, rv, rf) = (Raw::of(&u), Raw::of(&v), Raw::of(&f));
        prop_assert_eq!(
            common::arrow_hom_brute(&common::pushout_product(&ru, &rv), &rf),
            common::arrow_hom_brute(&ru, &common::pullback_hom(&rv, &rf))
        );
    }

    #[test]
    fn pushout_product_is_symmetric(u in arb_map(3), v in arb_map(3)) {
        prop_assert!(arrow_isomorphic(&pushout_product(&u, &v), &pushout_product(&v, &u)));
    }

    #[test]
    fn absorption(u in arb_map(3), v in arb_map(3), f in arb_map(3)) {
        if u.is_iso() {
            prop_assert!(pushout_product(&u, &v).is_iso());
        }
        if v.is_iso() || f.is_iso() {
            prop_assert!(pullback_hom(&v, &f).is_iso());
        }
    }

    #[test]
    fn fibers_of_pushout_products_are_joins(u in arb_map(3), v in arb_map(3)) {
        let p = pushout_product(&u, &v);
        for b in 0..u.cod().len() {
            for t in 0..v.cod().len() {
                let point = Label::pair(u.cod().label(b).clone(), v.cod().label(t).clone());
                let i = p.cod().position(&point).unwrap();
                prop_assert_eq!(fiber_at(&p, i).len(), join(&fiber_at(&u, b), &fiber_at(&v, t)).len());
            }
        }
    }

    #[test]
    fn relative_product_agrees_with_base_change((base, u, v) in (0usize..=2).prop_flat_map(|b| (Just(b), arb_sliced(b), arb_sliced(b)))) {
        let b = FinSet::canonical(base);
        let direct = pushout_product_over(&b, &u, &v).unwrap();
        let changed = pushout_product_over_by_base_change(&b, &u, &v).unwrap();
        prop_assert!(sliced_isomorphic(&direct, &changed));
    }

    #[test]
    fn over_the_point_is_absolute(u in arb_map(2), v in arb_map(2)) {
        let pt = FinSet::terminal();
        let r = pushout_product_over(&pt, &SlicedMap::over_terminal(&u), &SlicedMap::over_terminal(&v)).unwrap();
        prop_assert!(arrow_isomorphic(r.total(), &pushout_product(&u, &v)));
    }

    #[test]
    fn codiagonal_is_onto_and_iso_exactly_for_epis(u in arb_map(3)) {
        let c = codiagonal(&u);
        prop_assert!(c.is_surjective());
        prop_assert_eq!(c.is_iso(), u.is_surjective());
    }
}

#[test]
fn joins_and_spheres() {
    for a in 0..=3 {
        for b in 0..=3 {
            let j = join(&FinSet::canonical(a), &FinSet::canonical(b));
            let expected = match (a, b) {
                (0, _) => b,
                (_, 0) => a,
                _ => 1,
            };
            assert_eq!(j.len(), expected, "join of sizes {a}, {b}");
        }
    }
    assert_eq!(sphere(-1).unwrap().len(), 0);
    assert_eq!(sphere(0).unwrap().len(), 2);
    for n in 1..=4 {
        assert_eq!(sphere(n).unwrap().len(), 1);
    }
    assert!(sphere(-2).is_err());
    let s0 = FinMap::to_terminal(&sphere(0).unwrap());
    let u = FinMap::identity(&FinSet::canonical(2));
    assert!(pushout_product(&u, &s0).is_iso());
}
