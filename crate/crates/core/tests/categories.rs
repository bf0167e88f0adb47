//! Transporter categories and the comparison of their subdivision with chain orbits.

mod common;

use spets::cat::{chain_orbit_poset, poset_isomorphism, subdivision_class_poset, transporter_category, GPoset};

#[test]
fn rank_one_transporter_category() {
    let poset = common::levi_poset("A1", 3, 2);
    let cat = transporter_category(&poset).unwrap();
    let (g, t) = (poset.top(), poset.minimal_levis()[0]);
    assert_eq!(cat.hom(t, g).len(), 2);
    assert_eq!(cat.hom(t, t).len(), 2);
    assert_eq!(cat.hom(g, g).len(), 2);
    assert!(cat.hom(g, t).is_empty());
    assert!(cat.is_ei());
}

#[test]
fn transporter_categories_are_ei() {
    for (t, ell, q) in common::TEST_COSETS {
        let poset = common::levi_poset(t, ell, q);
        let cat = transporter_category(&poset).unwrap();
        assert!(cat.is_ei(), "{t}");
        for x in 0..poset.len() {
            assert_eq!(cat.hom(x, x).len(), poset.normalizer(x).len(), "{t}: Aut of node {x}");
        }
    }
}

#[test]
fn subdivision_matches_chain_orbits() {
    for (t, ell, q, classes) in [("A1", 3, 2, 3), ("A2", 7, 2, 3), ("B2", 5, 2, 3), ("G2", 7, 2, 3), ("A2", 3, 4, 7)] {
        let poset = common::levi_poset(t, ell, q);
        let sub = subdivision_class_poset(&transporter_category(&poset).unwrap()).unwrap();
        let orbits = chain_orbit_poset(&GPoset::from_levi(&poset));
        assert_eq!(sub.classes.len(), classes, "{t} ell={ell}");
        assert_eq!(orbits.orbits.len(), classes, "{t} ell={ell}");
        let iso = poset_isomorphism(&sub.leq, &orbits.leq).unwrap_or_else(|| panic!("{t}: no isomorphism"));
        for i in 0..classes {
            for j in 0..classes {
                assert_eq!(sub.leq[i][j], orbits.leq[iso[i]][iso[j]]);
            }
        }
    }
}
