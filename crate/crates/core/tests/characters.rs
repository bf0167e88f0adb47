//! Character degrees against an independent constraint oracle and frozen fixtures.

mod common;

use std::collections::BTreeSet;

use spets::chars::{character_degrees, irr_defect_count};
use spets::cli::named_group;
use spets::dade::{relative_weyl_group, PairUniverse};
use spets::refl::FiniteGroup;

/// Every degree multiset with `count` entries, `linear` of them equal to 1, the
/// rest > 1 dividing `order`, and squares summing to `order`.
fn candidate_multisets(order: u64, count: usize, linear: usize) -> Vec<Vec<u64>> {
    let divisors: Vec<u64> = (2..order).filter(|d| order.is_multiple_of(*d) && d * d < order).collect();
    let mut out = Vec::new();
    fn go(rest: u64, slots: usize, min_idx: usize, divs: &[u64], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in min_idx..divs.len() {
            let sq = divs[i] * divs[i];
            if sq * slots as u64 > rest {
                break;
            }
            cur.push(divs[i]);
            go(rest - sq, slots - 1, i, divs, cur, out);
            cur.pop();
        }
    }
    if linear as u64 > order {
        return out;
    }
    let mut cur = vec![1; linear];
    go(order - linear as u64, count - linear, 0, &divisors, &mut cur, &mut out);
    out
}

fn derived_subgroup_order(g: &FiniteGroup) -> usize {
    let n = g.order();
    let comms: BTreeSet<usize> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b)))
        .collect();
    g.generated_by(&comms.into_iter().collect::<Vec<_>>()).len()
}

fn check_constraints(g: &FiniteGroup, what: &str) -> Vec<u32> {
    let degrees = character_degrees(g).unwrap();
    let order = g.order() as u64;
    assert_eq!(degrees.degrees.iter().map(|&d| u64::from(d).pow(2)).sum::<u64>(), order, "{what}: sum of squares");
    assert_eq!(degrees.class_count(), g.conjugacy_classes().len(), "{what}: class count");
    let linear = g.order() / derived_subgroup_order(g);
    assert_eq!(degrees.degrees.iter().filter(|&&d| d == 1).count(), linear, "{what}: linear characters");
    assert!(degrees.degrees.iter().all(|&d| order.is_multiple_of(u64::from(d))), "{what}: divisibility");
    degrees.degrees
}

#[test]
fn degrees_are_forced_by_the_constraints() {
    for name in ["C1", "C2", "C6", "S3", "D8", "D10", "D12", "S4"] {
        let g = named_group(name).unwrap();
        let got = check_constraints(&g, name);
        let linear = g.order() / derived_subgroup_order(&g);
        let candidates = candidate_multisets(g.order() as u64, g.conjugacy_classes().len(), linear);
        assert_eq!(candidates.len(), 1, "{name}: constraints do not pin the degrees");
        assert_eq!(got.iter().map(|&d| u64::from(d)).collect::<Vec<_>>(), candidates[0], "{name}");
    }
}

#[test]
fn frozen_fixtures() {
    let text = std::fs::read_to_string(common::fixture("character_degrees.json")).unwrap();
    let table: std::collections::BTreeMap<String, Vec<u32>> = serde_json::from_str(&text).unwrap();
    assert!(table.len() >= 4);
    for (name, expected) in table {
        let g = named_group(&name).unwrap();
        assert_eq!(check_constraints(&g, &name), expected, "{name}");
    }
}

#[test]
fn weyl_groups_satisfy_the_constraints() {
    for t in ["A1", "A2", "A3", "B2", "B3", "G2"] {
        let c = common::coset(t);
        check_constraints(c.group(), t);
    }
}

#[test]
fn relative_weyl_groups_of_the_test_cosets() {
    let mut seen = 0;
    for (t, ell, q) in common::TEST_COSETS {
        let poset = common::levi_poset(t, ell, q);
        let uni = PairUniverse::principal(&poset).unwrap();
        for p in uni.all_pairs(&poset) {
            let h = relative_weyl_group(&poset, &uni, p, None).unwrap();
            check_constraints(&h, &format!("{t} pair {p:?}"));
            seen += 1;
        }
    }
    assert!(seen >= 5);
}

#[test]
fn defect_counts() {
    let s3 = character_degrees(&named_group("S3").unwrap()).unwrap();
    assert_eq!(irr_defect_count(&s3, 3).unwrap().into_iter().collect::<Vec<_>>(), vec![(1, 3)]);
    assert_eq!(irr_defect_count(&s3, 2).unwrap().into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    let d8 = character_degrees(&named_group("D8").unwrap()).unwrap();
    assert_eq!(irr_defect_count(&d8, 2).unwrap().into_iter().collect::<Vec<_>>(), vec![(2, 1), (3, 4)]);
}
