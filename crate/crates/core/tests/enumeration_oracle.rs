//! Levi enumeration against the brute-force oracle.

mod common;

use common::oracle;

#[test]
fn enumeration_matches_brute_force() {
    for (t, ell, q) in [
        ("A1", 3, 2),
        ("A2", 7, 2),
        ("B2", 5, 2),
        ("A1", 5, 4),
        ("A2", 3, 2),
        ("B2", 3, 2),
        ("A2", 5, 4),
        ("G2", 7, 2),
        ("G2", 13, 3),
        ("A3", 5, 2),
        ("A3", 3, 2),
    ] {
        let expected = oracle::levi_oracle(t, ell, q);
        let got = oracle::enumerated(t, ell, q);
        assert_eq!(got, expected, "{t} ell={ell} q={q}");
        assert_eq!(got.len(), common::levi_poset(t, ell, q).len(), "{t}: duplicate nodes");
    }
}

#[test]
fn frozen_node_counts() {
    for (t, ell, q, nodes) in [("A1", 3, 2, 2), ("A2", 7, 2, 3), ("B2", 5, 2, 3), ("G2", 7, 2, 3), ("2A2", 7, 2, 1)] {
        assert_eq!(common::levi_poset(t, ell, q).len(), nodes, "{t}");
    }
}
