//! Finite abstract simplicial complexes and reduced integral homology.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::CatError;
use crate::arith::{smith_normal_form, IntMatrix};

/// Simplices are strictly increasing vertex lists, grouped by dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// The face closure of the given simplices.
    pub fn from_facets(vertices: usize, facets: &[Vec<usize>]) -> Result<Self, CatError> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() || f.iter().any(|&v| v >= vertices) {
                return Err(CatError::Invalid(format!("bad simplex {f:?}")));
            }
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                all.insert((0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        for v in 0..vertices {
            all.insert(vec![v]);
        }
        Ok(Self::from_closed(vertices, all))
    }

    fn from_closed(vertices: usize, all: BTreeSet<Vec<usize>>) -> Self {
        let dim = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut simplices = vec![Vec::new(); dim];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        SimplicialComplex { vertices, simplices }
    }

    /// Chains of a finite poset given by its reflexive relation matrix.
    pub fn order_complex(leq: &[Vec<bool>]) -> Self {
        let n = leq.len();
        let mut all = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while let Some(c) = stack.pop() {
            let last = *c.last().expect("nonempty");
            for next in 0..n {
                if next != last && leq[last][next] {
                    let mut d = c.clone();
                    d.push(next);
                    stack.push(d);
                }
            }
            let mut s = c;
            s.sort_unstable();
            all.insert(s);
        }
        Self::from_closed(n, all)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.simplices.len() as isize - 1
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn simplex_counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// The cone with a new apex vertex.
    pub fn cone(&self) -> Self {
        let apex = self.vertices;
        let mut all: BTreeSet<Vec<usize>> = self.simplices.iter().flatten().cloned().collect();
        for s in self.simplices.iter().flatten() {
            let mut t = s.clone();
            t.push(apex);
            all.insert(t);
        }
        all.insert(vec![apex]);
        Self::from_closed(self.vertices + 1, all)
    }

    /// `∂_k : C_k → C_{k-1}`, with `∂_0` the augmentation to `Z`.
    fn boundary(&self, k: usize) -> IntMatrix {
        let cols = self.simplices(k);
        if k == 0 {
            return IntMatrix::from_rows(&[vec![1; cols.len()]]);
        }
        let rows = self.simplices(k - 1);
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (j, s) in cols.iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let r = rows.binary_search(&face).expect("face-closed complex");
                m.set(r, j, if i % 2 == 0 { 1.into() } else { (-1).into() });
            }
        }
        m
    }

    pub fn reduced_homology(&self) -> HomologyReport {
        let counts = self.simplex_counts();
        let top = counts.len();
        let ranks_and_torsion: Vec<(usize, Vec<u64>)> = (0..=top)
            .map(|k| {
                if k >= top {
                    return (0, Vec::new());
                }
                let snf = smith_normal_form(&self.boundary(k));
                let torsion = snf
                    .invariants
                    .iter()
                    .map(|d| d.to_u64().expect("torsion coefficient fits in u64"))
                    .filter(|&d| d > 1)
                    .collect();
                (snf.rank, torsion)
            })
            .collect();
        let mut groups = Vec::new();
        if top == 0 {
            groups.push(HomologyGroup { degree: -1, betti: 1, torsion: Vec::new() });
        }
        for k in 0..top {
            groups.push(HomologyGroup {
                degree: k as isize,
                betti: counts[k] - ranks_and_torsion[k].0 - ranks_and_torsion[k + 1].0,
                torsion: ranks_and_torsion[k + 1].1.clone(),
            });
        }
        let vanishes = groups.iter().all(|g| g.betti == 0 && g.torsion.is_empty());
        HomologyReport {
            simplex_counts: counts,
            euler_characteristic: self.euler_characteristic(),
            groups,
            vanishes,
            simple_connectivity_checked: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: isize,
    pub betti: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub simplex_counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub groups: Vec<HomologyGroup>,
    pub vanishes: bool,
    /// Vanishing homology does not by itself rule out a nontrivial fundamental group.
    pub simple_connectivity_checked: bool,
}

impl HomologyReport {
    pub fn reduced_betti(&self) -> Vec<usize> {
        self.groups.iter().filter(|g| g.degree >= 0).map(|g| g.betti).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn triangles() {
        let solid = SimplicialComplex::from_facets(3, &[vec![0, 1, 2]]).unwrap();
        let h = solid.reduced_homology();
        assert!(h.vanishes);
        assert_eq!(h.reduced_betti(), vec![0, 0, 0]);
        let hollow = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(hollow.reduced_homology().reduced_betti(), vec![0, 1]);
        assert_eq!(hollow.euler_characteristic(), 0);
    }

    #[test]
    fn two_points_and_empty() {
        let two = SimplicialComplex::from_facets(2, &[]).unwrap();
        assert_eq!(two.reduced_homology().reduced_betti(), vec![1]);
        let empty = SimplicialComplex::from_facets(0, &[]).unwrap();
        let h = empty.reduced_homology();
        assert_eq!(h.groups, vec![HomologyGroup { degree: -1, betti: 1, torsion: vec![] }]);
        assert!(!h.vanishes);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // six-vertex triangulation of RP^2
        let facets = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let c = SimplicialComplex::from_facets(6, &facets.map(|f| f.to_vec())).unwrap();
        let h = c.reduced_homology();
        assert_eq!(h.reduced_betti(), vec![0, 0, 0]);
        assert_eq!(h.groups[1].torsion, vec![2]);
        assert!(!h.vanishes);
    }

    #[test]
    fn order_complex_of_a_crown_is_a_circle() {
        let mut leq = vec![vec![false; 4]; 4];
        for i in 0..4 {
            leq[i][i] = true;
        }
        for a in 0..2 {
            for b in 2..4 {
                leq[a][b] = true;
            }
        }
        let c = SimplicialComplex::order_complex(&leq);
        assert_eq!(c.simplex_counts(), vec![4, 4]);
        assert_eq!(c.reduced_homology().reduced_betti(), vec![0, 1]);
    }

    fn small_complex() -> impl Strategy<Value = SimplicialComplex> {
        (1usize..7).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::btree_set(0..n, 1..4), 0..8).prop_map(move |fs| {
                let facets: Vec<Vec<usize>> = fs.into_iter().map(|s| s.into_iter().collect()).collect();
                SimplicialComplex::from_facets(n, &facets).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn euler_characteristic_matches_betti(c in small_complex()) {
            let h = c.reduced_homology();
            let alt: i64 = h.groups.iter().map(|g| if g.degree.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) }).sum();
            prop_assert_eq!(alt, c.euler_characteristic() - 1);
        }

        #[test]
        fn cones_are_acyclic(c in small_complex()) {
            prop_assert!(c.cone().reduced_homology().vanishes);
        }
    }
}
