//! Chains in a finite poset with a group action, their orbits and the
//! chain-orbit poset.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use super::complex::SimplicialComplex;
use super::CatError;
use crate::levi::LeviPoset;

/// A finite poset with an order-preserving action of a finite group, given as
/// one permutation of the elements per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    action: Vec<Vec<usize>>,
    top: Option<usize>,
}

impl GPoset {
    pub fn new(
        names: Vec<String>,
        leq: Vec<Vec<bool>>,
        action: Vec<Vec<usize>>,
        top: Option<usize>,
    ) -> Result<Self, CatError> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(CatError::Invalid("relation matrix has the wrong shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(CatError::Invalid(format!("relation is not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(CatError::Invalid(format!("relation is not antisymmetric at ({i}, {j})")));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(CatError::Invalid(format!("relation is not transitive at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        if action.is_empty() {
            return Err(CatError::Invalid("the acting group is empty".into()));
        }
        for (u, perm) in action.iter().enumerate() {
            let mut seen = vec![false; n];
            if perm.len() != n || perm.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(CatError::Invalid(format!("group element {u} is not a permutation")));
            }
            for i in 0..n {
                for j in 0..n {
                    if leq[i][j] != leq[perm[i]][perm[j]] {
                        return Err(CatError::Invalid(format!("group element {u} does not preserve the order")));
                    }
                }
            }
        }
        if let Some(t) = top {
            if t >= n || (0..n).any(|i| !leq[i][t]) {
                return Err(CatError::Invalid("declared top is not a maximum".into()));
            }
        }
        Ok(GPoset { names, leq, action, top })
    }

    /// A poset with the trivial group acting.
    pub fn trivial_action(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, CatError> {
        let n = names.len();
        let top = (0..n).find(|&t| (0..n).all(|i| leq[i][t]));
        Self::new(names, leq, vec![(0..n).collect()], top)
    }

    /// `L_e(𝔾)` with the conjugation action of `W`; group elements keep their indices.
    pub fn from_levi(poset: &LeviPoset) -> Self {
        let n = poset.len();
        let action = (0..poset.coset().order()).map(|u| (0..n).map(|i| poset.act(u, i)).collect()).collect();
        GPoset {
            names: (0..n).map(|i| format!("L{i}")).collect(),
            leq: poset.relation_matrix().to_vec(),
            action,
            top: Some(poset.top()),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn relation_matrix(&self) -> &[Vec<bool>] {
        &self.leq
    }

    pub fn group_order(&self) -> usize {
        self.action.len()
    }

    pub fn act(&self, u: usize, i: usize) -> usize {
        self.action[u][i]
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn act_chain(&self, u: usize, chain: &[usize]) -> Vec<usize> {
        chain.iter().map(|&x| self.action[u][x]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainMode {
    All,
    /// Chains whose largest term is the top element, excluding the top on its own.
    Star,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainOrbit {
    /// Lexicographically least member, listed bottom to top.
    pub rep: Vec<usize>,
    /// Number of terms minus one.
    pub length: usize,
    /// Group elements fixing every term of `rep`.
    pub stabilizer: Vec<usize>,
    pub size: usize,
}

/// All strictly increasing chains, bottom to top.
pub fn chains(poset: &GPoset, mode: ChainMode) -> Vec<Vec<usize>> {
    fn extend(poset: &GPoset, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(chain.clone());
        let last = *chain.last().expect("nonempty chain");
        for next in 0..poset.len() {
            if poset.lt(last, next) {
                chain.push(next);
                extend(poset, chain, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..poset.len() {
        extend(poset, &mut vec![start], &mut out);
    }
    match mode {
        ChainMode::All => out,
        ChainMode::Star => match poset.top() {
            Some(t) => out.into_iter().filter(|c| c.len() >= 2 && c.last() == Some(&t)).collect(),
            None => Vec::new(),
        },
    }
}

/// Orbits of chains, sorted by `(length, rep)`.
pub fn chain_orbits(poset: &GPoset, mode: ChainMode) -> Vec<ChainOrbit> {
    let mut by_rep: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let mut done: HashSet<Vec<usize>> = HashSet::new();
    for c in chains(poset, mode) {
        if done.contains(&c) {
            continue;
        }
        let orbit: BTreeSet<Vec<usize>> = (0..poset.group_order()).map(|u| poset.act_chain(u, &c)).collect();
        let rep = orbit.iter().next().expect("nonempty orbit").clone();
        by_rep.insert((rep.len() - 1, rep), orbit.len());
        done.extend(orbit);
    }
    by_rep
        .into_iter()
        .map(|((length, rep), size)| {
            let stabilizer = (0..poset.group_order()).filter(|&u| rep.iter().all(|&x| poset.act(u, x) == x)).collect();
            ChainOrbit { rep, length, stabilizer, size }
        })
        .collect()
}

/// Whether some translate of `sigma` is a subchain of `tau`.
pub fn orbit_leq(poset: &GPoset, sigma: &[usize], tau: &[usize]) -> bool {
    let members: HashSet<usize> = tau.iter().copied().collect();
    (0..poset.group_order()).any(|u| sigma.iter().all(|&x| members.contains(&poset.act(u, x))))
}

/// `S(Δ(P))/G`: chain orbits ordered by "a translate is a subchain".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainOrbitPoset {
    pub orbits: Vec<ChainOrbit>,
    pub leq: Vec<Vec<bool>>,
}

pub fn chain_orbit_poset(poset: &GPoset) -> ChainOrbitPoset {
    let orbits = chain_orbits(poset, ChainMode::All);
    let leq = orbits.iter().map(|s| orbits.iter().map(|t| orbit_leq(poset, &s.rep, &t.rep)).collect()).collect();
    ChainOrbitPoset { orbits, leq }
}

/// The order complex of the chain-orbit poset.
pub fn orbit_complex(poset: &GPoset) -> SimplicialComplex {
    SimplicialComplex::order_complex(&chain_orbit_poset(poset).leq)
}
