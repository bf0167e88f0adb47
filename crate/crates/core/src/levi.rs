//! Φ-tori and e-split Levi subcosets.
//!
//! A Levi is stored as a pair `(P, Pw)`: a parabolic subgroup `P ≤ W` and the
//! coset `Pw`, represented by its least element index, so that the Levi
//! subcoset is `(P·wφ, V)`. Enumeration runs over every coset element
//! `a = wφ` and every subspace `E_ζ(a) ∩ X` with `X` in the intersection
//! lattice; the pointwise stabilizer of that subspace is the parabolic part.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{
    eval_order_poly_valuation, nu_ell, ArithError, Cyclotomic, FactoredOrderPoly, SubspaceCF, ZetaSpec,
};
use crate::refl::{eigenspace, generalized_degrees, Mat, ReflError, ReflectionCoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeviError {
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("Levi {0} is not toric")]
    NonToric(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Refl(#[from] ReflError),
}

/// A Φ-torus: the coset element `a = wφ` acting as `ζ` on `space`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusDatum {
    pub element: usize,
    pub space: SubspaceCF,
}

impl TorusDatum {
    pub fn rank(&self) -> usize {
        self.space.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviSubcoset {
    /// Sorted element indices of `P = W_𝕃`.
    pub parabolic: Vec<usize>,
    /// Least element index of the coset `Pw`.
    pub rep: usize,
    pub torus: TorusDatum,
}

impl LeviSubcoset {
    pub fn is_toric(&self) -> bool {
        self.parabolic.len() == 1
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MinimalReport {
    pub nodes: Vec<usize>,
    pub transitive: bool,
}

/// `L_e(𝔾)` with its inclusion order and `W`-action. Node 0 is `𝔾`.
#[derive(Clone, Debug)]
pub struct LeviPoset {
    coset: Arc<ReflectionCoset>,
    zeta: ZetaSpec,
    nodes: Vec<LeviSubcoset>,
    leq: Vec<Vec<bool>>,
    action: Vec<Vec<usize>>,
    orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    transporter: Vec<usize>,
}

/// `ζ`-eigenspace of `a` over `Q(ζ_e)`.
pub fn zeta_eigenspace(a: &Mat, zeta: &ZetaSpec) -> SubspaceCF {
    eigenspace(a, &zeta.as_cyclotomic())
}

/// Least element of `P·w`.
fn coset_rep(coset: &ReflectionCoset, parabolic: &[usize], w: usize) -> usize {
    parabolic.iter().map(|&p| coset.mul(p, w)).min().expect("nonempty subgroup")
}

/// Every `(P, Pw)` arising as the centraliser of a Φ-torus, with a witness torus,
/// in the order first found.
pub fn levi_candidates(coset: &ReflectionCoset, zeta: &ZetaSpec) -> Vec<LeviSubcoset> {
    let k = zeta.e;
    let lattice: Vec<SubspaceCF> = coset.intersection_lattice().into_iter().map(|x| x.lift(k)).collect();
    let per_element: Vec<Vec<LeviSubcoset>> = (0..coset.order())
        .into_par_iter()
        .map(|w| {
            let a = coset.coset_element(w);
            let e = zeta_eigenspace(&a, zeta);
            let mut spaces = vec![SubspaceCF::zero(k, coset.rank())];
            for x in &lattice {
                let u = e.intersect(x).expect("same ambient");
                if !spaces.contains(&u) {
                    spaces.push(u);
                }
            }
            spaces
                .into_iter()
                .map(|u| {
                    let parabolic = coset.pointwise_stabilizer(&u);
                    let rep = coset_rep(coset, &parabolic, w);
                    LeviSubcoset { parabolic, rep, torus: TorusDatum { element: w, space: u } }
                })
                .collect()
        })
        .collect();
    let mut seen: HashMap<(Vec<usize>, usize), ()> = HashMap::new();
    let mut out = Vec::new();
    for cand in per_element.into_iter().flatten() {
        if seen.insert((cand.parabolic.clone(), cand.rep), ()).is_none() {
            out.push(cand);
        }
    }
    out
}

impl LeviPoset {
    pub fn enumerate(coset: Arc<ReflectionCoset>, zeta: ZetaSpec) -> Result<Self, LeviError> {
        let mut nodes = levi_candidates(&coset, &zeta);
        nodes.sort_by(|a, b| {
            b.parabolic
                .len()
                .cmp(&a.parabolic.len())
                .then_with(|| a.parabolic.cmp(&b.parabolic))
                .then_with(|| a.rep.cmp(&b.rep))
        });
        let index: HashMap<(Vec<usize>, usize), usize> =
            nodes.iter().enumerate().map(|(i, n)| ((n.parabolic.clone(), n.rep), i)).collect();

        for n in &nodes {
            check_soundness(&coset, &zeta, n)?;
        }

        let m = nodes.len();
        let masks: Vec<Vec<bool>> = nodes
            .iter()
            .map(|n| {
                let mut mask = vec![false; coset.order()];
                for &p in &n.parabolic {
                    mask[p] = true;
                }
                mask
            })
            .collect();
        let leq: Vec<Vec<bool>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let (a, b) = (&nodes[i], &nodes[j]);
                        a.parabolic.iter().all(|&p| masks[j][p]) && masks[j][coset.mul(a.rep, coset.inv(b.rep))]
                    })
                    .collect()
            })
            .collect();

        let action: Vec<Vec<usize>> = (0..coset.order())
            .into_par_iter()
            .map(|u| {
                nodes
                    .iter()
                    .map(|n| {
                        let key = conjugate_pair(&coset, u, &n.parabolic, n.rep);
                        index.get(&key).copied().ok_or_else(|| {
                            LeviError::Invariant(format!("conjugate of a Levi by element {u} is not enumerated"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;

        for row in &action {
            for i in 0..m {
                for j in 0..m {
                    if leq[i][j] != leq[row[i]][row[j]] {
                        return Err(LeviError::Invariant("conjugation does not preserve inclusion".into()));
                    }
                }
            }
        }

        let mut orbit_of = vec![usize::MAX; m];
        let mut orbits = Vec::new();
        let mut transporter = vec![usize::MAX; m];
        for i in 0..m {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut orbit = Vec::new();
            for (u, row) in action.iter().enumerate() {
                let j = row[i];
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = orbits.len();
                    transporter[j] = u;
                    orbit.push(j);
                }
            }
            transporter[i] = coset.identity();
            orbit.sort_unstable();
            orbits.push(orbit);
        }

        let poset = LeviPoset { coset, zeta, nodes, leq, action, orbits, orbit_of, transporter };
        if poset.nodes[0].parabolic.len() != poset.coset.order() || !(0..m).all(|i| poset.leq[i][0]) {
            return Err(LeviError::Invariant("the ambient coset is not the maximum".into()));
        }
        Ok(poset)
    }

    pub fn coset(&self) -> &Arc<ReflectionCoset> {
        &self.coset
    }

    pub fn zeta(&self) -> &ZetaSpec {
        &self.zeta
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[LeviSubcoset] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &LeviSubcoset {
        &self.nodes[i]
    }

    pub fn top(&self) -> usize {
        0
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

    /// `^u𝕃`.
    pub fn act(&self, u: usize, i: usize) -> usize {
        self.action[u][i]
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbit_of[i]
    }

    /// Least `u` with `^u𝕃_0 = 𝕃`, where `𝕃_0` is the least node of the orbit; the identity on `𝕃_0`.
    pub fn transporter(&self, i: usize) -> usize {
        self.transporter[i]
    }

    /// `N_W(𝕃)` as sorted indices.
    pub fn normalizer(&self, i: usize) -> Vec<usize> {
        (0..self.coset.order()).filter(|&u| self.action[u][i] == i).collect()
    }

    /// Nodes `≤ i`.
    pub fn below(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq[j][i]).collect()
    }

    pub fn minimal_levis(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !(0..self.len()).any(|j| self.lt(j, i))).collect()
    }

    pub fn minimal_report(&self) -> MinimalReport {
        let nodes = self.minimal_levis();
        let transitive = nodes.iter().all(|&n| self.orbit_of[n] == self.orbit_of[nodes[0]]);
        MinimalReport { nodes, transitive }
    }

    /// Minimal nodes below `i`, i.e. the minimal e-split Levis of `𝕃_i`.
    pub fn minimal_below(&self, i: usize) -> Vec<usize> {
        let below = self.below(i);
        below.iter().copied().filter(|&x| !below.iter().any(|&y| self.lt(y, x))).collect()
    }

    /// The coset `P·wφ` as matrices.
    pub fn coset_matrices(&self, i: usize) -> Vec<Mat> {
        let n = &self.nodes[i];
        n.parabolic.iter().map(|&p| self.coset.coset_element(self.coset.mul(p, n.rep))).collect()
    }

    pub fn order_polynomial(&self, i: usize) -> Result<FactoredOrderPoly, LeviError> {
        let n = &self.nodes[i];
        let group: Vec<Mat> = n.parabolic.iter().map(|&p| self.coset.element(p).clone()).collect();
        let twist = self.coset.coset_element(n.rep);
        let degrees = generalized_degrees(&group, &twist)?;
        let n_refl = n.parabolic.iter().filter(|&&p| self.coset.reflections().contains(&p)).count();
        Ok(FactoredOrderPoly::new(n_refl as u32, degrees))
    }

    /// `ν_ℓ(|𝕃|(q))`.
    pub fn order_valuation(&self, i: usize) -> Result<u32, LeviError> {
        let poly = self.order_polynomial(i)?;
        let literal = literal_valuation(&poly, &self.zeta)?;
        if poly.factors.iter().all(|(_, eps)| self.zeta.realizable(*eps)) {
            let via_embedding = eval_order_poly_valuation(&poly, &self.zeta)?;
            if via_embedding != literal {
                return Err(LeviError::Invariant(format!(
                    "valuation of Levi {i}: {via_embedding} via the embedding, {literal} literally"
                )));
            }
        }
        Ok(literal)
    }

    /// `d_{q,ℓ}(1_𝕃) = ν_ℓ(|𝕃|(q))` for a toric Levi, cross-checked against `det(q - a)`.
    pub fn torus_defect_shift(&self, i: usize) -> Result<u32, LeviError> {
        let n = &self.nodes[i];
        if !n.is_toric() {
            return Err(LeviError::NonToric(i));
        }
        let shift = self.order_valuation(i)?;
        let a = self.coset.coset_element(n.rep);
        let c = a.det_one_minus_t();
        // det(q - a) = q^r det(1 - a/q) = Σ c_k q^{r-k}
        let r = a.dim();
        let q = BigInt::from(self.zeta.q);
        let value: BigInt = c.iter().enumerate().map(|(k, &ck)| BigInt::from(ck) * q.pow((r - k) as u32)).sum();
        if nu_ell(&value, self.zeta.ell)? != shift {
            return Err(LeviError::Invariant(format!("torus defect of Levi {i} disagrees with det(q - a)")));
        }
        Ok(shift)
    }
}

/// `ν_ℓ` of `∏ (q^{d_i} - ε_i)`, a rational integer because the `ε_i` form a Galois-stable multiset.
fn literal_valuation(poly: &FactoredOrderPoly, zeta: &ZetaSpec) -> Result<u32, LeviError> {
    let n = poly.factors.iter().fold(1u32, |acc, (_, eps)| num_integer::lcm(acc, eps.order()));
    let mut value = Cyclotomic::one(n);
    for (d, eps) in &poly.factors {
        let qd = Cyclotomic::from_rational(n, BigInt::from(zeta.q).pow(*d).into());
        value = value.mul(&qd.sub(&eps.to_cyclotomic(n)));
    }
    let rational = value
        .as_rational()
        .filter(|x| x.is_integer())
        .ok_or_else(|| LeviError::Invariant("order polynomial value is not a rational integer".into()))?;
    Ok(nu_ell(&rational.to_integer(), zeta.ell)?)
}

/// `(uPu^{-1}, canonical rep of uPu^{-1} · (u * w))`.
fn conjugate_pair(coset: &ReflectionCoset, u: usize, parabolic: &[usize], rep: usize) -> (Vec<usize>, usize) {
    let mut p: Vec<usize> = parabolic.iter().map(|&x| coset.group().conj(u, x)).collect();
    p.sort_unstable();
    let w = coset.twisted_conj(u, rep);
    let r = coset_rep(coset, &p, w);
    (p, r)
}

fn check_soundness(coset: &ReflectionCoset, zeta: &ZetaSpec, n: &LeviSubcoset) -> Result<(), LeviError> {
    let t = &n.torus;
    if coset.pointwise_stabilizer(&t.space) != n.parabolic {
        return Err(LeviError::Invariant("parabolic is not the stabilizer of its torus".into()));
    }
    let a = coset.coset_element(t.element);
    if !t.space.leq(&zeta_eigenspace(&a, zeta))? {
        return Err(LeviError::Invariant("coset element does not act as zeta on its torus".into()));
    }
    let w = t.element;
    let normalizes = n.parabolic.iter().all(|&p| {
        let c = coset.mul(coset.mul(w, coset.sigma(p)), coset.inv(w));
        n.parabolic.binary_search(&c).is_ok()
    });
    if !normalizes {
        return Err(LeviError::Invariant("coset element does not normalise its parabolic".into()));
    }
    Ok(())
}
