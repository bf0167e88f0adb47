//! Φ-cuspidal pairs, the `W`-action on them and relative Weyl groups.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::DadeError;
use crate::levi::LeviPoset;
use crate::refl::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DataMode {
    Principal,
    Dataset,
}

/// Cuspidal labels of one `W`-orbit of Levis, attached to the orbit's least node `𝕃₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLabels {
    pub orbit: usize,
    pub labels: Vec<String>,
    pub shifts: Vec<u32>,
    /// `u ∈ N_W(𝕃₀) ↦` permutation of label indices.
    pub action: BTreeMap<usize, Vec<usize>>,
}

/// A cuspidal pair `(𝕃, λ)`: a Levi node and a label index within its orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pair {
    pub levi: usize,
    pub label: usize,
}

/// All Φ-cuspidal pairs of `𝔾` known to the run, with their `W`-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairUniverse {
    pub mode: DataMode,
    pub classes: Vec<OrbitLabels>,
    pub uch_count: Option<usize>,
    by_orbit: HashMap<usize, usize>,
}

impl PairUniverse {
    pub fn new(mode: DataMode, classes: Vec<OrbitLabels>, uch_count: Option<usize>) -> Self {
        let by_orbit = classes.iter().enumerate().map(|(i, c)| (c.orbit, i)).collect();
        PairUniverse { mode, classes, uch_count, by_orbit }
    }

    /// Pairs `(𝕋, 1)` for minimal toric Levis, with the native trivial action.
    pub fn principal(poset: &LeviPoset) -> Result<Self, DadeError> {
        let minimal = poset.minimal_levis();
        let mut orbits: Vec<usize> = minimal.iter().map(|&m| poset.orbit_of(m)).collect();
        orbits.sort_unstable();
        orbits.dedup();
        let mut classes = Vec::new();
        for o in orbits {
            let base = poset.orbits()[o][0];
            let shift = if poset.node(base).is_toric() {
                poset.torus_defect_shift(base)?
            } else if poset.len() == 1 {
                poset.order_valuation(base)?
            } else {
                return Err(DadeError::NonToricMinimal(base));
            };
            let action = poset.normalizer(base).into_iter().map(|u| (u, vec![0])).collect();
            classes.push(OrbitLabels { orbit: o, labels: vec!["1".into()], shifts: vec![shift], action });
        }
        Ok(Self::new(DataMode::Principal, classes, None))
    }

    pub fn labels_of(&self, poset: &LeviPoset, node: usize) -> Option<&OrbitLabels> {
        self.by_orbit.get(&poset.orbit_of(node)).map(|&i| &self.classes[i])
    }

    pub fn label_name(&self, poset: &LeviPoset, p: Pair) -> &str {
        &self.labels_of(poset, p.levi).expect("pair on a labelled orbit").labels[p.label]
    }

    pub fn shift(&self, poset: &LeviPoset, p: Pair) -> u32 {
        self.labels_of(poset, p.levi).expect("pair on a labelled orbit").shifts[p.label]
    }

    pub fn max_shift(&self) -> u32 {
        self.classes.iter().flat_map(|c| c.shifts.iter().copied()).max().unwrap_or(0)
    }

    /// Every pair, sorted.
    pub fn all_pairs(&self, poset: &LeviPoset) -> Vec<Pair> {
        let mut out: Vec<Pair> = (0..poset.len())
            .filter_map(|n| self.labels_of(poset, n).map(|c| (n, c.labels.len())))
            .flat_map(|(levi, k)| (0..k).map(move |label| Pair { levi, label }))
            .collect();
        out.sort_unstable();
        out
    }

    /// `u·(𝕃, λ)`, transporting labels through `𝕃₀`.
    pub fn act(&self, poset: &LeviPoset, u: usize, p: Pair) -> Pair {
        let coset = poset.coset();
        let target = poset.act(u, p.levi);
        let n = coset.mul(coset.mul(coset.inv(poset.transporter(target)), u), poset.transporter(p.levi));
        let class = self.labels_of(poset, p.levi).expect("pair on a labelled orbit");
        Pair { levi: target, label: class.action[&n][p.label] }
    }

    /// Least member of the orbit of `p` under the listed group elements.
    pub fn class_rep(&self, poset: &LeviPoset, group: &[usize], p: Pair) -> Pair {
        group.iter().map(|&u| self.act(poset, u, p)).min().expect("nonempty group")
    }

    /// Orbit representatives of the given pairs under `group`, sorted.
    pub fn class_reps(&self, poset: &LeviPoset, group: &[usize], pairs: &[Pair]) -> Vec<Pair> {
        let mut reps: Vec<Pair> = pairs.iter().map(|&p| self.class_rep(poset, group, p)).collect();
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    /// Pairs of the Levi `m`, i.e. those whose Levi lies below `m`, up to `W_𝕄`-conjugacy.
    pub fn cuspidal_pairs_of(&self, poset: &LeviPoset, m: usize) -> Vec<Pair> {
        let within: Vec<Pair> = self.all_pairs(poset).into_iter().filter(|p| poset.leq(p.levi, m)).collect();
        self.class_reps(poset, &poset.node(m).parabolic, &within)
    }
}

/// `(N_W(𝕃) ∩ N_W(σ))_λ` as sorted element indices of `W`.
pub fn relative_weyl_preimage(
    poset: &LeviPoset,
    uni: &PairUniverse,
    p: Pair,
    sigma: Option<&[usize]>,
) -> Result<Vec<usize>, DadeError> {
    let chain = sigma.unwrap_or(&[]);
    if let Some(&bottom) = chain.first() {
        if !poset.leq(p.levi, bottom) {
            return Err(DadeError::NotBelowChain { levi: p.levi, bottom });
        }
    }
    Ok((0..poset.coset().order())
        .filter(|&u| {
            poset.act(u, p.levi) == p.levi && chain.iter().all(|&k| poset.act(u, k) == k) && uni.act(poset, u, p) == p
        })
        .collect())
}

/// `W_𝔾(σ, (𝕃, λ)) = (N_W(𝕃) ∩ N_W(σ))_λ / W_𝕃` as an explicit quotient group.
pub fn relative_weyl_group(
    poset: &LeviPoset,
    uni: &PairUniverse,
    p: Pair,
    sigma: Option<&[usize]>,
) -> Result<FiniteGroup, DadeError> {
    let h = relative_weyl_preimage(poset, uni, p, sigma)?;
    quotient(poset, &h, &poset.node(p.levi).parabolic)
}

fn quotient(poset: &LeviPoset, h: &[usize], normal: &[usize]) -> Result<FiniteGroup, DadeError> {
    let coset = poset.coset();
    let key = |x: usize| normal.iter().map(|&n| coset.mul(x, n)).min().expect("nonempty subgroup");
    let mut reps: Vec<usize> = h.iter().map(|&x| key(x)).collect();
    reps.sort_unstable();
    reps.dedup();
    if reps.len() * normal.len() != h.len() {
        return Err(DadeError::Invariant("parabolic subgroup not contained in the normaliser".into()));
    }
    let index: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let k = reps.len();
    let mut table = vec![0u32; k * k];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            let c = key(coset.mul(a, b));
            let idx = index.get(&c).ok_or_else(|| DadeError::Invariant("quotient is not closed".into()))?;
            table[i * k + j] = *idx as u32;
        }
    }
    FiniteGroup::from_table(k, table).map_err(|e| DadeError::Invariant(format!("quotient table: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ZetaSpec;
    use crate::refl::{builtin_coset, ReflectionCoset};
    use std::sync::Arc;

    fn poset(t: &str, ell: u64, q: u64) -> LeviPoset {
        let (g, phi) = builtin_coset(t, "id").unwrap();
        let c = Arc::new(ReflectionCoset::new(g, phi).unwrap());
        LeviPoset::enumerate(c, ZetaSpec::new(q, ell).unwrap()).unwrap()
    }

    #[test]
    fn relative_weyl_groups_of_principal_pairs() {
        let a1 = poset("A1", 3, 2);
        let uni = PairUniverse::principal(&a1).unwrap();
        let t = Pair { levi: 1, label: 0 };
        assert_eq!(relative_weyl_group(&a1, &uni, t, None).unwrap().order(), 2);
        assert_eq!(uni.cuspidal_pairs_of(&a1, 0), vec![t]);
        assert_eq!(uni.shift(&a1, t), 1);

        let a2 = poset("A2", 7, 2);
        let uni = PairUniverse::principal(&a2).unwrap();
        let t = Pair { levi: 1, label: 0 };
        let w = relative_weyl_group(&a2, &uni, t, None).unwrap();
        assert_eq!(w.order(), 3);
        assert!(w.is_abelian());
        assert_eq!(uni.cuspidal_pairs_of(&a2, 0).len(), 1);
        assert_eq!(uni.cuspidal_pairs_of(&a2, 2), vec![Pair { levi: 2, label: 0 }]);
        let with_chain = relative_weyl_group(&a2, &uni, t, Some(&[1, 0])).unwrap();
        assert_eq!(with_chain.order(), 3);
        assert!(matches!(relative_weyl_group(&a2, &uni, t, Some(&[2, 0])), Err(DadeError::NotBelowChain { .. })));
    }

    #[test]
    fn self_pair_of_a_minimal_ambient() {
        let (g, phi) = builtin_coset("2A2", "id").unwrap();
        let c = Arc::new(ReflectionCoset::new(g, phi).unwrap());
        let p = LeviPoset::enumerate(c, ZetaSpec::new(2, 7).unwrap()).unwrap();
        let uni = PairUniverse::principal(&p).unwrap();
        let top = Pair { levi: 0, label: 0 };
        assert_eq!(uni.all_pairs(&p), vec![top]);
        assert_eq!(relative_weyl_group(&p, &uni, top, None).unwrap().order(), 1);
    }
}
