//! Reflection cosets `Wφ` with cached group data.

use std::collections::{HashMap, HashSet};

use super::group::{generate_group_in, FiniteGroup, Mat, DEFAULT_ORDER_CAP};
use super::molien::generalized_degrees;
use super::{eigenspace, ReflError};
use crate::arith::{Cyclotomic, FactoredOrderPoly, RootOfUnity, SubspaceCF};

#[derive(Clone, Debug)]
pub struct ReflectionCoset {
    rank: usize,
    generators: Vec<Mat>,
    phi: Mat,
    phi_order: usize,
    phi_inv: Mat,
    elements: Vec<Mat>,
    index: HashMap<Mat, usize>,
    group: FiniteGroup,
    sigma: Vec<usize>,
    reflections: Vec<usize>,
    registry: Vec<(SubspaceCF, Vec<usize>)>,
    degrees: Vec<(u32, RootOfUnity)>,
}

impl ReflectionCoset {
    pub fn new(generators: Vec<Mat>, phi: Mat) -> Result<Self, ReflError> {
        Self::with_cap(generators, phi, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(generators: Vec<Mat>, phi: Mat, cap: usize) -> Result<Self, ReflError> {
        let rank = phi.dim();
        for g in &generators {
            if g.dim() != rank {
                return Err(ReflError::DimensionMismatch { expected: rank, found: g.dim() });
            }
        }
        let elements = generate_group_in(rank, &generators, cap)?;
        let index: HashMap<Mat, usize> = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let group = FiniteGroup::from_elements(&elements, Mat::mul)?;
        let phi_order = phi.order(1_000).ok_or(ReflError::TwistOrder)?;
        let phi_inv = phi.pow(phi_order - 1);
        let sigma = elements
            .iter()
            .map(|w| index.get(&phi.mul(w).mul(&phi_inv)).copied().ok_or(ReflError::NotNormalizing))
            .collect::<Result<Vec<_>, _>>()?;
        let reflections: Vec<usize> =
            (0..elements.len()).filter(|&i| elements[i].corank_of_fixed_space() == 1).collect();
        let degrees = generalized_degrees(&elements, &phi)?;
        let mut coset = ReflectionCoset {
            rank,
            generators,
            phi,
            phi_order,
            phi_inv,
            elements,
            index,
            group,
            sigma,
            reflections,
            registry: Vec::new(),
            degrees,
        };
        coset.registry = coset
            .build_lattice()
            .into_iter()
            .map(|u| {
                let p = coset.pointwise_stabilizer(&u);
                (u, p)
            })
            .collect();
        Ok(coset)
    }

    fn build_lattice(&self) -> Vec<SubspaceCF> {
        let one = Cyclotomic::one(1);
        let mut lattice = vec![SubspaceCF::whole(1, self.rank)];
        let mut seen: HashSet<SubspaceCF> = lattice.iter().cloned().collect();
        let hyperplanes: Vec<SubspaceCF> =
            self.reflections.iter().map(|&s| eigenspace(&self.elements[s], &one)).collect();
        for h in &hyperplanes {
            if seen.insert(h.clone()) {
                lattice.push(h.clone());
            }
        }
        let mut frontier = hyperplanes.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for h in &hyperplanes {
                    let y = x.intersect(h).expect("same ambient");
                    if seen.insert(y.clone()) {
                        lattice.push(y.clone());
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        lattice
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn phi(&self) -> &Mat {
        &self.phi
    }

    pub fn phi_inverse(&self) -> &Mat {
        &self.phi_inv
    }

    pub fn phi_order(&self) -> usize {
        self.phi_order
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.group.mul(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.group.inv(a)
    }

    pub fn identity(&self) -> usize {
        self.group.identity()
    }

    /// `φ w φ^{-1}`.
    pub fn sigma(&self, w: usize) -> usize {
        self.sigma[w]
    }

    /// `u * w = u w σ(u)^{-1}`, the index of `w'` with `u (wφ) u^{-1} = w'φ`.
    pub fn twisted_conj(&self, u: usize, w: usize) -> usize {
        self.mul(self.mul(u, w), self.inv(self.sigma[u]))
    }

    /// The matrix `wφ`.
    pub fn coset_element(&self, w: usize) -> Mat {
        self.elements[w].mul(&self.phi)
    }

    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    pub fn n_reflections(&self) -> usize {
        self.reflections.len()
    }

    pub fn intersection_lattice(&self) -> Vec<&SubspaceCF> {
        self.registry.iter().map(|(u, _)| u).collect()
    }

    pub fn parabolic_registry(&self) -> &[(SubspaceCF, Vec<usize>)] {
        &self.registry
    }

    /// `{w : w|U = id}` as sorted indices.
    pub fn pointwise_stabilizer(&self, u: &SubspaceCF) -> Vec<usize> {
        let rows: Vec<Vec<Vec<i64>>> = self.elements.iter().map(Mat::rows).collect();
        (0..self.elements.len()).filter(|&i| u.fixed_pointwise_by(&rows[i])).collect()
    }

    /// Classes of the coset `Wφ` under `W`-conjugation, as classes of `w`.
    pub fn twisted_classes(&self) -> Vec<Vec<usize>> {
        self.group.twisted_classes(&self.sigma)
    }

    pub fn degrees(&self) -> &[(u32, RootOfUnity)] {
        &self.degrees
    }

    pub fn order_polynomial(&self) -> FactoredOrderPoly {
        FactoredOrderPoly::new(self.n_reflections() as u32, self.degrees.clone())
    }

    /// Conservative "very good prime" test: `ℓ ∤ |W|` and `ℓ ∤ ord(φ)`.
    pub fn very_good_warning(&self, ell: u64) -> bool {
        (self.order() as u64).is_multiple_of(ell) || (self.phi_order as u64).is_multiple_of(ell)
    }
}
