//! Finite categories with explicit composition, functors, comma categories and
//! the filtered test.

use std::collections::HashMap;

use serde::Serialize;

use super::CatError;
use crate::levi::LeviPoset;
use crate::refl::FiniteGroup;

/// Associativity is checked exhaustively up to this many objects, and spot-checked above.
const EXHAUSTIVE_OBJECTS: usize = 50;
const SPOT_CHECKS: usize = 20_000;

/// splitmix64, enough for deterministic spot checks.
struct SpotRng(u64);

impl SpotRng {
    fn below(&mut self, n: usize) -> usize {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        ((z ^ (z >> 31)) % n as u64) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub label: usize,
}

#[derive(Clone, Debug)]
enum Composition {
    /// `(f, g) ↦ "f then g"` for composable pairs.
    Table(HashMap<(usize, usize), usize>),
    /// Morphisms are group elements; `f` then `g` has label `g·f`.
    Group(FiniteGroup),
}

#[derive(Clone, Debug)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    hom: Vec<Vec<Vec<usize>>>,
    lookup: HashMap<(usize, usize, usize), usize>,
    composition: Composition,
}

impl FinCategory {
    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        composition: Composition,
    ) -> Result<Self, CatError> {
        let n = objects.len();
        let mut hom = vec![vec![Vec::new(); n]; n];
        let mut lookup = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if m.source >= n || m.target >= n {
                return Err(CatError::Invalid(format!("morphism {i} has an unknown endpoint")));
            }
            hom[m.source][m.target].push(i);
            if lookup.insert((m.source, m.target, m.label), i).is_some() {
                return Err(CatError::Invalid(format!("duplicate morphism label at {i}")));
            }
        }
        if identities.len() != n {
            return Err(CatError::Invalid("one identity per object required".into()));
        }
        let cat = FinCategory { objects, morphisms, identities, hom, lookup, composition };
        cat.validate()?;
        Ok(cat)
    }

    /// A category from an explicit composition table `(f, g) ↦ f then g`.
    pub fn from_table(
        objects: Vec<String>,
        morphisms: Vec<(usize, usize)>,
        identities: Vec<usize>,
        table: HashMap<(usize, usize), usize>,
    ) -> Result<Self, CatError> {
        let morphisms = morphisms
            .into_iter()
            .enumerate()
            .map(|(i, (source, target))| Morphism { source, target, label: i })
            .collect();
        Self::assemble(objects, morphisms, identities, Composition::Table(table))
    }

    /// Morphisms labelled by group elements, composed by multiplication (`f` then `g` is `g·f`).
    pub fn from_group_labels(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        group: FiniteGroup,
    ) -> Result<Self, CatError> {
        let e = group.identity();
        let identities = (0..objects.len())
            .map(|x| {
                morphisms
                    .iter()
                    .position(|m| m.source == x && m.target == x && m.label == e)
                    .ok_or_else(|| CatError::Invalid(format!("object {x} has no identity")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::assemble(objects, morphisms, identities, Composition::Group(group))
    }

    /// The category of a finite poset given by its reflexive relation matrix.
    pub fn poset(names: Vec<String>, leq: &[Vec<bool>]) -> Result<Self, CatError> {
        let n = names.len();
        let mut morphisms = Vec::new();
        for (i, row) in leq.iter().enumerate() {
            for j in 0..n {
                if row[j] {
                    morphisms.push(Morphism { source: i, target: j, label: 0 });
                }
            }
        }
        Self::from_group_labels(names, morphisms, FiniteGroup::trivial())
    }

    pub fn discrete(n: usize) -> Self {
        let leq: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Self::poset((0..n).map(|i| i.to_string()).collect(), &leq).expect("discrete category")
    }

    pub fn one_object_group(group: FiniteGroup) -> Self {
        let morphisms = (0..group.order()).map(|g| Morphism { source: 0, target: 0, label: g }).collect();
        Self::from_group_labels(vec!["*".into()], morphisms, group).expect("group category")
    }

    fn validate(&self) -> Result<(), CatError> {
        for (x, &id) in self.identities.iter().enumerate() {
            let m = &self.morphisms[id];
            if m.source != x || m.target != x {
                return Err(CatError::Invalid(format!("identity of object {x} is not an endomorphism")));
            }
        }
        for f in 0..self.morphisms.len() {
            let (s, t) = (self.morphisms[f].source, self.morphisms[f].target);
            if self.try_compose(self.identities[s], f)? != f || self.try_compose(f, self.identities[t])? != f {
                return Err(CatError::Invalid(format!("identity law fails at morphism {f}")));
            }
        }
        if self.len() <= EXHAUSTIVE_OBJECTS {
            for f in 0..self.morphisms.len() {
                let b = self.morphisms[f].target;
                for c in 0..self.len() {
                    for &g in &self.hom[b][c] {
                        let fg = self.try_compose(f, g)?;
                        for d in 0..self.len() {
                            for &h in &self.hom[c][d] {
                                if self.try_compose(fg, h)? != self.try_compose(f, self.try_compose(g, h)?)? {
                                    return Err(CatError::Invalid(format!("associativity fails at ({f}, {g}, {h})")));
                                }
                            }
                        }
                    }
                }
            }
        } else {
            let mut rng = SpotRng(0x5eed);
            for _ in 0..SPOT_CHECKS {
                let f = rng.below(self.morphisms.len());
                let b = self.morphisms[f].target;
                let outs_b: Vec<usize> = (0..self.len()).flat_map(|c| self.hom[b][c].iter().copied()).collect();
                let g = outs_b[rng.below(outs_b.len())];
                let c = self.morphisms[g].target;
                let outs_c: Vec<usize> = (0..self.len()).flat_map(|d| self.hom[c][d].iter().copied()).collect();
                let h = outs_c[rng.below(outs_c.len())];
                let fg = self.try_compose(f, g)?;
                if self.try_compose(fg, h)? != self.try_compose(f, self.try_compose(g, h)?)? {
                    return Err(CatError::Invalid(format!("associativity fails at ({f}, {g}, {h})")));
                }
            }
        }
        Ok(())
    }

    fn try_compose(&self, f: usize, g: usize) -> Result<usize, CatError> {
        let (mf, mg) = (&self.morphisms[f], &self.morphisms[g]);
        if mf.target != mg.source {
            return Err(CatError::Invalid(format!("morphisms {f} and {g} are not composable")));
        }
        match &self.composition {
            Composition::Table(t) => t
                .get(&(f, g))
                .copied()
                .filter(|&h| self.morphisms.get(h).is_some_and(|m| m.source == mf.source && m.target == mg.target))
                .ok_or_else(|| CatError::Invalid(format!("composite of {f} and {g} missing or ill-typed"))),
            Composition::Group(group) => {
                let label = group.mul(mg.label, mf.label);
                self.lookup
                    .get(&(mf.source, mg.target, label))
                    .copied()
                    .ok_or_else(|| CatError::Invalid(format!("composite of {f} and {g} is not a morphism")))
            }
        }
    }

    /// `f` then `g`; panics unless `target(f) = source(g)`.
    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.try_compose(f, g).expect("composable morphisms")
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x][y]
    }

    /// The morphism `x → y` with the given label, if any.
    pub fn find(&self, x: usize, y: usize, label: usize) -> Option<usize> {
        self.lookup.get(&(x, y, label)).copied()
    }

    pub fn is_iso(&self, f: usize) -> bool {
        let m = &self.morphisms[f];
        self.hom[m.target][m.source].iter().any(|&g| {
            self.compose(f, g) == self.identities[m.source] && self.compose(g, f) == self.identities[m.target]
        })
    }

    /// Every endomorphism is invertible.
    pub fn is_ei(&self) -> bool {
        (0..self.len()).all(|x| self.hom[x][x].iter().all(|&f| self.is_iso(f)))
    }
}

/// A functor given on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

impl Functor {
    pub fn validate(&self, source: &FinCategory, target: &FinCategory) -> Result<(), CatError> {
        if self.on_objects.len() != source.len() || self.on_morphisms.len() != source.morphisms.len() {
            return Err(CatError::InvalidFunctor("wrong domain size".into()));
        }
        for (f, m) in source.morphisms.iter().enumerate() {
            let Some(image) = target.morphisms.get(self.on_morphisms[f]) else {
                return Err(CatError::InvalidFunctor(format!("morphism {f} maps outside the target")));
            };
            if image.source != self.on_objects[m.source] || image.target != self.on_objects[m.target] {
                return Err(CatError::InvalidFunctor(format!("morphism {f} has mismatched endpoints")));
            }
        }
        for x in 0..source.len() {
            if self.on_morphisms[source.identity(x)] != target.identity(self.on_objects[x]) {
                return Err(CatError::InvalidFunctor(format!("identity of {x} not preserved")));
            }
        }
        for f in 0..source.morphisms.len() {
            let b = source.morphisms[f].target;
            for c in 0..source.len() {
                for &g in source.hom(b, c) {
                    let lhs = self.on_morphisms[source.compose(f, g)];
                    let rhs = target.compose(self.on_morphisms[f], self.on_morphisms[g]);
                    if lhs != rhs {
                        return Err(CatError::InvalidFunctor(format!("composition of {f}, {g} not preserved")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(cat: &FinCategory) -> Self {
        Functor { on_objects: (0..cat.len()).collect(), on_morphisms: (0..cat.morphisms.len()).collect() }
    }
}

/// The comma category `f/y`: objects `(x, β: f(x) → y)`, morphisms `α: x → x'`
/// with `f(α)` then `β'` equal to `β`.
pub fn comma_category(
    f: &Functor,
    source: &FinCategory,
    target: &FinCategory,
    y: usize,
) -> Result<FinCategory, CatError> {
    f.validate(source, target)?;
    let mut objects = Vec::new();
    let mut pairs = Vec::new();
    for x in 0..source.len() {
        for &beta in target.hom(f.on_objects[x], y) {
            objects.push(format!("({}, {})", source.objects[x], beta));
            pairs.push((x, beta));
        }
    }
    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut index = HashMap::new();
    for (i, &(x, beta)) in pairs.iter().enumerate() {
        for (j, &(x2, beta2)) in pairs.iter().enumerate() {
            for &alpha in source.hom(x, x2) {
                if target.compose(f.on_morphisms[alpha], beta2) == beta {
                    index.insert((i, j, alpha), morphisms.len());
                    morphisms.push((i, j));
                    underlying.push(alpha);
                }
            }
        }
    }
    let identities = (0..pairs.len()).map(|i| index[&(i, i, source.identity(pairs[i].0))]).collect();
    let mut table = HashMap::new();
    for (a, &(i, j)) in morphisms.iter().enumerate() {
        for (b, &(j2, k)) in morphisms.iter().enumerate() {
            if j == j2 {
                let c = source.compose(underlying[a], underlying[b]);
                table.insert((a, b), index[&(i, k, c)]);
            }
        }
    }
    FinCategory::from_table(objects, morphisms, identities, table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FilteredWitness {
    Empty,
    NoCommonTarget(usize, usize),
    NotEqualized(usize, usize),
}

/// Checks non-emptiness, common targets for object pairs, and coequalizing maps for parallel pairs.
pub fn is_filtered(cat: &FinCategory) -> (bool, Option<FilteredWitness>) {
    if cat.is_empty() {
        return (false, Some(FilteredWitness::Empty));
    }
    let n = cat.len();
    for x in 0..n {
        for y in x..n {
            if !(0..n).any(|z| !cat.hom(x, z).is_empty() && !cat.hom(y, z).is_empty()) {
                return (false, Some(FilteredWitness::NoCommonTarget(x, y)));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let hs = cat.hom(x, y);
            for (i, &f) in hs.iter().enumerate() {
                for &g in &hs[i + 1..] {
                    let equalized =
                        (0..n).any(|z| cat.hom(y, z).iter().any(|&h| cat.compose(f, h) == cat.compose(g, h)));
                    if !equalized {
                        return (false, Some(FilteredWitness::NotEqualized(f, g)));
                    }
                }
            }
        }
    }
    (true, None)
}

/// `Hom(𝕃, 𝕂) = {w : ^w𝕃 ≤ 𝕂}`, composed by multiplication in `W`.
pub fn transporter_category(poset: &LeviPoset) -> Result<FinCategory, CatError> {
    let coset = poset.coset();
    let mut morphisms = Vec::new();
    for l in 0..poset.len() {
        for k in 0..poset.len() {
            for w in 0..coset.order() {
                if poset.leq(poset.act(w, l), k) {
                    morphisms.push(Morphism { source: l, target: k, label: w });
                }
            }
        }
    }
    let names = (0..poset.len()).map(|i| format!("L{i}")).collect();
    FinCategory::from_group_labels(names, morphisms, coset.group().clone())
}
