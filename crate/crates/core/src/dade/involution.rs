//! The sign-reversing involution on pairs `(σ, (𝕃, λ))` that cancels the
//! alternating sum down to the chains `{𝕃 < 𝔾}`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::pairs::{relative_weyl_preimage, Pair, PairUniverse};
use super::verify::{pair_classes, series_counts, star_orbits};
use super::DadeError;
use crate::levi::LeviPoset;
use crate::refl::FiniteGroup;

/// A star-chain orbit (by index) and a `W_{𝕃(σ)}`-class representative of a pair of `𝕃(σ)`.
type Triple = (usize, Pair);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    pub triples: usize,
    pub fixed_points: usize,
    pub expected_fixed_points: usize,
    pub paired: usize,
    pub violations: Vec<String>,
    pub pass: bool,
}

struct Ctx<'a> {
    poset: &'a LeviPoset,
    uni: &'a PairUniverse,
    reps: Vec<Vec<usize>>,
    orbit_index: HashMap<Vec<usize>, usize>,
}

impl Ctx<'_> {
    /// All `u` carrying `chain` to its orbit representative, with that orbit's index.
    fn canonicalize(&self, chain: &[usize]) -> Option<(usize, Vec<usize>)> {
        let coset = self.poset.coset();
        let images: Vec<(Vec<usize>, usize)> =
            (0..coset.order()).map(|u| (chain.iter().map(|&x| self.poset.act(u, x)).collect(), u)).collect();
        let rep = images.iter().map(|(c, _)| c).min()?.clone();
        let idx = *self.orbit_index.get(&rep)?;
        Some((idx, images.into_iter().filter(|(c, _)| *c == rep).map(|(_, u)| u).collect()))
    }

    fn class_in(&self, orbit: usize, p: Pair) -> Pair {
        self.uni.class_rep(self.poset, &self.poset.node(self.reps[orbit][0]).parabolic, p)
    }

    /// The partner of a triple, `None` at a fixed point.
    fn partner(&self, t: Triple) -> Result<Option<(Triple, usize)>, String> {
        let (orbit, p) = t;
        let sigma = &self.reps[orbit];
        let rho: Vec<usize> = if p.levi != sigma[0] {
            std::iter::once(p.levi).chain(sigma.iter().copied()).collect()
        } else if sigma.len() == 2 {
            return Ok(None);
        } else {
            sigma[1..].to_vec()
        };
        let (target, us) = self.canonicalize(&rho).ok_or_else(|| format!("chain {rho:?} is not a star chain"))?;
        let images: BTreeSet<Pair> =
            us.iter().map(|&u| self.class_in(target, self.uni.act(self.poset, u, p))).collect();
        if images.len() != 1 {
            return Err(format!("image of {t:?} depends on the transporting element: {images:?}"));
        }
        Ok(Some(((target, *images.iter().next().expect("one image")), us[0])))
    }

    fn local_group(&self, t: Triple) -> Result<Vec<usize>, DadeError> {
        relative_weyl_preimage(self.poset, self.uni, t.1, Some(&self.reps[t.0]))
    }
}

fn conjugate_set(poset: &LeviPoset, u: usize, set: &[usize]) -> Vec<usize> {
    let coset = poset.coset();
    let mut out: Vec<usize> = set.iter().map(|&x| coset.group().conj(u, x)).collect();
    out.sort_unstable();
    out
}

pub fn cancellation_involution(poset: &LeviPoset, uni: &PairUniverse) -> Result<InvolutionReport, DadeError> {
    let star = star_orbits(poset);
    let ctx = Ctx {
        poset,
        uni,
        reps: star.iter().map(|o| o.rep.clone()).collect(),
        orbit_index: star.iter().enumerate().map(|(i, o)| (o.rep.clone(), i)).collect(),
    };
    let mut triples: Vec<Triple> = Vec::new();
    for (i, o) in star.iter().enumerate() {
        for p in uni.cuspidal_pairs_of(poset, o.rep[0]) {
            triples.push((i, p));
        }
    }
    let known: BTreeSet<Triple> = triples.iter().copied().collect();
    let mut violations = Vec::new();
    let mut fixed = 0;
    let mut paired = 0;
    let ell = poset.zeta().ell;
    for &t in &triples {
        let sigma = &ctx.reps[t.0];
        let expect_fixed = sigma.len() == 2 && t.1.levi == sigma[0];
        match ctx.partner(t) {
            Err(msg) => violations.push(msg),
            Ok(None) => {
                fixed += 1;
                if !expect_fixed {
                    violations.push(format!("unexpected fixed point {t:?}"));
                }
            }
            Ok(Some((image, u))) => {
                paired += 1;
                if expect_fixed {
                    violations.push(format!("{t:?} should be fixed"));
                }
                if !known.contains(&image) {
                    violations.push(format!("image {image:?} of {t:?} is not a triple"));
                    continue;
                }
                if ctx.reps[image.0].len().abs_diff(sigma.len()) != 1 {
                    violations.push(format!("{t:?} and {image:?} have the same sign"));
                }
                if uni.class_rep(poset, &(0..poset.coset().order()).collect::<Vec<_>>(), t.1)
                    != uni.class_rep(poset, &(0..poset.coset().order()).collect::<Vec<_>>(), image.1)
                {
                    violations.push(format!("{t:?} and {image:?} lie in different pair classes"));
                }
                match ctx.partner(image) {
                    Ok(Some((back, _))) if back == t => {}
                    _ => violations.push(format!("partner of {image:?} is not {t:?}")),
                }
                // the transported local group must be the partner's local group
                let here = ctx.local_group(t)?;
                let moved = conjugate_set(poset, u, &here);
                let transported = uni.act(poset, u, t.1);
                let there_raw = relative_weyl_preimage(poset, uni, transported, Some(&ctx.reps[image.0]))?;
                if moved != there_raw {
                    violations.push(format!("local groups of {t:?} and {image:?} differ"));
                }
                let a = crate::dade::pairs::relative_weyl_group(poset, uni, t.1, Some(sigma))?;
                let b = crate::dade::pairs::relative_weyl_group(poset, uni, image.1, Some(&ctx.reps[image.0]))?;
                if defect_profile(&a, uni.shift(poset, t.1), ell)?
                    != defect_profile(&b, uni.shift(poset, image.1), ell)?
                {
                    violations.push(format!("defect counts of {t:?} and {image:?} differ"));
                }
            }
        }
    }
    let expected = pair_classes(poset, uni).into_iter().filter(|p| p.levi != poset.top()).count();
    if fixed != expected {
        violations.push(format!("{fixed} fixed points, expected {expected}"));
    }
    Ok(InvolutionReport {
        triples: triples.len(),
        fixed_points: fixed,
        expected_fixed_points: expected,
        paired,
        pass: violations.is_empty(),
        violations,
    })
}

fn defect_profile(h: &FiniteGroup, shift: u32, ell: u64) -> Result<Vec<usize>, DadeError> {
    series_counts(h, shift, ell, 64)
}
