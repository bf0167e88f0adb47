//! Defect counts `k_u^d`, `k_{u,c}^d`, their chain-local versions and the
//! alternating-sum identity over chains of e-split Levis.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::pairs::{relative_weyl_group, DataMode, Pair, PairUniverse};
use super::DadeError;
use crate::cat::{chain_orbits, ChainMode, ChainOrbit, GPoset};
use crate::chars::{character_degrees, irr_defect_count};
use crate::levi::LeviPoset;
use crate::refl::FiniteGroup;

/// `|Irr^{d - shift}(H)|` for `d = 0..=d_max`.
pub fn series_counts(h: &FiniteGroup, shift: u32, ell: u64, d_max: u32) -> Result<Vec<usize>, DadeError> {
    let counts = irr_defect_count(&character_degrees(h)?, ell)?;
    Ok((0..=d_max).map(|d| d.checked_sub(shift).and_then(|x| counts.get(&x).copied()).unwrap_or(0)).collect())
}

fn pair_counts(
    poset: &LeviPoset,
    uni: &PairUniverse,
    p: Pair,
    sigma: Option<&[usize]>,
    d_max: u32,
) -> Result<Vec<usize>, DadeError> {
    let h = relative_weyl_group(poset, uni, p, sigma)?;
    series_counts(&h, uni.shift(poset, p), poset.zeta().ell, d_max)
}

fn whole_group(poset: &LeviPoset) -> Vec<usize> {
    (0..poset.coset().order()).collect()
}

/// Representatives of the `W`-classes of cuspidal pairs of `𝔾`.
pub fn pair_classes(poset: &LeviPoset, uni: &PairUniverse) -> Vec<Pair> {
    uni.class_reps(poset, &whole_group(poset), &uni.all_pairs(poset))
}

/// `k_u^d(𝔾(q))` for `d = 0..=d_max`.
pub fn k_u(poset: &LeviPoset, uni: &PairUniverse, d_max: u32) -> Result<Vec<usize>, DadeError> {
    let mut total = vec![0; d_max as usize + 1];
    for p in pair_classes(poset, uni) {
        for (t, c) in total.iter_mut().zip(pair_counts(poset, uni, p, None, d_max)?) {
            *t += c;
        }
    }
    Ok(total)
}

/// `k_{u,c}^d(𝔾(q))`: classes of pairs `(𝔾, λ)` with `d(λ) = d`.
pub fn k_uc(poset: &LeviPoset, uni: &PairUniverse, d_max: u32) -> Vec<usize> {
    let mut total = vec![0; d_max as usize + 1];
    for p in pair_classes(poset, uni) {
        let s = uni.shift(poset, p);
        if p.levi == poset.top() && s <= d_max {
            total[s as usize] += 1;
        }
    }
    total
}

/// `k_u^d(𝔾(q), σ)` for a chain listed bottom to top.
pub fn k_u_chain(poset: &LeviPoset, uni: &PairUniverse, sigma: &[usize], d_max: u32) -> Result<Vec<usize>, DadeError> {
    let mut total = vec![0; d_max as usize + 1];
    for p in uni.cuspidal_pairs_of(poset, sigma[0]) {
        for (t, c) in total.iter_mut().zip(pair_counts(poset, uni, p, Some(sigma), d_max)?) {
            *t += c;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KRow {
    pub d: u32,
    pub k_u: usize,
    pub k_uc: usize,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainTerm {
    pub chain: Vec<usize>,
    pub length: usize,
    pub sign: i64,
    pub counts: Vec<usize>,
}

/// Contribution of one `W`-class of cuspidal pairs to both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub levi: usize,
    pub label: String,
    pub shift: u32,
    pub relative_weyl_order: usize,
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    pub declared_uch: usize,
    pub series_total: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KReport {
    pub mode: DataMode,
    pub scope: String,
    pub d_max: u32,
    pub rows: Vec<KRow>,
    pub chains: Vec<ChainTerm>,
    pub blocks: Vec<Block>,
    pub partition: Option<PartitionCheck>,
    pub pass: bool,
}

/// `ν_ℓ(|𝔾|(q))` plus the largest cuspidal defect shift.
pub fn default_d_max(poset: &LeviPoset, uni: &PairUniverse) -> Result<u32, DadeError> {
    Ok(poset.order_valuation(poset.top())? + uni.max_shift())
}

/// A chain term with its counts split by block index.
type ChainContribution = (ChainTerm, Vec<(usize, Vec<usize>)>);

pub fn star_orbits(poset: &LeviPoset) -> Vec<ChainOrbit> {
    chain_orbits(&GPoset::from_levi(poset), ChainMode::Star)
}

pub fn verify_dade(poset: &LeviPoset, uni: &PairUniverse, d_max: Option<u32>) -> Result<KReport, DadeError> {
    let d_max = match d_max {
        Some(d) => d,
        None => default_d_max(poset, uni)?,
    };
    let width = d_max as usize + 1;
    let everything = whole_group(poset);
    let reps = pair_classes(poset, uni);
    let block_of: HashMap<Pair, usize> = uni
        .all_pairs(poset)
        .into_iter()
        .map(|p| {
            let r = uni.class_rep(poset, &everything, p);
            (p, reps.binary_search(&r).expect("class representative"))
        })
        .collect();

    let mut blocks = Vec::with_capacity(reps.len());
    let mut k_u = vec![0usize; width];
    let mut k_uc = vec![0usize; width];
    let mut series_total = 0;
    for &p in &reps {
        let h = relative_weyl_group(poset, uni, p, None)?;
        let shift = uni.shift(poset, p);
        let counts = series_counts(&h, shift, poset.zeta().ell, d_max)?;
        series_total += character_degrees(&h)?.class_count();
        let mut lhs: Vec<i64> = counts.iter().map(|&c| c as i64).collect();
        for (t, c) in k_u.iter_mut().zip(&counts) {
            *t += c;
        }
        if p.levi == poset.top() && (shift as usize) < width {
            k_uc[shift as usize] += 1;
            lhs[shift as usize] -= 1;
        }
        blocks.push(Block {
            levi: p.levi,
            label: uni.label_name(poset, p).to_string(),
            shift,
            relative_weyl_order: h.order(),
            lhs,
            rhs: vec![0; width],
            pass: false,
        });
    }

    let star = star_orbits(poset);
    let per_chain: Vec<ChainContribution> = star
        .par_iter()
        .map(|sigma| {
            let sign = if (sigma.length + 1) % 2 == 0 { 1 } else { -1 };
            let mut counts = vec![0; width];
            let mut by_block = Vec::new();
            for p in uni.cuspidal_pairs_of(poset, sigma.rep[0]) {
                let c = pair_counts(poset, uni, p, Some(&sigma.rep), d_max)?;
                for (t, x) in counts.iter_mut().zip(&c) {
                    *t += x;
                }
                by_block.push((block_of[&p], c));
            }
            Ok((ChainTerm { chain: sigma.rep.clone(), length: sigma.length, sign, counts }, by_block))
        })
        .collect::<Result<_, DadeError>>()?;

    let mut rhs = vec![0i64; width];
    let mut chains = Vec::with_capacity(per_chain.len());
    for (term, by_block) in per_chain {
        for (d, &c) in term.counts.iter().enumerate() {
            rhs[d] += term.sign * c as i64;
        }
        for (b, c) in by_block {
            for (d, &x) in c.iter().enumerate() {
                blocks[b].rhs[d] += term.sign * x as i64;
            }
        }
        chains.push(term);
    }
    for b in &mut blocks {
        b.pass = b.lhs == b.rhs;
    }
    let rows: Vec<KRow> = (0..width)
        .map(|d| {
            let lhs = k_u[d] as i64 - k_uc[d] as i64;
            KRow { d: d as u32, k_u: k_u[d], k_uc: k_uc[d], lhs, rhs: rhs[d], pass: lhs == rhs[d] }
        })
        .collect();
    let partition = uni.uch_count.map(|declared| PartitionCheck {
        declared_uch: declared,
        series_total,
        pass: declared == series_total,
    });
    let pass =
        rows.iter().all(|r| r.pass) && blocks.iter().all(|b| b.pass) && partition.as_ref().is_none_or(|p| p.pass);
    let scope = match uni.mode {
        DataMode::Principal => "principal series only: pairs (minimal toric Levi, 1)".to_string(),
        DataMode::Dataset => "all cuspidal pairs of the dataset".to_string(),
    };
    Ok(KReport { mode: uni.mode, scope, d_max, rows, chains, blocks, partition, pass })
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
    fn rank_one_and_two_counts() {
        let a1 = poset("A1", 3, 2);
        let uni = PairUniverse::principal(&a1).unwrap();
        assert_eq!(k_u(&a1, &uni, 3).unwrap(), vec![0, 2, 0, 0]);
        assert_eq!(k_uc(&a1, &uni, 3), vec![0; 4]);
        assert_eq!(k_u_chain(&a1, &uni, &[1, 0], 3).unwrap(), vec![0, 2, 0, 0]);
        let r = verify_dade(&a1, &uni, Some(3)).unwrap();
        assert!(r.pass);
        assert_eq!((r.rows[1].lhs, r.rows[1].rhs), (2, 2));

        let a2 = poset("A2", 7, 2);
        let uni = PairUniverse::principal(&a2).unwrap();
        let r = verify_dade(&a2, &uni, None).unwrap();
        assert!(r.pass);
        assert_eq!((r.rows[1].lhs, r.rows[1].rhs), (3, 3));
        assert_eq!(r.chains.len(), 1);
    }

    #[test]
    fn degenerate_poset_has_empty_star_set() {
        let (g, phi) = builtin_coset("2A2", "id").unwrap();
        let c = Arc::new(ReflectionCoset::new(g, phi).unwrap());
        let p = LeviPoset::enumerate(c, ZetaSpec::new(2, 7).unwrap()).unwrap();
        let uni = PairUniverse::principal(&p).unwrap();
        let r = verify_dade(&p, &uni, None).unwrap();
        assert!(r.chains.is_empty());
        assert!(r.rows.iter().all(|row| row.lhs == 0 && row.rhs == 0));
        assert_eq!(k_u(&p, &uni, r.d_max).unwrap(), k_uc(&p, &uni, r.d_max));
        assert!(r.pass);
    }
}
