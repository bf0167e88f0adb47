//! Ingestion of cuspidal-pair datasets.
//!
//! ```json
//! {
//!   "ambient_id": "A1",
//!   "uch_count": 2,
//!   "pairs": [
//!     { "levi_class": "O1", "label": "1", "defect_shift": 1,
//!       "degree_poly": { "scalar_num": 1, "scalar_den": 1, "x_power": 0, "cyclo": [] },
//!       "action": "trivial" }
//!   ]
//! }
//! ```
//!
//! `levi_class` is `"G"` for the ambient coset or `"O<k>"` for the `k`-th Levi
//! orbit as listed by `levis`. A non-trivial action is given as
//! `{"permutation": [{"element": <matrix>, "image": <label>}, ...]}`: each
//! element of `N_W(𝕃₀)` listed sends this label to `image`. Labels with action
//! `"trivial"` are fixed by everything. The declared elements together with
//! `W_𝕃₀`, which must act trivially, have to generate all of `N_W(𝕃₀)`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Deserialize;

use super::pairs::{DataMode, OrbitLabels, PairUniverse};
use super::DadeError;
use crate::arith::{nu_ell_cyclotomic_value, nu_ell_int};
use crate::levi::LeviPoset;
use crate::refl::Mat;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetFile {
    pub ambient_id: String,
    #[serde(default)]
    pub uch_count: Option<usize>,
    pub pairs: Vec<PairRecord>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairRecord {
    pub levi_class: String,
    pub label: String,
    #[serde(default)]
    pub defect_shift: Option<u32>,
    #[serde(default)]
    pub degree_poly: Option<DegreePoly>,
    pub action: ActionSpec,
}

/// `scalar · x^{x_power} · ∏ Φ_m(x)^{mult}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreePoly {
    pub scalar_num: i64,
    pub scalar_den: i64,
    pub x_power: u32,
    pub cyclo: Vec<[u32; 2]>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Named(String),
    Permutation { permutation: Vec<ActionEntry> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionEntry {
    pub element: Vec<Vec<i64>>,
    pub image: String,
}

pub fn parse_dataset(text: &str) -> Result<DatasetFile, DadeError> {
    serde_json::from_str(text).map_err(|e| DadeError::Schema(e.to_string()))
}

fn resolve_class(poset: &LeviPoset, id: &str) -> Result<usize, DadeError> {
    if id == "G" {
        return Ok(poset.orbit_of(poset.top()));
    }
    id.strip_prefix('O')
        .and_then(|k| k.parse::<usize>().ok())
        .filter(|&k| k < poset.orbits().len())
        .ok_or_else(|| DadeError::UnresolvableLevi(id.to_string()))
}

fn degree_valuation(poly: &DegreePoly, q: u64, ell: u64) -> Result<i64, DadeError> {
    if poly.scalar_num == 0 || poly.scalar_den == 0 {
        return Err(DadeError::Schema("degree polynomial has a zero scalar".into()));
    }
    let mut v = i64::from(nu_ell_int(poly.scalar_num, ell)?) - i64::from(nu_ell_int(poly.scalar_den, ell)?);
    for &[m, mult] in &poly.cyclo {
        if m == 0 {
            return Err(DadeError::Schema("cyclotomic index 0".into()));
        }
        v += i64::from(mult) * i64::from(nu_ell_cyclotomic_value(m, q, ell)?);
    }
    Ok(v)
}

/// Validates a dataset against the enumerated poset and builds its pair universe.
pub fn ingest_dataset(poset: &LeviPoset, file: &DatasetFile, ambient: Option<&str>) -> Result<PairUniverse, DadeError> {
    if let Some(a) = ambient {
        if a != file.ambient_id {
            return Err(DadeError::Schema(format!("dataset is for {}, not {a}", file.ambient_id)));
        }
    }
    let zeta = poset.zeta();
    let coset = poset.coset();
    let mut grouped: BTreeMap<usize, Vec<&PairRecord>> = BTreeMap::new();
    for rec in &file.pairs {
        grouped.entry(resolve_class(poset, &rec.levi_class)?).or_default().push(rec);
    }
    let mut classes = Vec::new();
    for (orbit, recs) in grouped {
        let base = poset.orbits()[orbit][0];
        let levi_valuation = i64::from(poset.order_valuation(base)?);
        let labels: Vec<String> = recs.iter().map(|r| r.label.clone()).collect();
        let position: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        if position.len() != labels.len() {
            return Err(DadeError::Schema(format!("duplicate label in Levi class O{orbit}")));
        }
        let mut shifts = Vec::new();
        for r in &recs {
            let from_poly = match &r.degree_poly {
                Some(p) => {
                    let s = levi_valuation - degree_valuation(p, zeta.q, zeta.ell)?;
                    Some(
                        u32::try_from(s)
                            .map_err(|_| DadeError::Schema(format!("label {} has negative defect", r.label)))?,
                    )
                }
                None => None,
            };
            let shift = match (r.defect_shift, from_poly) {
                (Some(a), Some(b)) if a != b => {
                    return Err(DadeError::DefectMismatch { label: r.label.clone(), declared: a, computed: b })
                }
                (Some(a), _) | (None, Some(a)) => a,
                (None, None) => {
                    return Err(DadeError::Schema(format!("label {} needs defect_shift or degree_poly", r.label)))
                }
            };
            shifts.push(shift);
        }
        // declared generators as partial permutations
        let mut gens: BTreeMap<usize, Vec<Option<usize>>> = BTreeMap::new();
        for (i, r) in recs.iter().enumerate() {
            match &r.action {
                ActionSpec::Named(n) if n == "trivial" => {}
                ActionSpec::Named(n) => return Err(DadeError::Schema(format!("unknown action {n:?}"))),
                ActionSpec::Permutation { permutation } => {
                    for entry in permutation {
                        let m = Mat::from_rows(&entry.element).map_err(|e| DadeError::Schema(e.to_string()))?;
                        let u =
                            coset.index_of(&m).ok_or_else(|| DadeError::Schema("action element is not in W".into()))?;
                        let j = *position
                            .get(entry.image.as_str())
                            .ok_or_else(|| DadeError::Schema(format!("unknown image label {}", entry.image)))?;
                        let slot = &mut gens.entry(u).or_insert_with(|| vec![None; labels.len()])[i];
                        if slot.is_some_and(|k| k != j) {
                            return Err(DadeError::Schema(format!("conflicting images for label {}", r.label)));
                        }
                        *slot = Some(j);
                    }
                }
            }
        }
        let mut generators: Vec<(usize, Vec<usize>)> = Vec::new();
        for (u, partial) in gens {
            let perm: Vec<usize> = partial
                .iter()
                .enumerate()
                .map(|(i, s)| match (s, &recs[i].action) {
                    (Some(j), _) => Ok(*j),
                    (None, ActionSpec::Named(_)) => Ok(i),
                    (None, _) => {
                        Err(DadeError::Schema(format!("label {} has no image under a declared element", recs[i].label)))
                    }
                })
                .collect::<Result<_, _>>()?;
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            if sorted != (0..labels.len()).collect::<Vec<_>>() {
                return Err(DadeError::Schema(format!("declared action on Levi class O{orbit} is not a permutation")));
            }
            generators.push((u, perm));
        }
        let identity_perm: Vec<usize> = (0..labels.len()).collect();
        let action = if generators.is_empty() {
            poset.normalizer(base).into_iter().map(|u| (u, identity_perm.clone())).collect()
        } else {
            for &p in &poset.node(base).parabolic {
                generators.push((p, identity_perm.clone()));
            }
            close_action(poset, base, &generators, orbit)?
        };
        classes.push(OrbitLabels { orbit, labels, shifts, action });
    }
    Ok(PairUniverse::new(DataMode::Dataset, classes, file.uch_count))
}

/// Extends declared generator permutations to a homomorphism on `N_W(𝕃₀)`.
fn close_action(
    poset: &LeviPoset,
    base: usize,
    generators: &[(usize, Vec<usize>)],
    orbit: usize,
) -> Result<BTreeMap<usize, Vec<usize>>, DadeError> {
    let coset = poset.coset();
    let normalizer = poset.normalizer(base);
    for (u, _) in generators {
        if normalizer.binary_search(u).is_err() {
            return Err(DadeError::Schema(format!("action element does not normalise Levi class O{orbit}")));
        }
    }
    let k = generators.first().map_or(0, |(_, p)| p.len());
    let mut known: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    known.insert(coset.identity(), (0..k).collect());
    let mut queue = VecDeque::from([coset.identity()]);
    while let Some(a) = queue.pop_front() {
        let pa = known[&a].clone();
        for (g, pg) in generators {
            let b = coset.mul(*g, a);
            let pb: Vec<usize> = pa.iter().map(|&x| pg[x]).collect();
            match known.get(&b) {
                Some(existing) if *existing != pb => {
                    return Err(DadeError::Schema(format!("declared action on Levi class O{orbit} is inconsistent")))
                }
                Some(_) => {}
                None => {
                    known.insert(b, pb);
                    queue.push_back(b);
                }
            }
        }
    }
    if known.len() != normalizer.len() {
        return Err(DadeError::Schema(format!("declared action on Levi class O{orbit} does not cover its normaliser")));
    }
    Ok(known)
}
