//! Irreducible character degrees of small finite groups and ℓ-defect counts.
//!
//! Degrees come from the class-multiplication algebra: the normalized central
//! characters are the common eigenvectors of the class matrices, which split
//! over `F_p` for a prime `p ≡ 1 (mod exp G)`. With `ω` such an eigenvector,
//! `χ(1)^2 = |G| / Σ_C ω_C ω_{C^{-1}} / |C|`, read off in `F_p` and lifted
//! to the unique integer below `p / 2`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::arith::{is_prime, nu_ell_int, ArithError};
use crate::refl::FiniteGroup;

pub const CHAR_CAP: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharsError {
    #[error("group of order {order} exceeds the cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("class matrices failed to split over F_{0}")]
    NoSplitting(u64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeMultiset {
    pub group_order: usize,
    /// Sorted ascending.
    pub degrees: Vec<u32>,
}

impl DegreeMultiset {
    pub fn class_count(&self) -> usize {
        self.degrees.len()
    }

    /// `(degree, multiplicity)` pairs, ascending.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &d in &self.degrees {
            match out.last_mut() {
                Some((e, m)) if *e == d => *m += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }
}

/// `d ↦ #{χ : d_ℓ(χ) = d}`.
pub type DefectCount = BTreeMap<u32, usize>;

fn cache() -> &'static Mutex<HashMap<Vec<u32>, Vec<u32>>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u32>, Vec<u32>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Basis of the kernel of a `rows × cols` matrix over `F_p`.
fn kernel_mod(mut m: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[row][free]) % p;
            }
            v
        })
        .collect()
}

fn splitting_prime(order: usize, exponent: usize) -> u64 {
    let exp = exponent as u64;
    let mut p = exp + 1;
    while !(is_prime(p) && p * p > 4 * order as u64) {
        p += exp;
    }
    p
}

fn compute_degrees(g: &FiniteGroup) -> Result<Vec<u32>, CharsError> {
    let n = g.order();
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let mut class_of = vec![0; n];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            class_of[x] = c;
        }
    }
    let p = splitting_prime(n, g.exponent());
    // a[i][j][l] = #{(x, y) ∈ C_i × C_j : xy = z_l}
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (l, members) in classes.iter().enumerate() {
        let z = members[0];
        for x in 0..n {
            let y = g.mul(g.inv(x), z);
            a[class_of[x]][class_of[y]][l] += 1;
        }
    }
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()];
    for mat in &a {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // image of each basis vector under the class matrix
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| (0..k).map(|j| (0..k).map(|l| mat[j][l] % p * b[l] % p).sum::<u64>() % p).collect())
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                let rows: Vec<Vec<u64>> = (0..k)
                    .map(|j| (0..basis.len()).map(|t| (images[t][j] + p - lambda * basis[t][j] % p) % p).collect())
                    .collect();
                let ker = kernel_mod(rows, basis.len(), p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| {
                        (0..k).map(|j| (0..basis.len()).map(|t| c[t] * basis[t][j] % p).sum::<u64>() % p).collect()
                    })
                    .collect();
                next.push(sub);
                if found == basis.len() {
                    break;
                }
            }
            if found != basis.len() {
                return Err(CharsError::NoSplitting(p));
            }
        }
        spaces = next;
    }
    if spaces.len() != k {
        return Err(CharsError::NoSplitting(p));
    }
    let id_class = class_of[g.identity()];
    let inverse_class: Vec<usize> = classes.iter().map(|m| class_of[g.inv(m[0])]).collect();
    let mut degrees = Vec::with_capacity(k);
    for s in &spaces {
        let v = &s[0];
        let norm = inv_mod(v[id_class], p);
        let omega: Vec<u64> = v.iter().map(|x| x * norm % p).collect();
        let sum = (0..k).fold(0, |acc, l| {
            (acc + omega[l] * omega[inverse_class[l]] % p * inv_mod(classes[l].len() as u64 % p, p)) % p
        });
        if sum == 0 {
            return Err(CharsError::NoSplitting(p));
        }
        let square = n as u64 % p * inv_mod(sum, p) % p;
        let d = (1..).take_while(|d: &u64| d * d <= n as u64).find(|d| d * d % p == square);
        degrees.push(d.ok_or(CharsError::NoSplitting(p))? as u32);
    }
    degrees.sort_unstable();
    Ok(degrees)
}

/// The irreducible character degrees of `g`, memoized by Cayley table.
pub fn character_degrees(g: &FiniteGroup) -> Result<DegreeMultiset, CharsError> {
    if g.order() > CHAR_CAP {
        return Err(CharsError::TooLarge { order: g.order(), cap: CHAR_CAP });
    }
    let key = g.table().to_vec();
    if let Some(d) = cache().lock().expect("cache lock").get(&key) {
        return Ok(DegreeMultiset { group_order: g.order(), degrees: d.clone() });
    }
    let degrees = compute_degrees(g)?;
    cache().lock().expect("cache lock").insert(key, degrees.clone());
    Ok(DegreeMultiset { group_order: g.order(), degrees })
}

/// Counts degrees by `ν_ℓ(|H|) − ν_ℓ(χ(1))`.
pub fn irr_defect_count(h: &DegreeMultiset, ell: u64) -> Result<DefectCount, CharsError> {
    if !is_prime(ell) {
        return Err(ArithError::NotPrime(ell).into());
    }
    let top = nu_ell_int(h.group_order as i64, ell)?;
    let mut out = DefectCount::new();
    for &d in &h.degrees {
        *out.entry(top - nu_ell_int(i64::from(d), ell)?).or_default() += 1;
    }
    Ok(out)
}
