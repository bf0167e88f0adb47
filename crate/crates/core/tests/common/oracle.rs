//! Brute-force enumeration of e-split Levis over every coset element and every
//! intersection of reflecting hyperplanes, in exact rational arithmetic.
//!
//! A subspace of `E_ζ(a)` is replaced by the sum of its Galois conjugates, the
//! `a`-stable rational subspace of `ker Φ_e(a)` it spans; both have the same
//! pointwise stabilizer in `W`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use spets::arith::{RootOfUnity, ZetaSpec};
use spets::refl::Mat;

type Row = Vec<BigRational>;

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn to_rows(m: &[Vec<i64>]) -> Vec<Row> {
    m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

/// Basis of `{v : m v = 0}`.
fn kernel(m: &[Row], n: usize) -> Vec<Row> {
    let mut a: Vec<Row> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = BigRational::one() / a[r][c].clone();
        a[r] = a[r].iter().map(|x| x * &inv).collect();
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                a[i] = (0..n).map(|j| &a[i][j] - &f * &a[r][j]).collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][free].clone();
            }
            v
        })
        .collect()
}

fn mat_poly(m: &Mat, coeffs: &[i64]) -> Vec<Vec<i64>> {
    let n = m.dim();
    let mut acc = vec![vec![0i64; n]; n];
    let mut power = Mat::identity(n);
    for &c in coeffs {
        for (i, row) in acc.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x += c * power.get(i, j);
            }
        }
        power = power.mul(m);
    }
    acc
}

/// Coefficients of `Φ_e`, constant term first.
fn cyclotomic(e: u32) -> Vec<i64> {
    match e {
        1 => vec![-1, 1],
        2 => vec![1, 1],
        3 => vec![1, 1, 1],
        4 => vec![1, 0, 1],
        6 => vec![1, -1, 1],
        _ => panic!("Φ_{e} not needed here"),
    }
}

fn fixes(w: &Mat, v: &Row) -> bool {
    (0..w.dim()).all(|i| (0..w.dim()).map(|j| rat(w.get(i, j)) * &v[j]).sum::<BigRational>() == v[i])
}

/// `(sorted P, least index of P·w)` for every e-split Levi.
pub fn levi_oracle(t: &str, ell: u64, q: u64) -> BTreeSet<(Vec<usize>, usize)> {
    let poset = super::levi_poset(t, ell, q);
    let c = poset.coset();
    let n = c.rank();
    let phi_e = cyclotomic(poset.zeta().e);
    let reflections: Vec<usize> = (0..c.order()).filter(|&i| c.element(i).corank_of_fixed_space() == 1).collect();
    let hyperplane = |s: usize| -> Vec<Row> {
        let m = c.element(s);
        (0..n).map(|i| (0..n).map(|j| rat(m.get(i, j) - i64::from(i == j))).collect()).collect()
    };
    let mut out = BTreeSet::new();
    for w in 0..c.order() {
        let a = c.coset_element(w);
        let base = to_rows(&mat_poly(&a, &phi_e));
        let powers: Vec<Mat> = (0..a.order(1_000).unwrap()).map(|k| a.pow(k)).collect();
        for mask in 0u32..(1 << reflections.len()) {
            // the largest a-stable subspace of ker Φ_e(a) inside the hyperplanes
            let mut eqs = base.clone();
            for (k, &s) in reflections.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    for h in hyperplane(s) {
                        for ak in &powers {
                            eqs.push((0..n).map(|j| (0..n).map(|i| &h[i] * rat(ak.get(i, j))).sum()).collect());
                        }
                    }
                }
            }
            let v = kernel(&eqs, n);
            let p: Vec<usize> = (0..c.order()).filter(|&x| v.iter().all(|b| fixes(c.element(x), b))).collect();
            let rep = p.iter().map(|&x| c.mul(x, w)).min().unwrap();
            out.insert((p, rep));
        }
    }
    out
}

pub fn enumerated(t: &str, ell: u64, q: u64) -> BTreeSet<(Vec<usize>, usize)> {
    let poset = super::levi_poset(t, ell, q);
    poset.nodes().iter().map(|l| (l.parabolic.clone(), l.rep)).collect()
}

/// Working precision `ℓ^K` for direct valuations; results must stay below `K`.
pub const K: u32 = 40;

fn valuation_mod(x: &BigInt, ell: u64, modulus: &BigInt) -> u32 {
    let mut x = ((x % modulus) + modulus) % modulus;
    if x.is_zero() {
        return K;
    }
    let ell = BigInt::from(ell);
    let mut v = 0;
    while (&x % &ell).is_zero() {
        x /= &ell;
        v += 1;
    }
    v
}

/// `ν_ℓ(q^d - ε̃)` with `ε̃` the Teichmüller lift, computed modulo `ℓ^K`.
pub fn direct_factor_valuation(d: u32, eps: RootOfUnity, ctx: &ZetaSpec) -> u32 {
    let ell = ctx.ell;
    let modulus = BigInt::from(ell).pow(K);
    let lift = if ell == 2 {
        if eps.is_one() {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    } else {
        let r = BigInt::from(ctx.teichmuller_residue(eps).unwrap());
        r.modpow(&BigInt::from(ell).pow(K - 1), &modulus)
    };
    valuation_mod(&(BigInt::from(ctx.q).pow(d) - lift), ell, &modulus)
}
