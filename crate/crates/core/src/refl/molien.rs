//! Twisted Molien series and generalized degrees of a coset `Wφ`.
//!
//! `S_k(t) = (1/|W|) Σ_w 1/det(1 - t·wφ^k)` equals `∏_i 1/(1 - ε_i^k t^{d_i})`.
//! The degrees come from `S_0` by greedy extraction; the multiset of `ε` at each
//! degree is recovered from the power sums `Σ ε_i^k` read off the `S_k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::group::Mat;
use super::ReflError;
use crate::arith::{Cyclotomic, RootOfUnity};

const TWIST_ORDER_CAP: usize = 1_000;

/// Power series of `1/det(1 - t g)` up to `t^degree`.
fn inverse_det_series(g: &Mat, degree: usize) -> Vec<i128> {
    let c = g.det_one_minus_t();
    let mut out = vec![0i128; degree + 1];
    out[0] = 1;
    for j in 1..=degree {
        let mut acc = 0i128;
        for (k, &ck) in c.iter().enumerate().skip(1) {
            if k > j {
                break;
            }
            acc -= ck * out[j - k];
        }
        out[j] = acc;
    }
    out
}

/// `S_k` truncated at `t^degree`; the entries are integers.
pub fn molien_series(group: &[Mat], twist: &Mat, k: usize, degree: usize) -> Result<Vec<i128>, ReflError> {
    let tk = twist.pow(k);
    let mut sum = vec![0i128; degree + 1];
    for w in group {
        for (s, x) in sum.iter_mut().zip(inverse_det_series(&w.mul(&tk), degree)) {
            *s += x;
        }
    }
    let n = group.len() as i128;
    sum.into_iter()
        .map(|s| {
            if s % n == 0 {
                Ok(s / n)
            } else {
                Err(ReflError::NotReflectionCoset("non-integral Molien coefficient".into()))
            }
        })
        .collect()
}

fn series_times_binomial(series: &mut [Cyclotomic], d: usize, eps: &Cyclotomic) {
    // series ← series · (1 - eps t^d)
    for j in (d..series.len()).rev() {
        let shifted = series[j - d].mul(eps);
        series[j] = series[j].sub(&shifted);
    }
}

/// The multiset `(d_i, ε_i)` for the coset `group · twist`, sorted.
pub fn generalized_degrees(group: &[Mat], twist: &Mat) -> Result<Vec<(u32, RootOfUnity)>, ReflError> {
    let r = twist.dim();
    let n_refl = group.iter().filter(|w| w.corank_of_fixed_space() == 1).count();
    let order = twist.order(TWIST_ORDER_CAP).ok_or(ReflError::TwistOrder)?;
    let bound = 2 * n_refl + r + 1;

    // degrees from the untwisted series
    let s0 = molien_series(group, &Mat::identity(r), 0, bound)?;
    let mut residual: Vec<BigInt> = s0.iter().map(|&x| BigInt::from(x)).collect();
    let mut degrees: Vec<(usize, usize)> = Vec::new();
    for j in 1..=bound {
        let c = residual[j].clone();
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            return Err(ReflError::NotReflectionCoset(format!("negative coefficient at degree {j}")));
        }
        let m: usize = c.try_into().map_err(|_| ReflError::NotReflectionCoset("huge multiplicity".into()))?;
        for _ in 0..m {
            for i in (j..=bound).rev() {
                let prev = residual[i - j].clone();
                residual[i] -= prev;
            }
        }
        degrees.push((j, m));
    }
    let total: usize = degrees.iter().map(|&(_, m)| m).sum();
    let excess: usize = degrees.iter().map(|&(d, m)| (d - 1) * m).sum();
    if total != r || excess != n_refl {
        return Err(ReflError::NotReflectionCoset(format!(
            "found {total} degrees with excess {excess}, expected {r} and {n_refl}"
        )));
    }

    // ε multisets from power sums over twist powers
    let o = order as u32;
    let mut series: Vec<Vec<Cyclotomic>> = (0..order)
        .map(|k| {
            molien_series(group, twist, k, bound)
                .map(|s| s.into_iter().map(|x| Cyclotomic::from_int(o, x as i64)).collect())
        })
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for &(d, m) in &degrees {
        let sums: Vec<Cyclotomic> = series.iter().map(|s| s[d].clone()).collect();
        let mut found = 0;
        for a in 0..order {
            let mut acc = Cyclotomic::zero(o);
            for (k, p) in sums.iter().enumerate() {
                let exp = (order * order - a * k) % order;
                acc = acc.add(&p.mul(&Cyclotomic::zeta_power(o, exp as u64)));
            }
            let mult = acc
                .as_rational()
                .map(|x| x / BigRational::from_integer(BigInt::from(order)))
                .filter(|x| x.is_integer() && !x.is_negative())
                .ok_or_else(|| ReflError::NotReflectionCoset(format!("bad eigenvalue multiplicity at degree {d}")))?;
            let mult: usize = mult.to_integer().try_into().expect("small multiplicity");
            let eps = RootOfUnity::new(a as i64, o);
            for _ in 0..mult {
                out.push((d as u32, eps));
                for (k, s) in series.iter_mut().enumerate() {
                    series_times_binomial(s, d, &eps.pow(k as i64).to_cyclotomic(o));
                }
            }
            found += mult;
        }
        if found != m {
            return Err(ReflError::NotReflectionCoset(format!("degree {d}: {found} eigenvalues for multiplicity {m}")));
        }
    }
    for s in &series {
        if !s[0].is_one() || s[1..].iter().any(|x| !x.is_zero()) {
            return Err(ReflError::NotReflectionCoset(
                "product of degree factors does not reproduce the series".into(),
            ));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refl::cartan::builtin_coset;
    use crate::refl::group::{generate_group, DEFAULT_ORDER_CAP};

    fn degrees(name: &str, twist: &str) -> Vec<(u32, RootOfUnity)> {
        let (gens, phi) = builtin_coset(name, twist).unwrap();
        let w = generate_group(&gens, DEFAULT_ORDER_CAP).unwrap();
        generalized_degrees(&w, &phi).unwrap()
    }

    fn plain(ds: &[u32]) -> Vec<(u32, RootOfUnity)> {
        ds.iter().map(|&d| (d, RootOfUnity::one())).collect()
    }

    #[test]
    fn untwisted_degrees() {
        assert_eq!(degrees("A1", "id"), plain(&[2]));
        assert_eq!(degrees("A2", "id"), plain(&[2, 3]));
        assert_eq!(degrees("A3", "id"), plain(&[2, 3, 4]));
        assert_eq!(degrees("B2", "id"), plain(&[2, 4]));
        assert_eq!(degrees("B3", "id"), plain(&[2, 4, 6]));
        assert_eq!(degrees("G2", "id"), plain(&[2, 6]));
    }

    #[test]
    fn trivial_group_and_tori() {
        let id = Mat::identity(2);
        assert_eq!(generalized_degrees(std::slice::from_ref(&id), &id).unwrap(), plain(&[1, 1]));
        let minus = Mat::from_rows(&[vec![-1]]).unwrap();
        assert_eq!(generalized_degrees(&[Mat::identity(1)], &minus).unwrap(), vec![(1, RootOfUnity::minus_one())]);
        let c3 = Mat::from_rows(&[vec![0, -1], vec![1, -1]]).unwrap();
        assert_eq!(
            generalized_degrees(&[Mat::identity(2)], &c3).unwrap(),
            vec![(1, RootOfUnity::new(1, 3)), (1, RootOfUnity::new(2, 3))]
        );
    }

    #[test]
    fn twisted_a2() {
        assert_eq!(degrees("2A2", "id"), vec![(2, RootOfUnity::one()), (3, RootOfUnity::minus_one())]);
        assert_eq!(degrees("A1", "graph"), plain(&[2]));
    }
}
