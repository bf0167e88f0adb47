//! ℓ-adic valuations of integers and of values of order polynomials at `x = q`.
//!
//! Roots of unity of order dividing `ℓ - 1` are embedded into `Z_ℓ` by the
//! Teichmüller rule. The embedding is fixed by a [`ZetaSpec`]: the chosen
//! primitive `e`-th root `ζ` maps to the Teichmüller lift of `q mod ℓ`, and
//! every other root of unity is sent compatibly through one primitive root
//! modulo `ℓ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cyclotomic::{cyclotomic_value, Cyclotomic, RootOfUnity};
use super::ArithError;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some(p)` when `n = p^k` for a prime `p` and `k ≥ 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > n {
        return Some(n);
    }
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// Largest `k` with `ℓ^k | n`.
pub fn nu_ell(n: &BigInt, ell: u64) -> Result<u32, ArithError> {
    if n.is_zero() {
        return Err(ArithError::ValuationOfZero);
    }
    if !is_prime(ell) {
        return Err(ArithError::NotPrime(ell));
    }
    let ell = BigInt::from(ell);
    let mut m = n.abs();
    let mut k = 0;
    loop {
        let (quot, rem) = m.div_rem(&ell);
        if !rem.is_zero() {
            return Ok(k);
        }
        m = quot;
        k += 1;
    }
}

/// [`nu_ell`] for machine integers.
pub fn nu_ell_int(n: i64, ell: u64) -> Result<u32, ArithError> {
    nu_ell(&BigInt::from(n), ell)
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut result = 1u128 % m as u128;
    let mut b = base as u128 % m as u128;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

/// Multiplicative order of `a` modulo `m` (`gcd(a, m) = 1`).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    assert!(a.gcd(&m) == 1, "{a} is not a unit modulo {m}");
    if m == 1 {
        return 1;
    }
    let mut k = 1;
    let mut x = a % m;
    while x != 1 {
        x = (x as u128 * a as u128 % m as u128) as u64;
        k += 1;
    }
    k
}

fn primitive_root(ell: u64) -> u64 {
    if ell == 2 {
        return 1;
    }
    (2..ell).find(|&g| multiplicative_order(g, ell) == ell - 1).expect("prime modulus has a primitive root")
}

/// The data `(ℓ, q, e, ζ)` that fixes the Φ-torus theory and the embedding of
/// roots of unity into `Z_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaSpec {
    pub ell: u64,
    pub q: u64,
    /// Order of `q` modulo `ℓ` (modulo 4 when `ℓ = 2`).
    pub e: u32,
    /// Class of `ζ` modulo `ℓ`.
    pub residue: u64,
    /// Set when `e` was overridden rather than derived from `q`.
    pub tainted: bool,
    #[serde(skip)]
    generator: u64,
}

impl ZetaSpec {
    /// Derive `e` and `ζ` from `(q, ℓ)`.
    pub fn new(q: u64, ell: u64) -> Result<Self, ArithError> {
        Self::validate(q, ell)?;
        if ell == 2 {
            let (e, residue) = if q % 4 == 1 { (1, 1) } else { (2, 1) };
            return Ok(ZetaSpec { ell, q, e, residue, tainted: false, generator: 1 });
        }
        let residue = q % ell;
        let e = multiplicative_order(residue, ell) as u32;
        Ok(ZetaSpec { ell, q, e, residue, tainted: false, generator: compatible_generator(ell, e, residue) })
    }

    /// Exploration override: use a ζ of order `e` regardless of `q`.
    pub fn with_order(q: u64, ell: u64, e: u32) -> Result<Self, ArithError> {
        Self::validate(q, ell)?;
        if ell == 2 {
            if e != 1 && e != 2 {
                return Err(ArithError::UnrealizableRoot { order: e, ell });
            }
            return Ok(ZetaSpec { ell, q, e, residue: 1, tainted: true, generator: 1 });
        }
        if e == 0 || !(ell - 1).is_multiple_of(e as u64) {
            return Err(ArithError::UnrealizableRoot { order: e, ell });
        }
        let residue =
            (1..ell).find(|&r| multiplicative_order(r, ell) == e as u64).expect("units mod a prime are cyclic");
        Ok(ZetaSpec { ell, q, e, residue, tainted: true, generator: compatible_generator(ell, e, residue) })
    }

    fn validate(q: u64, ell: u64) -> Result<(), ArithError> {
        if !is_prime(ell) {
            return Err(ArithError::NotPrime(ell));
        }
        if prime_power_base(q).is_none() {
            return Err(ArithError::NotPrimePower(q));
        }
        if q.is_multiple_of(ell) {
            return Err(ArithError::EllDividesQ { ell, q });
        }
        Ok(())
    }

    /// `ζ` as an abstract root of unity.
    pub fn zeta(&self) -> RootOfUnity {
        RootOfUnity::new(1, self.e)
    }

    /// `ζ` as an element of `Q(ζ_e)`.
    pub fn as_cyclotomic(&self) -> Cyclotomic {
        self.zeta().to_cyclotomic(self.e)
    }

    /// Whether a root of unity lies in `Z_ℓ`.
    pub fn realizable(&self, eps: RootOfUnity) -> bool {
        if self.ell == 2 {
            eps.order() <= 2
        } else {
            (self.ell - 1).is_multiple_of(eps.order() as u64)
        }
    }

    /// Residue modulo `ℓ` of the Teichmüller image of `ε`.
    pub fn teichmuller_residue(&self, eps: RootOfUnity) -> Result<u64, ArithError> {
        if !self.realizable(eps) {
            return Err(ArithError::UnrealizableRoot { order: eps.order(), ell: self.ell });
        }
        if self.ell == 2 {
            return Ok(1);
        }
        let step = (self.ell - 1) / eps.order() as u64;
        Ok(pow_mod(self.generator, step * eps.numerator() as u64, self.ell))
    }
}

/// A primitive root `g` mod `ℓ` with `g^((ℓ-1)/e) ≡ residue`.
fn compatible_generator(ell: u64, e: u32, residue: u64) -> u64 {
    let g = primitive_root(ell);
    let e = e as u64;
    let base = pow_mod(g, (ell - 1) / e, ell);
    let j = (1..=e).find(|&j| j.gcd(&e) == 1 && pow_mod(base, j, ell) == residue).expect("residue has order e");
    let mut jj = j;
    while jj.gcd(&(ell - 1)) != 1 {
        jj += e;
    }
    pow_mod(g, jj, ell)
}

/// `ν_ℓ(q^d - ε)` for `ε` realizable in `Z_ℓ`.
pub fn nu_ell_factor(d: u32, eps: RootOfUnity, ctx: &ZetaSpec) -> Result<u32, ArithError> {
    let residue = ctx.teichmuller_residue(eps)?;
    let q = BigInt::from(ctx.q);
    let ell = ctx.ell;
    if ell == 2 {
        let eps_int = if eps.is_one() { BigInt::one() } else { -BigInt::one() };
        return nu_ell(&(q.pow(d) - eps_int), ell);
    }
    if pow_mod(ctx.q, d as u64, ell) != residue {
        return Ok(0);
    }
    let x = q.pow(d * (ell as u32 - 1));
    nu_ell(&(x - BigInt::one()), ell)
}

/// `ν_ℓ(Φ_m(q))` by literal evaluation.
pub fn nu_ell_cyclotomic_value(m: u32, q: u64, ell: u64) -> Result<u32, ArithError> {
    nu_ell(&cyclotomic_value(m, &BigInt::from(q)), ell)
}

/// `x^N · ∏ ε_i^{-2}(x^{d_i} - ε_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredOrderPoly {
    pub x_power: u32,
    pub factors: Vec<(u32, RootOfUnity)>,
    pub scalar: RootOfUnity,
}

impl FactoredOrderPoly {
    pub fn new(x_power: u32, mut factors: Vec<(u32, RootOfUnity)>) -> Self {
        factors.sort();
        let scalar = factors.iter().fold(RootOfUnity::one(), |acc, (_, eps)| acc.mul(&eps.pow(-2)));
        FactoredOrderPoly { x_power, factors, scalar }
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn degree(&self) -> u32 {
        self.x_power + self.factors.iter().map(|(d, _)| d).sum::<u32>()
    }
}

impl fmt::Display for FactoredOrderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self.x_power {
            0 => {}
            1 => out.push('x'),
            n => out.push_str(&format!("x^{n}")),
        }
        let mut i = 0;
        while i < self.factors.len() {
            let (d, eps) = &self.factors[i];
            let run = self.factors[i..].iter().take_while(|f| *f == &self.factors[i]).count();
            i += run;
            let xd = if *d == 1 { "x".to_string() } else { format!("x^{d}") };
            let term = if eps.is_one() {
                format!("({xd}-1)")
            } else if *eps == RootOfUnity::minus_one() {
                format!("({xd}+1)")
            } else {
                format!("({xd}-{eps})")
            };
            out.push_str(&term);
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        if !self.scalar.is_one() {
            out = format!("{}*{out}", self.scalar);
        }
        write!(f, "{out}")
    }
}

/// `ν_ℓ(|G|(q))`; the `x`-power contributes nothing since `ℓ ∤ q`.
pub fn eval_order_poly_valuation(p: &FactoredOrderPoly, ctx: &ZetaSpec) -> Result<u32, ArithError> {
    p.factors.iter().map(|&(d, eps)| nu_ell_factor(d, eps, ctx)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(q: u64, ell: u64) -> ZetaSpec {
        ZetaSpec::new(q, ell).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(nu_ell_int(63, 3).unwrap(), 2);
        assert_eq!(nu_ell_int(5, 3).unwrap(), 0);
        assert_eq!(nu_ell_int(-24, 2).unwrap(), 3);
        assert_eq!(nu_ell_int(0, 3), Err(ArithError::ValuationOfZero));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(nu_ell_factor(1, RootOfUnity::minus_one(), &ctx(2, 3)).unwrap(), 1);
        assert_eq!(nu_ell_factor(1, RootOfUnity::one(), &ctx(2, 3)).unwrap(), 0);
        assert_eq!(nu_ell_factor(3, RootOfUnity::one(), &ctx(2, 7)).unwrap(), 1);
        // E(3) is not in Z_5
        assert!(matches!(
            nu_ell_factor(1, RootOfUnity::new(1, 3), &ctx(2, 5)),
            Err(ArithError::UnrealizableRoot { .. })
        ));
    }

    #[test]
    fn order_poly_examples() {
        let a1 = FactoredOrderPoly::new(1, vec![(2, RootOfUnity::one())]);
        assert_eq!(eval_order_poly_valuation(&a1, &ctx(2, 3)).unwrap(), 1);
        let torus = FactoredOrderPoly::new(0, vec![(1, RootOfUnity::one())]);
        assert_eq!(eval_order_poly_valuation(&torus, &ctx(2, 3)).unwrap(), 0);
        let a2 = FactoredOrderPoly::new(3, vec![(2, RootOfUnity::one()), (3, RootOfUnity::one())]);
        assert_eq!(eval_order_poly_valuation(&a2, &ctx(2, 7)).unwrap(), 1);
        assert_eq!(a2.degree(), 8);
        assert_eq!(a2.to_string(), "x^3(x^2-1)(x^3-1)");
    }

    #[test]
    fn zeta_choices() {
        let z = ctx(2, 3);
        assert_eq!((z.e, z.residue), (2, 2));
        assert_eq!(z.as_cyclotomic(), Cyclotomic::from_int(2, -1));
        let z = ctx(4, 3);
        assert_eq!((z.e, z.residue), (1, 1));
        let z = ctx(2, 7);
        assert_eq!((z.e, z.residue), (3, 2));
        assert_eq!(z.teichmuller_residue(z.zeta()).unwrap(), 2);
        assert_eq!(z.teichmuller_residue(z.zeta().pow(2)).unwrap(), 4);
        let z = ctx(3, 2);
        assert_eq!(z.e, 2);
        let z = ctx(5, 2);
        assert_eq!(z.e, 1);
        assert!(matches!(ZetaSpec::new(2, 2), Err(ArithError::EllDividesQ { .. })));
        assert!(matches!(ZetaSpec::new(6, 5), Err(ArithError::NotPrimePower(6))));
    }

    #[test]
    fn teichmuller_is_a_homomorphism() {
        for (q, ell) in [(2, 7), (2, 13), (3, 13), (2, 5), (5, 31)] {
            let z = ctx(q, ell);
            for n in 1..ell as u32 {
                if (ell - 1) % n as u64 != 0 {
                    continue;
                }
                for a in 0..n {
                    for b in 0..n {
                        let x = RootOfUnity::new(a as i64, n);
                        let y = RootOfUnity::new(b as i64, n);
                        let lhs = z.teichmuller_residue(x.mul(&y)).unwrap();
                        let rhs = z.teichmuller_residue(x).unwrap() * z.teichmuller_residue(y).unwrap() % ell;
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    // Classical case formula for ν_ℓ(Φ_m(q)), ℓ odd.
    fn classical(m: u32, q: u64, ell: u64) -> u32 {
        let e = multiplicative_order(q % ell, ell) as u32;
        if m == e {
            return nu_ell(&(BigInt::from(q).pow(e) - 1), ell).unwrap();
        }
        let mut k = m;
        if !k.is_multiple_of(e) {
            return 0;
        }
        k /= e;
        let mut power = 0;
        while k.is_multiple_of(ell as u32) {
            k /= ell as u32;
            power += 1;
        }
        if k == 1 && power >= 1 {
            1
        } else {
            0
        }
    }

    proptest! {
        #[test]
        fn valuation_is_maximal(n in -100_000i64..100_000, idx in 0usize..6) {
            prop_assume!(n != 0);
            let ell = [2u64, 3, 5, 7, 11, 13][idx];
            let k = nu_ell_int(n, ell).unwrap();
            let p = BigInt::from(ell).pow(k);
            prop_assert!((BigInt::from(n) % &p).is_zero());
            prop_assert!(!(BigInt::from(n) % (p * ell)).is_zero());
        }

        #[test]
        fn factor_formula_matches_direct_evaluation(d in 1u32..12, minus in any::<bool>(), qi in 0usize..6, li in 0usize..6) {
            let q = [2u64, 3, 4, 5, 7, 9][qi];
            let ell = [2u64, 3, 5, 7, 11, 13][li];
            prop_assume!(!q.is_multiple_of(ell));
            let z = ctx(q, ell);
            let eps = if minus { RootOfUnity::minus_one() } else { RootOfUnity::one() };
            let direct = BigInt::from(q).pow(d) - if minus { BigInt::from(-1) } else { BigInt::from(1) };
            prop_assert_eq!(nu_ell_factor(d, eps, &z).unwrap(), nu_ell(&direct, ell).unwrap());
        }

        #[test]
        fn cyclotomic_values_follow_the_classical_formula(m in 1u32..40, qi in 0usize..5, li in 0usize..5) {
            let q = [2u64, 3, 4, 5, 8][qi];
            let ell = [3u64, 5, 7, 11, 13][li];
            prop_assume!(!q.is_multiple_of(ell));
            prop_assert_eq!(nu_ell_cyclotomic_value(m, q, ell).unwrap(), classical(m, q, ell));
        }
    }
}
