//! Exact arithmetic: cyclotomic numbers, ℓ-adic valuations, integral Smith
//! normal form and echelonized subspaces over cyclotomic fields.

pub mod cyclotomic;
pub mod snf;
pub mod subspace;
pub mod valuation;

use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, cyclotomic_value, totient, Cyclotomic, RootOfUnity};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
pub use subspace::{subspace_canonicalize, subspace_intersect, subspace_leq, SubspaceCF};
pub use valuation::{
    eval_order_poly_valuation, is_prime, multiplicative_order, nu_ell, nu_ell_cyclotomic_value, nu_ell_factor,
    nu_ell_int, FactoredOrderPoly, ZetaSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("ell = {ell} divides q = {q}")]
    EllDividesQ { ell: u64, q: u64 },
    #[error("epsilon not realizable in Z_ell: root of order {order} with ell = {ell}")]
    UnrealizableRoot { order: u32, ell: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
}
