//! Finite reflection groups, reflection cosets and their generalized degrees.

pub mod cartan;
pub mod coset;
pub mod group;
pub mod molien;

use thiserror::Error;

use crate::arith::{ArithError, Cyclotomic, SubspaceCF};

pub use cartan::builtin_coset;
pub use coset::ReflectionCoset;
pub use group::{generate_group, FiniteGroup, Mat};
pub use molien::generalized_degrees;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflError {
    #[error("group too large or infinite (cap {cap})")]
    TooLarge { cap: usize },
    #[error("generator not invertible over the rationals")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("element list is not closed under multiplication")]
    NotClosed,
    #[error("twist does not normalise W")]
    NotNormalizing,
    #[error("twist has infinite or excessive order")]
    TwistOrder,
    #[error("not a reflection coset: {0}")]
    NotReflectionCoset(String),
    #[error("unknown type: {0}")]
    UnknownType(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// `ker(m - c·1)` over the field of `c`.
pub fn eigenspace(m: &Mat, c: &Cyclotomic) -> SubspaceCF {
    let n = m.dim();
    let k = c.conductor();
    let rows: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = Cyclotomic::from_int(k, m.get(i, j));
                    if i == j {
                        x.sub(c)
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    SubspaceCF::kernel_of(k, &rows)
}
