//! Cuspidal pairs, relative Weyl groups of chains, unipotent defect counts and
//! the alternating-sum identity over chains of e-split Levi subcosets.

pub mod dataset;
pub mod involution;
pub mod pairs;
pub mod verify;

use thiserror::Error;

use crate::arith::ArithError;
use crate::chars::CharsError;
use crate::levi::LeviError;

pub use dataset::{ingest_dataset, parse_dataset, DatasetFile};
pub use involution::{cancellation_involution, InvolutionReport};
pub use pairs::{relative_weyl_group, DataMode, Pair, PairUniverse};
pub use verify::{k_u, k_u_chain, k_uc, verify_dade, KReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DadeError {
    #[error("non-toric minimal Levi: dataset required (node {0})")]
    NonToricMinimal(usize),
    #[error("unresolvable Levi class: {0}")]
    UnresolvableLevi(String),
    #[error("defect mismatch for label {label}: declared {declared}, degree polynomial gives {computed}")]
    DefectMismatch { label: String, declared: u32, computed: u32 },
    #[error("dataset schema: {0}")]
    Schema(String),
    #[error("Levi {levi} is not below the minimal term {bottom} of the chain")]
    NotBelowChain { levi: usize, bottom: usize },
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error(transparent)]
    Levi(#[from] LeviError),
    #[error(transparent)]
    Chars(#[from] CharsError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
