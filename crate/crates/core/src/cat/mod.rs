//! Finite categories, chain orbits, simplicial complexes and their homology,
//! and the Bux–Morse contractibility criterion.

pub mod bux;
pub mod category;
pub mod chains;
pub mod complex;
pub mod subdivision;

use thiserror::Error;

pub use bux::{bux_check, BuxReport, DirectedGGraph};
pub use category::{comma_category, is_filtered, transporter_category, FilteredWitness, FinCategory, Functor};
pub use chains::{chain_orbit_poset, chain_orbits, orbit_complex, ChainMode, ChainOrbit, ChainOrbitPoset, GPoset};
pub use complex::{HomologyReport, SimplicialComplex};
pub use subdivision::{poset_isomorphism, subdivision_class_poset, SubdivisionPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("invalid category data: {0}")]
    Invalid(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("category is not EI")]
    NotEi,
    #[error("too many objects for the subdivision category: {0}")]
    TooLarge(usize),
}
