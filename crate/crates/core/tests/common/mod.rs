#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;
use std::sync::Arc;

use spets::arith::ZetaSpec;
use spets::levi::LeviPoset;
use spets::refl::{builtin_coset, ReflectionCoset};

/// The cosets exercised end to end: type, ℓ, q.
pub const TEST_COSETS: [(&str, u64, u64); 5] = [("A1", 3, 2), ("A2", 7, 2), ("B2", 5, 2), ("G2", 7, 2), ("2A2", 7, 2)];

pub fn coset(t: &str) -> Arc<ReflectionCoset> {
    let (gens, phi) = builtin_coset(t, "id").unwrap();
    Arc::new(ReflectionCoset::new(gens, phi).unwrap())
}

pub fn levi_poset(t: &str, ell: u64, q: u64) -> LeviPoset {
    LeviPoset::enumerate(coset(t), ZetaSpec::new(q, ell).unwrap()).unwrap()
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}
