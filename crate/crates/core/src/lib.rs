//! Exact computations for finite reflection cosets: e-split Levi posets and
//! their transporter categories, chain-orbit complexes with integral homology,
//! the Morse transitivity criterion, small character tables and unipotent
//! defect counts along chains of Levis.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cat;
pub mod chars;
pub mod cli;
pub mod dade;
pub mod levi;
pub mod refl;
