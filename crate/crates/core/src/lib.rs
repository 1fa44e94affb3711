//! Exact clump statistics of reduced word sets in random texts.

// Index loops mirror the matrix notation they implement.
#![allow(clippy::needless_range_loop)]

pub mod asymptotics;
pub mod automaton;
pub mod cli;
pub mod clump_gf;
pub mod correlation;
pub mod error;
pub mod languages;
pub mod model;
pub mod oracle;
pub mod symbolic;

pub use error::{Error, Result};
pub use model::{Alphabet, ReducedWordSet, TextModel, Word};

/// Exact rational numbers used for every probability and coefficient.
pub type Q = num_rational::BigRational;
