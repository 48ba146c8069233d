//! Images of the generating 2-morphisms as bimodule maps, with composition,
//! whiskering, degree measurement and equality checking.

mod checks;
mod generators;
mod map;

pub use checks::{check_bimodule_law, check_well_defined, map_equals, EqualityReport};
pub use generators::{Generator, GeneratorKind, Turn};
pub use map::{BimMap, MeasuredDegree};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bimodules::{BimError, FlagPath, ShiftConvention};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Bimodule(#[from] BimError),
    #[error("maps do not compose: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
    #[error("generator expects {expected} factors, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("junction {junction} is outside a path with {len} factors")]
    Junction { junction: usize, len: usize },
    #[error("ring mismatch: {0}")]
    Ring(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("weight {weight} has the wrong parity for N = {n_total}")]
    Parity { n_total: u32, weight: i64 },
}

/// A word in `E`, `F` (diagram order, leftmost letter acts last) applied to the weight `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedWord {
    pub letters: Vec<char>,
    pub weight: i64,
}

impl SignedWord {
    pub fn new(letters: &str, weight: i64) -> Self {
        SignedWord { letters: letters.chars().filter(|c| !c.is_whitespace()).collect(), weight }
    }
}

/// The path of a word. If some intermediate ring leaves `0..=N` the returned
/// path reports [`FlagPath::is_zero`].
pub fn compile_word(w: &SignedWord, n_total: u32, convention: ShiftConvention) -> Result<FlagPath, MapError> {
    let n = n_total as i64;
    if (w.weight + n).rem_euclid(2) != 0 {
        return Err(MapError::Parity { n_total, weight: w.weight });
    }
    Ok(FlagPath::from_word(n_total, &w.letters, (w.weight + n) / 2, convention)?)
}

#[cfg(test)]
mod tests;
