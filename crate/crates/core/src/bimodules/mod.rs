//! Iterated one-step bimodules `H_{k_0,k_1} (x) ... (x) H_{k_{m-1},k_m}` in normal form.
//!
//! Each one-step ring is free over its right ring with basis `1, xi, ..., xi^bound`,
//! so an element is a finite map from bounded exponent vectors to polynomials in
//! the target ring `H_{k_m}`. Exponent vectors are stored in path order (source
//! side first); text renders them in diagram order, which is the reverse.

mod element;
mod factor;
mod path;
mod random;
pub mod rewrite;

pub use element::{graded_rank, normalize, BimElement, Exponents, RawTensor, Side};
pub(crate) use element::{push_through, xi_powers};
pub use factor::{FactorAlgebra, FactorElem};
pub use path::{FlagPath, ShiftConvention, Step};
pub use random::{random_raw_tensor, random_ring_element, short_paths};
pub use rewrite::{rewrite_normalize, RewriteStats, Strategy};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BimError {
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("paths do not match: {left} vs {right}")]
    PathMismatch { left: String, right: String },
    #[error("expected {expected} tensor factors, found {found}")]
    FactorCount { expected: usize, found: usize },
    #[error("generator {symbol} does not belong to {place}")]
    ForeignSymbol { symbol: String, place: String },
    #[error("not in normal form: {0}")]
    NotNormal(String),
    #[error("rewriting did not terminate: {0}")]
    RewriteDiverged(String),
}

#[cfg(test)]
mod tests;
