//! A layer-based text language for string diagrams and an expression language
//! for bimodule elements.
//!
//! ```text
//! N = 1
//! weight = -1        # the rightmost region
//! domain = E         # strands left to right, or 1 for none
//! layer: id_e cup_fe # bottom layer first
//! layer: cap_ef id_e
//! ```

mod ast;
mod compile;
mod element;
mod parse;
mod random;

pub use ast::{DiagramAst, Spanned, Strand, Token};
pub use compile::{compile_diagram, CompiledDiagram};
pub use element::{parse_element, parse_polynomial};
pub use parse::{parse_diagram, render_diagram};
pub use random::random_diagram;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// One-based line and column range of a piece of source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SourceSpan {
    pub line: usize,
    pub col_start: usize,
    pub col_end: usize,
}

impl SourceSpan {
    pub fn new(line: usize, col_start: usize, col_end: usize) -> Self {
        SourceSpan { line, col_start, col_end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, columns {}-{}", self.line, self.col_start, self.col_end)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DslErrorKind {
    Lexical,
    UnknownToken,
    Header,
    StrandCount,
    Orientation,
    Generator,
    FactorCount,
    Compile,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{span}: {message}")]
pub struct DslError {
    pub kind: DslErrorKind,
    pub span: SourceSpan,
    pub message: String,
}

impl DslError {
    pub fn new(kind: DslErrorKind, span: SourceSpan, message: impl Into<String>) -> Self {
        DslError { kind, span, message: message.into() }
    }
}

#[cfg(test)]
mod tests;
