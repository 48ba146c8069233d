use std::fmt;

use serde::{Deserialize, Serialize};

use super::BimError;
use crate::grassrings::GrassContext;

/// How grading shifts are attached to the one-step bimodules.
///
/// Both conventions give `E` leaving `H_k` the shift `{1-N+k}`. They differ on `F`
/// leaving `H_k`: `TheoremProof` uses `{1-k}` (so that an `E`/`F` pair carries
/// `{1-N}` exactly as the cup targets do), `Table` reads the tabulated `{s+1-k}`
/// with `k` the lower ring, i.e. `{2-k}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShiftConvention {
    #[default]
    TheoremProof,
    Table,
}

impl ShiftConvention {
    pub fn step_shift(self, n_total: u32, from: i64, to: i64) -> i64 {
        let n = n_total as i64;
        if to == from + 1 {
            1 - n + from
        } else {
            match self {
                ShiftConvention::TheoremProof => 1 - from,
                ShiftConvention::Table => 2 - from,
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ShiftConvention::TheoremProof => "theorem-proof",
            ShiftConvention::Table => "table",
        }
    }
}

/// One tensor factor of a path: the ring between `H_lower` and `H_{lower+1}`,
/// read upward (`E`) or downward (`F`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub n_total: u32,
    pub lower: u32,
    pub up: bool,
}

impl Step {
    /// Largest exponent of `xi` in the free basis over the right ring.
    pub fn bound(&self) -> u32 {
        if self.up {
            self.lower
        } else {
            self.n_total - self.lower - 1
        }
    }

    pub fn lower_ctx(&self) -> GrassContext {
        GrassContext::new(self.n_total as i64, self.lower as i64).expect("step inside range")
    }

    pub fn upper_ctx(&self) -> GrassContext {
        GrassContext::new(self.n_total as i64, self.lower as i64 + 1).expect("step inside range")
    }

    /// The ring the factor is a free module over.
    pub fn right_ctx(&self) -> GrassContext {
        if self.up {
            self.upper_ctx()
        } else {
            self.lower_ctx()
        }
    }

    pub fn left_ctx(&self) -> GrassContext {
        if self.up {
            self.lower_ctx()
        } else {
            self.upper_ctx()
        }
    }

    pub fn letter(&self) -> char {
        if self.up {
            'E'
        } else {
            'F'
        }
    }
}

/// A sequence of rings `(k_0, ..., k_m)` with unit steps and a grading shift.
///
/// `k_0` is the source, i.e. the ring acting on the left of the tensor product and
/// the rightmost region of the diagram. Rings outside `0..=N` are allowed and make
/// the path denote the zero bimodule.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagPath {
    n_total: u32,
    rings: Vec<i64>,
    shift: i64,
}

impl FlagPath {
    pub fn new(n_total: u32, rings: Vec<i64>, shift: i64) -> Result<Self, BimError> {
        if n_total == 0 {
            return Err(BimError::InvalidPath("N must be positive".into()));
        }
        if rings.is_empty() {
            return Err(BimError::InvalidPath("a path needs at least one ring".into()));
        }
        if rings.windows(2).any(|w| (w[1] - w[0]).abs() != 1) {
            return Err(BimError::InvalidPath(format!("steps of {rings:?} are not all +-1")));
        }
        Ok(FlagPath { n_total, rings, shift })
    }

    /// Path with the shift prescribed by `convention`.
    pub fn with_convention(n_total: u32, rings: Vec<i64>, convention: ShiftConvention) -> Result<Self, BimError> {
        let shift = rings
            .windows(2)
            .map(|w| convention.step_shift(n_total, w[0], w[1]))
            .sum();
        FlagPath::new(n_total, rings, shift)
    }

    /// Path with the default shift convention.
    pub fn natural(n_total: u32, rings: Vec<i64>) -> Result<Self, BimError> {
        FlagPath::with_convention(n_total, rings, ShiftConvention::default())
    }

    pub fn identity(ctx: GrassContext) -> Self {
        FlagPath { n_total: ctx.n_total(), rings: vec![ctx.k() as i64], shift: 0 }
    }

    /// Reads a display word (leftmost letter acts last) starting from `source`.
    pub fn from_word(
        n_total: u32,
        letters: &[char],
        source: i64,
        convention: ShiftConvention,
    ) -> Result<Self, BimError> {
        let mut rings = vec![source];
        for &c in letters.iter().rev() {
            let last = *rings.last().unwrap();
            match c {
                'E' => rings.push(last + 1),
                'F' => rings.push(last - 1),
                other => return Err(BimError::InvalidPath(format!("unknown letter {other}"))),
            }
        }
        FlagPath::with_convention(n_total, rings, convention)
    }

    pub fn n_total(&self) -> u32 {
        self.n_total
    }

    pub fn rings(&self) -> &[i64] {
        &self.rings
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn with_shift(&self, shift: i64) -> FlagPath {
        FlagPath { shift, ..self.clone() }
    }

    /// Number of tensor factors `m`.
    pub fn len(&self) -> usize {
        self.rings.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn source(&self) -> i64 {
        self.rings[0]
    }

    pub fn target(&self) -> i64 {
        *self.rings.last().unwrap()
    }

    /// True when some ring lies outside `0..=N`.
    pub fn is_zero(&self) -> bool {
        self.rings.iter().any(|&k| k < 0 || k > self.n_total as i64)
    }

    pub fn ring_ctx(&self, i: usize) -> Option<GrassContext> {
        GrassContext::new(self.n_total as i64, self.rings[i]).ok()
    }

    pub fn source_ctx(&self) -> Option<GrassContext> {
        self.ring_ctx(0)
    }

    pub fn target_ctx(&self) -> Option<GrassContext> {
        self.ring_ctx(self.len())
    }

    /// Factor `i` (zero-based, source side first). Only meaningful on nonzero paths.
    pub fn step(&self, i: usize) -> Step {
        let (a, b) = (self.rings[i], self.rings[i + 1]);
        Step { n_total: self.n_total, lower: a.min(b) as u32, up: b > a }
    }

    pub fn steps(&self) -> Vec<Step> {
        (0..self.len()).map(|i| self.step(i)).collect()
    }

    pub fn bounds(&self) -> Vec<u32> {
        self.steps().iter().map(Step::bound).collect()
    }

    /// The display word, leftmost letter first.
    pub fn word(&self) -> Vec<char> {
        self.rings
            .windows(2)
            .rev()
            .map(|w| if w[1] > w[0] { 'E' } else { 'F' })
            .collect()
    }

    /// The free basis as exponent vectors, in lexicographic order.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out = vec![Vec::new()];
        for b in self.bounds() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=b).map(move |a| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Tensor product: `self` followed by `other`; shifts add.
    pub fn concat(&self, other: &FlagPath) -> Result<FlagPath, BimError> {
        if self.n_total != other.n_total || self.target() != other.source() {
            return Err(BimError::PathMismatch { left: self.to_string(), right: other.to_string() });
        }
        let mut rings = self.rings.clone();
        rings.extend_from_slice(&other.rings[1..]);
        Ok(FlagPath { n_total: self.n_total, rings, shift: self.shift + other.shift })
    }

    /// The factors `start..end` as a path with the given shift.
    pub fn slice(&self, start: usize, end: usize, shift: i64) -> FlagPath {
        FlagPath { n_total: self.n_total, rings: self.rings[start..=end].to_vec(), shift }
    }

    /// Equality of the ring sequences, ignoring the shift.
    pub fn same_rings(&self, other: &FlagPath) -> bool {
        self.n_total == other.n_total && self.rings == other.rings
    }
}

impl fmt::Display for FlagPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rings: Vec<String> = self.rings.iter().map(|k| k.to_string()).collect();
        write!(f, "({}){{{}}}", rings.join(","), self.shift)
    }
}
