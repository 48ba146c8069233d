use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SymbolKind {
    ChernX,
    ChernY,
    Xi,
}

/// A graded polynomial generator.
///
/// `ChernX`/`ChernY` carry the Chern-class index `j` (degree `2j`) and the weight
/// tag `n` of the ring they live in. `Xi` is the degree-two class of a tensor
/// factor and carries that factor's position. The derived ordering compares kind,
/// then weight tag, then index, which fixes the printing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarSymbol {
    ChernX { weight: i32, index: u32 },
    ChernY { weight: i32, index: u32 },
    Xi { position: u32 },
}

impl VarSymbol {
    pub fn x(index: u32, weight: i32) -> Self {
        VarSymbol::ChernX { weight, index }
    }

    pub fn y(index: u32, weight: i32) -> Self {
        VarSymbol::ChernY { weight, index }
    }

    pub fn xi(position: u32) -> Self {
        VarSymbol::Xi { position }
    }

    pub fn kind(&self) -> SymbolKind {
        match self {
            VarSymbol::ChernX { .. } => SymbolKind::ChernX,
            VarSymbol::ChernY { .. } => SymbolKind::ChernY,
            VarSymbol::Xi { .. } => SymbolKind::Xi,
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            VarSymbol::ChernX { index, .. } | VarSymbol::ChernY { index, .. } => 2 * *index as i64,
            VarSymbol::Xi { .. } => 2,
        }
    }

    pub fn weight(&self) -> Option<i32> {
        match self {
            VarSymbol::ChernX { weight, .. } | VarSymbol::ChernY { weight, .. } => Some(*weight),
            VarSymbol::Xi { .. } => None,
        }
    }
}

impl fmt::Display for VarSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarSymbol::ChernX { weight, index } => write!(f, "x[{index}]@{weight}"),
            VarSymbol::ChernY { weight, index } => write!(f, "y[{index}]@{weight}"),
            VarSymbol::Xi { position } => write!(f, "xi{{{position}}}"),
        }
    }
}

/// A monomial: symbols in increasing order with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(Vec<(VarSymbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(symbol: VarSymbol) -> Self {
        Monomial(vec![(symbol, 1)])
    }

    pub fn power(symbol: VarSymbol, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(symbol, exp)])
        }
    }

    /// Builds a monomial from arbitrary `(symbol, exponent)` pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarSymbol, u32)>) -> Self {
        let mut items: Vec<(VarSymbol, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        items.sort_by_key(|a| a.0);
        let mut merged: Vec<(VarSymbol, u32)> = Vec::with_capacity(items.len());
        for (s, e) in items {
            match merged.last_mut() {
                Some((last, acc)) if *last == s => *acc += e,
                _ => merged.push((s, e)),
            }
        }
        Monomial(merged)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(VarSymbol, u32)] {
        &self.0
    }

    pub fn exponent(&self, symbol: &VarSymbol) -> u32 {
        self.0
            .binary_search_by(|(s, _)| s.cmp(symbol))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(s, e)| s.degree() * *e as i64).sum()
    }

    pub fn total_exponent(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &VarSymbol> {
        self.0.iter().map(|(s, _)| s)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Splits off every occurrence of `symbol`, returning its exponent and the rest.
    pub fn split_off(&self, symbol: &VarSymbol) -> (u32, Monomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut exp = 0;
        for &(s, e) in &self.0 {
            if s == *symbol {
                exp = e;
            } else {
                rest.push((s, e));
            }
        }
        (exp, Monomial(rest))
    }
}

// Lexicographic on the sorted factor list, which puts `x1^2` before `x2`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.0.cmp(&b.0) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match b.1.cmp(&a.1) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (s, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}
