//! The rings `H_k` and the one-step flag rings, special classes `X`, `Y` and
//! closed bubble values.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{rat, series_invert, Polynomial, VarSymbol};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("N must be positive, got {0}")]
    NonPositiveN(i64),
    #[error("k = {k} is outside 0..={n_total}")]
    KOutOfRange { n_total: u32, k: i64 },
    #[error("weight {weight} is incompatible with N = {n_total}")]
    Parity { n_total: u32, weight: i64 },
}

/// The pair `(N, k)` naming the ring `H_k`; the weight is `n = 2k - N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrassContext {
    n_total: u32,
    k: u32,
}

impl GrassContext {
    pub fn new(n_total: i64, k: i64) -> Result<Self, ContextError> {
        if n_total < 1 {
            return Err(ContextError::NonPositiveN(n_total));
        }
        if k < 0 || k > n_total {
            return Err(ContextError::KOutOfRange { n_total: n_total as u32, k });
        }
        Ok(GrassContext { n_total: n_total as u32, k: k as u32 })
    }

    pub fn from_weight(n_total: i64, weight: i64) -> Result<Self, ContextError> {
        if n_total < 1 {
            return Err(ContextError::NonPositiveN(n_total));
        }
        if (weight + n_total).rem_euclid(2) != 0 {
            return Err(ContextError::Parity { n_total: n_total as u32, weight });
        }
        GrassContext::new(n_total, (weight + n_total) / 2)
    }

    /// All contexts for a given `N`.
    pub fn all(n_total: u32) -> Vec<GrassContext> {
        (0..=n_total).map(|k| GrassContext { n_total, k }).collect()
    }

    pub fn n_total(&self) -> u32 {
        self.n_total
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn weight(&self) -> i32 {
        2 * self.k as i32 - self.n_total as i32
    }

    /// `x_{j,n}`; one for `j = 0` and zero outside `1..=k`.
    pub fn x(&self, j: i64) -> Polynomial {
        chern(j, self.k as i64, VarSymbol::x(j.max(0) as u32, self.weight()))
    }

    /// `y_{j,n}`; one for `j = 0` and zero outside `1..=N-k`.
    pub fn y(&self, j: i64) -> Polynomial {
        chern(j, (self.n_total - self.k) as i64, VarSymbol::y(j.max(0) as u32, self.weight()))
    }

    /// The generator catalog `x_1..x_k, y_1..y_{N-k}`.
    pub fn generators(&self) -> Vec<VarSymbol> {
        let w = self.weight();
        (1..=self.k)
            .map(|j| VarSymbol::x(j, w))
            .chain((1..=self.n_total - self.k).map(|j| VarSymbol::y(j, w)))
            .collect()
    }

    /// Whether `symbol` is a generator of this ring.
    pub fn owns(&self, symbol: &VarSymbol) -> bool {
        match *symbol {
            VarSymbol::ChernX { weight, index } => weight == self.weight() && index >= 1 && index <= self.k,
            VarSymbol::ChernY { weight, index } => {
                weight == self.weight() && index >= 1 && index <= self.n_total - self.k
            }
            VarSymbol::Xi { .. } => false,
        }
    }

    /// Whether every symbol of `p` belongs to this ring.
    pub fn contains(&self, p: &Polynomial) -> bool {
        p.symbols().iter().all(|s| self.owns(s))
    }

    pub fn shifted(&self, dk: i64) -> Option<GrassContext> {
        GrassContext::new(self.n_total as i64, self.k as i64 + dk).ok()
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} k={} n={}", self.n_total, self.k, self.weight())
    }
}

fn chern(j: i64, top: i64, symbol: VarSymbol) -> Polynomial {
    match j {
        0 => Polynomial::one(),
        j if j < 0 || j > top => Polynomial::zero(),
        _ => Polynomial::var(symbol),
    }
}

/// The one-step ring between `H_k` and `H_{k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StepContext {
    pub base: GrassContext,
}

impl StepContext {
    pub fn new(base: GrassContext) -> Option<Self> {
        (base.k < base.n_total).then_some(StepContext { base })
    }

    pub fn upper(&self) -> GrassContext {
        GrassContext { n_total: self.base.n_total, k: self.base.k + 1 }
    }

    /// Canonical generators `x_{1..k,n}`, `xi`, `y_{1..N-k-1,n+2}`.
    pub fn canonical_generators(&self) -> Vec<VarSymbol> {
        let n = self.base.weight();
        let mut out: Vec<VarSymbol> = (1..=self.base.k).map(|j| VarSymbol::x(j, n)).collect();
        out.push(VarSymbol::xi(1));
        out.extend((1..self.base.n_total - self.base.k).map(|j| VarSymbol::y(j, n + 2)));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

type ClassKey = (GrassContext, Family, i64);

static SPECIAL_CACHE: LazyLock<RwLock<HashMap<ClassKey, Polynomial>>> = LazyLock::new(Default::default);

/// `X_{alpha,n}` or `Y_{alpha,n}` from the recursions
/// `X_a = -sum_{j>=1} y_j X_{a-j}` and `Y_b = -sum_{j>=1} x_j Y_{b-j}`.
pub fn special_class(ctx: GrassContext, family: Family, alpha: i64) -> Polynomial {
    if alpha < 0 {
        return Polynomial::zero();
    }
    if alpha == 0 {
        return Polynomial::one();
    }
    let key = (ctx, family, alpha);
    if let Some(p) = SPECIAL_CACHE.read().expect("special-class cache poisoned").get(&key) {
        return p.clone();
    }
    let mut acc = Polynomial::zero();
    for j in 1..=alpha {
        let gen = match family {
            Family::X => ctx.y(j),
            Family::Y => ctx.x(j),
        };
        if gen.is_zero() {
            continue;
        }
        acc -= &(&gen * &special_class(ctx, family, alpha - j));
    }
    SPECIAL_CACHE
        .write()
        .expect("special-class cache poisoned")
        .insert(key, acc.clone());
    acc
}

/// Closed value of the dotted bubble of degree `2 alpha` in the region `H_k`.
///
/// Clockwise: `(-1)^a sum_l y_l Y_{a-l}`; counterclockwise: `(-1)^a sum_l x_l X_{a-l}`.
/// Fake bubbles use the same formula.
pub fn bubble_value(ctx: GrassContext, orientation: Orientation, alpha: i64) -> Polynomial {
    if alpha < 0 {
        return Polynomial::zero();
    }
    let (top, gen, family): (i64, fn(&GrassContext, i64) -> Polynomial, Family) = match orientation {
        Orientation::Clockwise => ((ctx.n_total - ctx.k) as i64, GrassContext::y, Family::Y),
        Orientation::Counterclockwise => (ctx.k as i64, GrassContext::x, Family::X),
    };
    let mut acc = Polynomial::zero();
    for l in 0..=top.min(alpha) {
        acc += &(&gen(&ctx, l) * &special_class(ctx, family, alpha - l));
    }
    acc.scale(&rat(crate::exactpoly::sign(alpha)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesIdentity {
    /// `sum_j x_j Y_{b-j} = delta_{b,0}`
    XY,
    /// `sum_j y_j X_{a-j} = delta_{a,0}`
    YX,
    /// clockwise and counterclockwise bubble series are mutually inverse
    BubbleProduct,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCheck {
    pub holds: bool,
    /// First failing degree index and the offending value.
    pub counterexample: Option<(i64, Polynomial)>,
}

impl SeriesCheck {
    fn pass() -> Self {
        SeriesCheck { holds: true, counterexample: None }
    }

    fn fail(d: i64, value: Polynomial) -> Self {
        SeriesCheck { holds: false, counterexample: Some((d, value)) }
    }
}

/// Checks one of the generating-series identities index by index for `0 <= d <= max_index`.
pub fn check_series_identity(ctx: GrassContext, which: SeriesIdentity, max_index: i64) -> SeriesCheck {
    let delta = |d: i64| if d == 0 { Polynomial::one() } else { Polynomial::zero() };
    for d in 0..=max_index {
        let value = match which {
            SeriesIdentity::XY => (0..=d).fold(Polynomial::zero(), |acc, j| {
                acc + &ctx.x(j) * &special_class(ctx, Family::Y, d - j)
            }),
            SeriesIdentity::YX => (0..=d).fold(Polynomial::zero(), |acc, j| {
                acc + &ctx.y(j) * &special_class(ctx, Family::X, d - j)
            }),
            SeriesIdentity::BubbleProduct => (0..=d).fold(Polynomial::zero(), |acc, j| {
                acc + &bubble_value(ctx, Orientation::Clockwise, j)
                    * &bubble_value(ctx, Orientation::Counterclockwise, d - j)
            }),
        };
        let residual = &value - &delta(d);
        if !residual.is_zero() {
            return SeriesCheck::fail(d, value);
        }
    }
    if which == SeriesIdentity::BubbleProduct && max_index >= 0 {
        // independent route: invert the clockwise series and compare
        let cw: Vec<Polynomial> = (0..=max_index)
            .map(|a| bubble_value(ctx, Orientation::Clockwise, a))
            .collect();
        match series_invert(&cw, max_index as usize) {
            Ok(inv) => {
                for (d, b) in inv.into_iter().enumerate() {
                    let ccw = bubble_value(ctx, Orientation::Counterclockwise, d as i64);
                    if b != ccw {
                        return SeriesCheck::fail(d as i64, &b - &ccw);
                    }
                }
            }
            Err(_) => return SeriesCheck::fail(0, cw[0].clone()),
        }
    }
    SeriesCheck::pass()
}

#[cfg(test)]
mod tests;
