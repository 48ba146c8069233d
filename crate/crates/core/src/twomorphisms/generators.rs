use std::fmt;

use serde::{Deserialize, Serialize};

use super::MapError;
use crate::bimodules::{normalize, BimElement, FlagPath, RawTensor};
use crate::exactpoly::{sign, Polynomial, VarSymbol};
use crate::grassrings::{special_class, Family, GrassContext};

/// Which pair of strands a cup creates or a cap closes, named in diagram order.
/// `FE` is the pair `F E` (the `E` strand on the right leaves the region first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Turn {
    FE,
    EF,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorKind {
    /// Dot on an upward (`E`) or downward (`F`) strand.
    Dot { up: bool },
    /// Crossing of two upward or two downward strands.
    Crossing { up: bool },
    Cup(Turn),
    Cap(Turn),
}

/// A generator 2-morphism placed at the ring `H_k` it starts from (the source ring
/// of its domain, which for cups is the region the cup is drawn in).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub n_total: u32,
    pub k: i64,
}

impl Generator {
    pub fn new(kind: GeneratorKind, n_total: u32, k: i64) -> Self {
        Generator { kind, n_total, k }
    }

    fn rings(&self, codomain: bool) -> Vec<i64> {
        let k = self.k;
        match self.kind {
            GeneratorKind::Dot { up } => vec![k, if up { k + 1 } else { k - 1 }],
            GeneratorKind::Crossing { up } => {
                let d = if up { 1 } else { -1 };
                vec![k, k + d, k + 2 * d]
            }
            GeneratorKind::Cup(t) | GeneratorKind::Cap(t) => {
                let creates = matches!(self.kind, GeneratorKind::Cup(_));
                if creates != codomain {
                    vec![k]
                } else {
                    match t {
                        Turn::FE => vec![k, k + 1, k],
                        Turn::EF => vec![k, k - 1, k],
                    }
                }
            }
        }
    }

    pub fn domain(&self) -> FlagPath {
        FlagPath::natural(self.n_total, self.rings(false)).expect("generator paths have unit steps")
    }

    pub fn codomain(&self) -> FlagPath {
        FlagPath::natural(self.n_total, self.rings(true)).expect("generator paths have unit steps")
    }

    /// Weight `n = 2k - N` of the starting region.
    pub fn weight(&self) -> i64 {
        2 * self.k - self.n_total as i64
    }

    /// The degree the generator carries in the 2-category.
    pub fn declared_degree(&self) -> i64 {
        let n = self.weight();
        match self.kind {
            GeneratorKind::Dot { .. } => 2,
            GeneratorKind::Crossing { .. } => -2,
            GeneratorKind::Cup(Turn::FE) | GeneratorKind::Cap(Turn::FE) => n + 1,
            GeneratorKind::Cup(Turn::EF) | GeneratorKind::Cap(Turn::EF) => 1 - n,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.domain().is_zero() || self.codomain().is_zero()
    }

    /// Image of `xi^exps` (exponents in path order, not necessarily bounded).
    pub fn image(&self, exps: &[u32]) -> Result<BimElement, MapError> {
        let codomain = self.codomain();
        if self.is_zero() {
            return Ok(BimElement::zero(codomain));
        }
        if exps.len() != self.domain().len() {
            return Err(MapError::Arity { expected: self.domain().len(), found: exps.len() });
        }
        let ctx = GrassContext::new(self.n_total as i64, self.k).expect("checked nonzero");
        let xi = |a: u32| Polynomial::var(VarSymbol::xi(1)).pow(a);
        let raw = |factors: Vec<Polynomial>| RawTensor::new(codomain.clone(), factors).expect("arity");
        let elem = match self.kind {
            GeneratorKind::Dot { .. } => normalize(&raw(vec![xi(exps[0] + 1)]))?,
            GeneratorKind::Crossing { up } => {
                // the left strand of the picture is the later path factor
                let (m1, m2) = (exps[1], exps[0]);
                let mut out = BimElement::zero(codomain.clone());
                let total = (m1 + m2) as i64;
                let s = if up { 1 } else { -1 };
                for (count, sgn) in [(m1, s), (m2, -s)] {
                    for j in 0..count {
                        let left = (total - 1 - j as i64) as u32;
                        let term = normalize(&raw(vec![xi(j), xi(left)]))?;
                        out = out.add(&term.scale(&crate::exactpoly::rat(sgn)))?;
                    }
                }
                out
            }
            GeneratorKind::Cup(t) => {
                let (top, gen): (i64, fn(&GrassContext, i64) -> Polynomial) = match t {
                    Turn::FE => (ctx.k() as i64, GrassContext::x),
                    Turn::EF => ((ctx.n_total() - ctx.k()) as i64, GrassContext::y),
                };
                let mut out = BimElement::zero(codomain.clone());
                for j in 0..=top {
                    let g = gen(&ctx, j).scale_int(sign(j));
                    if g.is_zero() {
                        continue;
                    }
                    out = out.add(&normalize(&raw(vec![g, xi((top - j) as u32)]))?)?;
                }
                out
            }
            GeneratorKind::Cap(t) => {
                let m = (exps[0] + exps[1]) as i64;
                let n_total = self.n_total as i64;
                let value = match t {
                    Turn::FE => {
                        let a = m + 1 + self.k - n_total;
                        special_class(ctx, Family::X, a).scale_int(sign(m + self.k - n_total + 1))
                    }
                    Turn::EF => {
                        let a = m + 1 - self.k;
                        special_class(ctx, Family::Y, a).scale_int(sign(m + 1 - self.k))
                    }
                };
                BimElement::from_terms(codomain, [(Vec::new(), value)])?
            }
        };
        Ok(elem)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            GeneratorKind::Dot { up: true } => "dot_e",
            GeneratorKind::Dot { up: false } => "dot_f",
            GeneratorKind::Crossing { up: true } => "cross_ee",
            GeneratorKind::Crossing { up: false } => "cross_ff",
            GeneratorKind::Cup(Turn::FE) => "cup_fe",
            GeneratorKind::Cup(Turn::EF) => "cup_ef",
            GeneratorKind::Cap(Turn::FE) => "cap_fe",
            GeneratorKind::Cap(Turn::EF) => "cap_ef",
        };
        write!(f, "{name}@k={}", self.k)
    }
}
