use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use super::{BimError, Step};
use crate::exactpoly::{sign, Polynomial, VarSymbol};
use crate::grassrings::GrassContext;

/// An element of a one-step ring written in its free basis over the right ring:
/// `v[a]` is the coefficient of `xi^a`.
pub type FactorElem = Vec<Polynomial>;

/// A one-step ring `R[xi]/(monic)` presented as a free module over its right ring `R`.
#[derive(Debug)]
pub struct FactorAlgebra {
    step: Step,
    left: GrassContext,
    right: GrassContext,
    /// `xi^(bound+1) = sum_l reduction[l] xi^l`
    reduction: Vec<Polynomial>,
}

static ALGEBRAS: LazyLock<RwLock<HashMap<Step, Arc<FactorAlgebra>>>> = LazyLock::new(Default::default);

impl FactorAlgebra {
    pub fn get(step: Step) -> Arc<FactorAlgebra> {
        if let Some(a) = ALGEBRAS.read().expect("algebra cache poisoned").get(&step) {
            return a.clone();
        }
        let built = Arc::new(FactorAlgebra::build(step));
        ALGEBRAS.write().expect("algebra cache poisoned").entry(step).or_insert(built).clone()
    }

    fn build(step: Step) -> FactorAlgebra {
        let (left, right) = (step.left_ctx(), step.right_ctx());
        let top = step.bound() as i64 + 1;
        let reduction = (0..top)
            .map(|l| {
                let s = sign(top - 1 - l);
                let coeff = if step.up { right.x(top - l) } else { right.y(top - l) };
                coeff.scale_int(s)
            })
            .collect();
        FactorAlgebra { step, left, right, reduction }
    }

    pub fn step(&self) -> Step {
        self.step
    }

    pub fn bound(&self) -> u32 {
        self.step.bound()
    }

    pub fn left(&self) -> GrassContext {
        self.left
    }

    pub fn right(&self) -> GrassContext {
        self.right
    }

    /// Coefficients of the relation `xi^(bound+1) = sum_l r_l xi^l`.
    pub fn reduction(&self) -> &[Polynomial] {
        &self.reduction
    }

    pub fn zero(&self) -> FactorElem {
        vec![Polynomial::zero(); self.bound() as usize + 1]
    }

    pub fn constant(&self, c: Polynomial) -> FactorElem {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    pub fn xi_pow(&self, a: u32) -> FactorElem {
        let mut raw = vec![Polynomial::zero(); a as usize + 1];
        raw[a as usize] = Polynomial::one();
        self.reduce(raw)
    }

    /// Folds a coefficient list of any length into the bounded basis.
    pub fn reduce(&self, mut raw: Vec<Polynomial>) -> FactorElem {
        let width = self.bound() as usize + 1;
        while raw.len() > width {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = raw.len() - width;
            for (l, r) in self.reduction.iter().enumerate() {
                if !r.is_zero() {
                    raw[base + l] += &(&top * r);
                }
            }
        }
        raw.resize(width, Polynomial::zero());
        raw
    }

    pub fn mul(&self, a: &FactorElem, b: &FactorElem) -> FactorElem {
        let mut raw = vec![Polynomial::zero(); a.len() + b.len() - 1];
        for (i, p) in a.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in b.iter().enumerate() {
                if !q.is_zero() {
                    raw[i + j] += &(p * q);
                }
            }
        }
        self.reduce(raw)
    }

    /// Unreduced image of a generator as a polynomial in `xi` (coefficient list),
    /// or `None` when the symbol belongs to neither adjacent ring.
    pub fn raw_image(&self, symbol: &VarSymbol) -> Option<Vec<Polynomial>> {
        let r = self.right;
        match *symbol {
            VarSymbol::Xi { .. } => Some(vec![Polynomial::zero(), Polynomial::one()]),
            VarSymbol::ChernX { weight, index } => {
                let j = index as i64;
                if weight == r.weight() {
                    Some(vec![r.x(j)])
                } else if weight == self.left.weight() {
                    if self.step.up {
                        // x_{j,n} = sum_l (-1)^l x_{j-l,n+2} xi^l
                        if j > self.left.k() as i64 {
                            return Some(vec![Polynomial::zero()]);
                        }
                        Some((0..=j).map(|l| r.x(j - l).scale_int(sign(l))).collect())
                    } else {
                        // x_{j,n+2} = x_{j,n} + x_{j-1,n} xi
                        if j > self.left.k() as i64 {
                            return Some(vec![Polynomial::zero()]);
                        }
                        Some(vec![r.x(j), r.x(j - 1)])
                    }
                } else {
                    None
                }
            }
            VarSymbol::ChernY { weight, index } => {
                let j = index as i64;
                let left_top = (self.left.n_total() - self.left.k()) as i64;
                if weight == r.weight() {
                    Some(vec![r.y(j)])
                } else if weight == self.left.weight() {
                    if j > left_top {
                        return Some(vec![Polynomial::zero()]);
                    }
                    if self.step.up {
                        // y_{l,n} = y_{l,n+2} + y_{l-1,n+2} xi
                        Some(vec![r.y(j), r.y(j - 1)])
                    } else {
                        // y_{l,n+2} = sum_i (-1)^i y_{l-i,n} xi^i
                        Some((0..=j).map(|i| r.y(j - i).scale_int(sign(i))).collect())
                    }
                } else {
                    None
                }
            }
        }
    }

    pub fn image(&self, symbol: &VarSymbol) -> Option<FactorElem> {
        self.raw_image(symbol).map(|raw| self.reduce(raw))
    }

    /// Evaluates a polynomial in the generators of both adjacent rings and `xi`.
    pub fn eval(&self, p: &Polynomial) -> Result<FactorElem, BimError> {
        let mut out = self.zero();
        let mut cache: HashMap<VarSymbol, FactorElem> = HashMap::new();
        for (m, c) in p.terms() {
            let mut acc = self.constant(Polynomial::constant(c.clone()));
            for &(s, e) in m.factors() {
                let img = match cache.get(&s) {
                    Some(v) => v.clone(),
                    None => {
                        let v = self.image(&s).ok_or_else(|| BimError::ForeignSymbol {
                            symbol: s.to_string(),
                            place: format!("factor {}{}", self.step.letter(), self.step.lower),
                        })?;
                        cache.insert(s, v.clone());
                        v
                    }
                };
                for _ in 0..e {
                    acc = self.mul(&acc, &img);
                }
            }
            for (slot, v) in out.iter_mut().zip(acc) {
                *slot += &v;
            }
        }
        Ok(out)
    }
}
