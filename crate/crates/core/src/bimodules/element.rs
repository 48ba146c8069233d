use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;

use super::{BimError, FactorAlgebra, FlagPath};
use crate::exactpoly::{rat, render_abs_rational, Homogeneity, LaurentPoly, Polynomial, Rational};

pub type Exponents = Vec<u32>;

/// A formal tensor `f_1 (x) ... (x) f_m` times a right-ring coefficient, before
/// normalization. Factor `i` may use `xi` and the generators of both its rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTensor {
    pub path: FlagPath,
    pub factors: Vec<Polynomial>,
    pub coefficient: Polynomial,
}

impl RawTensor {
    pub fn new(path: FlagPath, factors: Vec<Polynomial>) -> Result<Self, BimError> {
        if factors.len() != path.len() {
            return Err(BimError::FactorCount { expected: path.len(), found: factors.len() });
        }
        Ok(RawTensor { path, factors, coefficient: Polynomial::one() })
    }

    /// `xi^a_1 (x) ... (x) xi^a_m`, exponents unbounded.
    pub fn monomial(path: FlagPath, exps: &[u32]) -> Result<Self, BimError> {
        let factors = exps
            .iter()
            .map(|&a| Polynomial::var(crate::exactpoly::VarSymbol::xi(1)).pow(a))
            .collect();
        RawTensor::new(path, factors)
    }

    pub fn with_coefficient(mut self, c: Polynomial) -> Self {
        self.coefficient = c;
        self
    }
}

/// An element of an iterated bimodule in normal form: a map from bounded
/// exponent vectors (path order) to coefficients in the target ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimElement {
    path: FlagPath,
    terms: BTreeMap<Exponents, Polynomial>,
}

/// Pushes `carry * xi^exps[0] (x) xi^exps[1] ...` through factors `from..` of `path`,
/// returning normal-form terms over those factors.
pub(crate) fn push_through(
    path: &FlagPath,
    from: usize,
    carry: Polynomial,
    factor_polys: &[Polynomial],
) -> Result<BTreeMap<Exponents, Polynomial>, BimError> {
    let mut state: BTreeMap<Exponents, Polynomial> = BTreeMap::new();
    if carry.is_zero() {
        return Ok(state);
    }
    state.insert(Vec::new(), carry);
    for (offset, f) in factor_polys.iter().enumerate() {
        let alg = FactorAlgebra::get(path.step(from + offset));
        let fv = alg.eval(f)?;
        let mut next: BTreeMap<Exponents, Polynomial> = BTreeMap::new();
        for (prefix, c) in state {
            let cv = alg.eval(&c)?;
            for (a, coeff) in alg.mul(&cv, &fv).into_iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut key = prefix.clone();
                key.push(a as u32);
                *next.entry(key).or_default() += &coeff;
            }
        }
        next.retain(|_, p| !p.is_zero());
        state = next;
    }
    Ok(state)
}

pub(crate) fn xi_powers(exps: &[u32]) -> Vec<Polynomial> {
    let xi = Polynomial::var(crate::exactpoly::VarSymbol::xi(1));
    exps.iter().map(|&a| xi.pow(a)).collect()
}

/// Unique normal form of a raw tensor (sweep implementation).
pub fn normalize(raw: &RawTensor) -> Result<BimElement, BimError> {
    let path = &raw.path;
    if path.is_zero() {
        return Ok(BimElement::zero(path.clone()));
    }
    if raw.factors.len() != path.len() {
        return Err(BimError::FactorCount { expected: path.len(), found: raw.factors.len() });
    }
    let target = path.target_ctx().expect("nonzero path");
    if !target.contains(&raw.coefficient) {
        return Err(BimError::ForeignSymbol {
            symbol: raw.coefficient.to_string(),
            place: format!("coefficient ring H_{}", target.k()),
        });
    }
    let mut terms = push_through(path, 0, Polynomial::one(), &raw.factors)?;
    if !raw.coefficient.is_one() {
        for c in terms.values_mut() {
            *c = &*c * &raw.coefficient;
        }
        terms.retain(|_, p| !p.is_zero());
    }
    Ok(BimElement { path: path.clone(), terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl BimElement {
    pub fn zero(path: FlagPath) -> Self {
        BimElement { path, terms: BTreeMap::new() }
    }

    /// The basis vector `exps` with coefficient one.
    pub fn basis_vector(path: FlagPath, exps: Exponents) -> Result<Self, BimError> {
        Self::from_terms(path, [(exps, Polynomial::one())])
    }

    /// Builds an element from terms that are already in normal form.
    pub fn from_terms(
        path: FlagPath,
        terms: impl IntoIterator<Item = (Exponents, Polynomial)>,
    ) -> Result<Self, BimError> {
        let mut out = BimElement::zero(path);
        if out.path.is_zero() {
            return Ok(out);
        }
        let bounds = out.path.bounds();
        let target = out.path.target_ctx().expect("nonzero path");
        for (e, c) in terms {
            if e.len() != bounds.len() || e.iter().zip(&bounds).any(|(a, b)| a > b) {
                return Err(BimError::NotNormal(format!("{e:?} exceeds bounds {bounds:?}")));
            }
            if !target.contains(&c) {
                return Err(BimError::ForeignSymbol { symbol: c.to_string(), place: "coefficient".into() });
            }
            out.add_term(e, &c);
        }
        Ok(out)
    }

    pub(crate) fn from_map_unchecked(path: FlagPath, mut terms: BTreeMap<Exponents, Polynomial>) -> Self {
        terms.retain(|_, p| !p.is_zero());
        BimElement { path, terms }
    }

    pub fn path(&self) -> &FlagPath {
        &self.path
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Polynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Polynomial {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn add(&self, other: &BimElement) -> Result<BimElement, BimError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BimElement) -> Result<BimElement, BimError> {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> BimElement {
        BimElement::from_map_unchecked(
            self.path.clone(),
            self.terms.iter().map(|(e, p)| (e.clone(), p.scale(c))).collect(),
        )
    }

    /// Multiplies every coefficient by `r` from the right.
    pub fn mul_right(&self, r: &Polynomial) -> BimElement {
        BimElement::from_map_unchecked(
            self.path.clone(),
            self.terms.iter().map(|(e, p)| (e.clone(), p * r)).collect(),
        )
    }

    /// Reinterprets the element over a path with the same rings and another shift.
    pub fn reshift(&self, shift: i64) -> BimElement {
        BimElement { path: self.path.with_shift(shift), terms: self.terms.clone() }
    }

    fn check_same(&self, other: &BimElement) -> Result<(), BimError> {
        if self.path != other.path {
            return Err(BimError::PathMismatch { left: self.path.to_string(), right: other.path.to_string() });
        }
        Ok(())
    }

    /// Ring action. The left action is by the source ring `H_{k_0}`, the right
    /// action by the target ring `H_{k_m}`.
    pub fn act(&self, side: Side, r: &Polynomial) -> Result<BimElement, BimError> {
        if self.path.is_zero() {
            return Ok(self.clone());
        }
        let ctx = match side {
            Side::Left => self.path.source_ctx(),
            Side::Right => self.path.target_ctx(),
        }
        .expect("nonzero path");
        if !ctx.contains(r) {
            return Err(BimError::ForeignSymbol { symbol: r.to_string(), place: format!("ring H_{}", ctx.k()) });
        }
        match side {
            Side::Right => Ok(self.mul_right(r)),
            Side::Left => {
                if self.path.is_empty() {
                    return Ok(self.mul_right(r));
                }
                let mut out = BimElement::zero(self.path.clone());
                for (e, c) in &self.terms {
                    let pushed = push_through(&self.path, 0, r.clone(), &xi_powers(e))?;
                    for (e2, c2) in pushed {
                        out.add_term(e2, &(&c2 * c));
                    }
                }
                Ok(out)
            }
        }
    }

    /// `self (x) other` over the concatenated path.
    pub fn tensor(&self, other: &BimElement) -> Result<BimElement, BimError> {
        let path = self.path.concat(&other.path)?;
        let mut out = BimElement::zero(path.clone());
        if path.is_zero() {
            return Ok(out);
        }
        let offset = self.path.len();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let pushed = if other.path.is_empty() {
                    BTreeMap::from([(Vec::new(), ca.clone())])
                } else {
                    push_through(&path, offset, ca.clone(), &xi_powers(eb))?
                };
                for (e2, c2) in pushed {
                    let mut key = ea.clone();
                    key.extend(e2);
                    out.add_term(key, &(&c2 * cb));
                }
            }
        }
        Ok(out)
    }

    /// Graded degree of the element including the path shift.
    pub fn degree(&self) -> Homogeneity {
        let mut found: Option<i64> = None;
        for (e, c) in &self.terms {
            let base = 2 * e.iter().map(|&a| a as i64).sum::<i64>() + self.path.shift();
            for (m, _) in c.terms() {
                let d = base + m.degree();
                match found {
                    None => found = Some(d),
                    Some(f) if f != d => return Homogeneity::Inhomogeneous,
                    _ => {}
                }
            }
        }
        found.map_or(Homogeneity::AnyDegree, Homogeneity::Degree)
    }
}

/// `sum_basis q^(2|a| + shift)`.
pub fn graded_rank(path: &FlagPath) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for e in path.basis() {
        out.add_term(2 * e.iter().map(|&a| a as i64).sum::<i64>() + path.shift(), 1);
    }
    out
}

fn xi_text(a: u32) -> String {
    match a {
        0 => "1".into(),
        1 => "xi".into(),
        a => format!("xi^{a}"),
    }
}

impl fmt::Display for BimElement {
    /// Display order: strands left to right, i.e. path factors from last to first.
    /// The target-ring coefficient is written into the first displayed factor.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let ra: Vec<u32> = a.iter().rev().copied().collect();
            let rb: Vec<u32> = b.iter().rev().copied().collect();
            rb.cmp(&ra)
        });
        let mut first = true;
        for e in keys {
            let c = &self.terms[e];
            let (negative, coeff_text) = if c.len() == 1 {
                let (m, q) = c.terms().next().unwrap();
                let abs = render_abs_rational(q);
                let text = match (m.is_one(), abs.as_str()) {
                    (true, _) => abs.clone(),
                    (false, "1") => m.to_string(),
                    (false, _) => format!("{abs}*{m}"),
                };
                (q.is_negative(), text)
            } else {
                (false, format!("({c})"))
            };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let mut parts: Vec<String> = e.iter().rev().map(|&a| xi_text(a)).collect();
            if parts.is_empty() {
                write!(f, "{coeff_text}")?;
                continue;
            }
            if coeff_text != "1" {
                parts[0] = if parts[0] == "1" { coeff_text } else { format!("{coeff_text}*{}", parts[0]) };
            }
            write!(f, "{}", parts.join(" | "))?;
        }
        Ok(())
    }
}
