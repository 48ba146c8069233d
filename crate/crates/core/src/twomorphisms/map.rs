use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::{Generator, MapError};
use crate::bimodules::{normalize, push_through, xi_powers, BimElement, Exponents, FlagPath, RawTensor};
use crate::exactpoly::{rat, Homogeneity, Polynomial, Rational};

#[derive(Debug)]
enum Body {
    Zero,
    Identity,
    Generator(Generator),
    /// `outer . inner`
    Compose(BimMap, BimMap),
    /// `before (x) inner (x) after`, counted in path factors
    Whisker { inner: BimMap, before: usize, after: usize },
    Sum(Vec<(Rational, BimMap)>),
    /// Multiplication by a ring element inserted at a junction of the path.
    JunctionMul { junction: usize, poly: Polynomial },
}

#[derive(Debug)]
struct Inner {
    domain: FlagPath,
    codomain: FlagPath,
    degree: i64,
    body: Body,
    matrix: Mutex<HashMap<Exponents, BimElement>>,
}

/// A bimodule map given procedurally, with images of basis vectors memoized.
///
/// Maps are right-linear by construction: an element is mapped by sending each
/// basis vector and multiplying the image by the coefficient.
#[derive(Clone, Debug)]
pub struct BimMap(Arc<Inner>);

/// Outcome of measuring the degree of a map on the domain basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasuredDegree {
    Degree(i64),
    /// The map vanishes on every basis vector.
    ZeroMap,
    Inhomogeneous(String),
}

impl BimMap {
    fn build(domain: FlagPath, codomain: FlagPath, degree: i64, body: Body) -> BimMap {
        BimMap(Arc::new(Inner { domain, codomain, degree, body, matrix: Mutex::new(HashMap::new()) }))
    }

    pub fn zero(domain: FlagPath, codomain: FlagPath, degree: i64) -> BimMap {
        BimMap::build(domain, codomain, degree, Body::Zero)
    }

    pub fn identity(path: FlagPath) -> BimMap {
        BimMap::build(path.clone(), path, 0, Body::Identity)
    }

    pub fn generator(g: Generator) -> BimMap {
        BimMap::build(g.domain(), g.codomain(), g.declared_degree(), Body::Generator(g))
    }

    /// Multiplication by `poly` (an element of the ring at `junction`) placed
    /// between factors `junction - 1` and `junction`. Junction `0` is the left
    /// action and junction `m` the right action.
    pub fn junction_mul(path: FlagPath, junction: usize, poly: Polynomial, degree: i64) -> Result<BimMap, MapError> {
        if junction > path.len() {
            return Err(MapError::Junction { junction, len: path.len() });
        }
        if let Some(ctx) = path.ring_ctx(junction) {
            if !ctx.contains(&poly) {
                return Err(MapError::Ring(format!("{poly} is not in H_{}", ctx.k())));
            }
        }
        match poly.homogeneous_degree() {
            Homogeneity::Degree(d) if d != degree => {
                return Err(MapError::Degree(format!("{poly} has degree {d}, expected {degree}")))
            }
            Homogeneity::Inhomogeneous => return Err(MapError::Degree(format!("{poly} is inhomogeneous"))),
            _ => {}
        }
        let body = if poly.is_zero() { Body::Zero } else { Body::JunctionMul { junction, poly } };
        Ok(BimMap::build(path.clone(), path, degree, body))
    }

    pub fn domain(&self) -> &FlagPath {
        &self.0.domain
    }

    pub fn codomain(&self) -> &FlagPath {
        &self.0.codomain
    }

    pub fn declared_degree(&self) -> i64 {
        self.0.degree
    }

    /// `self . inner`
    pub fn compose(&self, inner: &BimMap) -> Result<BimMap, MapError> {
        if inner.codomain() != self.domain() {
            return Err(MapError::Mismatch {
                expected: self.domain().to_string(),
                found: inner.codomain().to_string(),
            });
        }
        Ok(BimMap::build(
            inner.domain().clone(),
            self.codomain().clone(),
            self.declared_degree() + inner.declared_degree(),
            Body::Compose(self.clone(), inner.clone()),
        ))
    }

    /// Applies `maps` bottom to top: `maps[0]` first.
    pub fn compose_all(maps: &[BimMap]) -> Result<BimMap, MapError> {
        let mut it = maps.iter();
        let first = it.next().ok_or_else(|| MapError::Mismatch { expected: "a map".into(), found: "none".into() })?;
        it.try_fold(first.clone(), |acc, f| f.compose(&acc))
    }

    /// `before (x) self (x) after`; `before` ends where the domain starts.
    pub fn whisker(&self, before: &FlagPath, after: &FlagPath) -> Result<BimMap, MapError> {
        let domain = before.concat(self.domain())?.concat(after)?;
        let codomain = before.concat(self.codomain())?.concat(after)?;
        if before.is_empty() && after.is_empty() {
            return Ok(self.clone());
        }
        Ok(BimMap::build(
            domain,
            codomain,
            self.declared_degree(),
            Body::Whisker { inner: self.clone(), before: before.len(), after: after.len() },
        ))
    }

    /// Whiskers a generator into `ambient`, the generator's domain starting at path factor `offset`.
    pub fn place(g: Generator, ambient: &FlagPath, offset: usize) -> Result<BimMap, MapError> {
        let local = BimMap::generator(g);
        let span = local.domain().len();
        if offset + span > ambient.len() || ambient.rings()[offset] != g.k {
            return Err(MapError::Mismatch {
                expected: format!("{} at factor {offset}", local.domain()),
                found: ambient.to_string(),
            });
        }
        let before = ambient.slice(0, offset, 0);
        let after_start = offset + span;
        let after = ambient.slice(after_start, ambient.len(), 0);
        let before_shift = ambient.shift() - local.domain().shift();
        local.whisker(&before.with_shift(before_shift), &after)
    }

    pub fn linear_combination(terms: Vec<(Rational, BimMap)>) -> Result<BimMap, MapError> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| MapError::Mismatch { expected: "a summand".into(), found: "none".into() })?;
        let (domain, codomain, degree) = (first.domain().clone(), first.codomain().clone(), first.declared_degree());
        for (_, f) in &terms {
            if f.domain() != &domain || f.codomain() != &codomain {
                return Err(MapError::Mismatch {
                    expected: format!("{domain} -> {codomain}"),
                    found: format!("{} -> {}", f.domain(), f.codomain()),
                });
            }
            if f.declared_degree() != degree && !matches!(f.0.body, Body::Zero) {
                return Err(MapError::Degree(format!("summands of degree {degree} and {}", f.declared_degree())));
            }
        }
        Ok(BimMap::build(domain, codomain, degree, Body::Sum(terms)))
    }

    pub fn sum(maps: &[BimMap]) -> Result<BimMap, MapError> {
        BimMap::linear_combination(maps.iter().map(|f| (rat(1), f.clone())).collect())
    }

    pub fn difference(a: &BimMap, b: &BimMap) -> Result<BimMap, MapError> {
        BimMap::linear_combination(vec![(rat(1), a.clone()), (rat(-1), b.clone())])
    }

    pub fn scaled(&self, c: Rational) -> BimMap {
        BimMap::build(
            self.domain().clone(),
            self.codomain().clone(),
            self.declared_degree(),
            Body::Sum(vec![(c, self.clone())]),
        )
    }

    /// Image of the basis vector `exps` of the domain.
    pub fn on_basis(&self, exps: &[u32]) -> Result<BimElement, MapError> {
        if let Some(v) = self.0.matrix.lock().expect("matrix cache poisoned").get(exps) {
            return Ok(v.clone());
        }
        let value = self.compute(exps)?;
        self.0
            .matrix
            .lock()
            .expect("matrix cache poisoned")
            .insert(exps.to_vec(), value.clone());
        Ok(value)
    }

    fn compute(&self, exps: &[u32]) -> Result<BimElement, MapError> {
        let codomain = self.codomain().clone();
        if self.domain().is_zero() || codomain.is_zero() {
            return Ok(BimElement::zero(codomain));
        }
        match &self.0.body {
            Body::Zero => Ok(BimElement::zero(codomain)),
            Body::Identity => Ok(BimElement::basis_vector(codomain, exps.to_vec())?),
            Body::Generator(g) => Ok(g.image(exps)?),
            Body::Compose(outer, inner) => outer.apply(&inner.on_basis(exps)?),
            Body::Whisker { inner, before, after } => {
                let (pre, rest) = exps.split_at(*before);
                let (mid, post) = rest.split_at(rest.len() - after);
                let local = inner.on_basis(mid)?;
                let tail_start = before + inner.codomain().len();
                let mut out = BimElement::zero(codomain.clone());
                for (c_exps, d) in local.terms() {
                    for (tail, c) in push_through(&codomain, tail_start, d.clone(), &xi_powers(post))? {
                        let mut key = pre.to_vec();
                        key.extend_from_slice(c_exps);
                        key.extend(tail);
                        out.add_term(key, &c);
                    }
                }
                Ok(out)
            }
            Body::Sum(terms) => {
                let mut out = BimElement::zero(codomain);
                for (c, f) in terms {
                    out = out.add(&f.on_basis(exps)?.scale(c))?;
                }
                Ok(out)
            }
            Body::JunctionMul { junction, poly } => {
                let (pre, post) = exps.split_at(*junction);
                let mut out = BimElement::zero(codomain.clone());
                for (tail, c) in push_through(&codomain, *junction, poly.clone(), &xi_powers(post))? {
                    let mut key = pre.to_vec();
                    key.extend(tail);
                    out.add_term(key, &c);
                }
                Ok(out)
            }
        }
    }

    /// Evaluates the map on an element of the domain (same rings; the shift is not checked).
    pub fn apply(&self, e: &BimElement) -> Result<BimElement, MapError> {
        if !e.path().same_rings(self.domain()) {
            return Err(MapError::Mismatch { expected: self.domain().to_string(), found: e.path().to_string() });
        }
        let mut out = BimElement::zero(self.codomain().clone());
        for (exps, c) in e.terms() {
            out = out.add(&self.on_basis(exps)?.mul_right(c))?;
        }
        Ok(out)
    }

    /// Evaluates on a raw tensor by normalizing first.
    pub fn apply_raw(&self, raw: &RawTensor) -> Result<BimElement, MapError> {
        self.apply(&normalize(raw)?)
    }

    /// All basis images, in basis order.
    pub fn matrix(&self) -> Result<Vec<(Exponents, BimElement)>, MapError> {
        self.domain()
            .basis()
            .into_iter()
            .map(|e| self.on_basis(&e).map(|v| (e, v)))
            .collect()
    }

    pub fn is_zero_map(&self) -> Result<bool, MapError> {
        Ok(self.matrix()?.iter().all(|(_, v)| v.is_zero()))
    }

    /// Degree measured on the basis: output degree minus input degree, shifts included.
    pub fn measured_degree(&self) -> Result<MeasuredDegree, MapError> {
        let mut found: Option<i64> = None;
        for (e, v) in self.matrix()? {
            let d_in = 2 * e.iter().map(|&a| a as i64).sum::<i64>() + self.domain().shift();
            let d = match v.degree() {
                Homogeneity::AnyDegree => continue,
                Homogeneity::Degree(d_out) => d_out - d_in,
                Homogeneity::Inhomogeneous => {
                    return Ok(MeasuredDegree::Inhomogeneous(format!("image of {e:?} is {v}")));
                }
            };
            match found {
                None => found = Some(d),
                Some(f) if f != d => {
                    return Ok(MeasuredDegree::Inhomogeneous(format!("degrees {f} and {d} (at {e:?})")));
                }
                _ => {}
            }
        }
        Ok(found.map_or(MeasuredDegree::ZeroMap, MeasuredDegree::Degree))
    }
}

impl fmt::Display for BimMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [deg {}]", self.domain(), self.codomain(), self.declared_degree())
    }
}
