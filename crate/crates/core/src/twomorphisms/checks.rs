use rand::Rng;

use super::{BimMap, Generator, MapError};
use crate::bimodules::{normalize, random_ring_element, BimElement, RawTensor, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityReport {
    pub equal: bool,
    pub checked_basis: usize,
    pub checked_samples: usize,
    /// Rendered description of the first disagreement.
    pub counterexample: Option<String>,
}

/// Compares two maps on every domain basis vector, then on `extra_samples`
/// decorated elements `r . b . r'` (which also exercises left linearity).
pub fn map_equals<R: Rng>(f: &BimMap, g: &BimMap, extra_samples: usize, rng: &mut R) -> Result<EqualityReport, MapError> {
    if f.domain() != g.domain() || !f.codomain().same_rings(g.codomain()) {
        return Err(MapError::Mismatch {
            expected: format!("{} -> {}", f.domain(), f.codomain()),
            found: format!("{} -> {}", g.domain(), g.codomain()),
        });
    }
    let basis = f.domain().basis();
    let mut report = EqualityReport { equal: true, checked_basis: 0, checked_samples: 0, counterexample: None };
    for e in &basis {
        let (a, b) = (f.on_basis(e)?, g.on_basis(e)?);
        report.checked_basis += 1;
        if a.reshift(0) != b.reshift(0) {
            report.equal = false;
            report.counterexample = Some(format!("basis {e:?}: {a} vs {b}"));
            return Ok(report);
        }
    }
    let (Some(left), Some(right)) = (f.domain().source_ctx(), f.domain().target_ctx()) else {
        return Ok(report);
    };
    for _ in 0..extra_samples {
        if basis.is_empty() {
            break;
        }
        let e = &basis[rng.gen_range(0..basis.len())];
        let r = random_ring_element(rng, left, 2);
        let r2 = random_ring_element(rng, right, 2);
        let x = BimElement::basis_vector(f.domain().clone(), e.clone())?
            .act(Side::Left, &r)?
            .act(Side::Right, &r2)?;
        let (a, b) = (f.apply(&x)?, g.apply(&x)?);
        report.checked_samples += 1;
        if a.reshift(0) != b.reshift(0) {
            report.equal = false;
            report.counterexample = Some(format!("({r}) . {e:?} . ({r2}): {a} vs {b}"));
            return Ok(report);
        }
    }
    Ok(report)
}

/// `f(r . e . r') = r . f(e) . r'` on random basis vectors and ring elements.
/// Returns the first violation.
pub fn check_bimodule_law<R: Rng>(f: &BimMap, samples: usize, rng: &mut R) -> Result<Option<String>, MapError> {
    let basis = f.domain().basis();
    let (Some(left), Some(right)) = (f.domain().source_ctx(), f.domain().target_ctx()) else {
        return Ok(None);
    };
    if basis.is_empty() {
        return Ok(None);
    }
    for _ in 0..samples {
        let e = BimElement::basis_vector(f.domain().clone(), basis[rng.gen_range(0..basis.len())].clone())?;
        let r = random_ring_element(rng, left, 3);
        let r2 = random_ring_element(rng, right, 3);
        let lhs = f.apply(&e.act(Side::Left, &r)?.act(Side::Right, &r2)?)?;
        let rhs = f.apply(&e)?.act(Side::Left, &r)?.act(Side::Right, &r2)?;
        if lhs != rhs {
            return Ok(Some(format!("r = {r}, r' = {r2}, e = {e}: {lhs} vs {rhs}")));
        }
    }
    Ok(None)
}

/// The generator's formula applied to unreduced exponents (up to `excess` above
/// each bound) agrees with applying it to the normal form.
pub fn check_well_defined(g: Generator, excess: u32) -> Result<Option<String>, MapError> {
    let domain = g.domain();
    if g.is_zero() {
        return Ok(None);
    }
    let f = BimMap::generator(g);
    let bounds = domain.bounds();
    let mut vectors: Vec<Vec<u32>> = vec![Vec::new()];
    for b in bounds {
        vectors = vectors
            .into_iter()
            .flat_map(|p| {
                (0..=b + excess).map(move |a| {
                    let mut v = p.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    for exps in vectors {
        let direct = g.image(&exps)?;
        let via_normal = f.apply(&normalize(&RawTensor::monomial(domain.clone(), &exps)?)?)?;
        if direct != via_normal {
            return Ok(Some(format!("{g} on {exps:?}: formula {direct} vs normal form {via_normal}")));
        }
    }
    Ok(None)
}
