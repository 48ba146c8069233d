//! A small term-rewriting engine computing the same normal form as
//! [`normalize`](super::normalize) one local rule at a time.
//!
//! Rules, applied inside a single factor:
//! - transport-in: a generator of the factor's left ring is replaced by its
//!   expression in `xi` and right-ring generators;
//! - reduce: `xi^(bound+1)` is replaced by the monic relation;
//! - transport-out: a right-ring generator moves into the next factor (or the
//!   coefficient, after the last factor).
//!
//! Every step replaces a term by terms whose measure is strictly smaller, where
//! the measure is the per-factor triple (left-generator exponent, `xi` excess,
//! right-generator exponent) compared lexicographically from the first factor.

use std::collections::{BTreeMap, HashMap};

use super::{BimElement, BimError, FactorAlgebra, RawTensor};
use crate::exactpoly::{rat, Monomial, Polynomial, Rational, VarSymbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Always rewrite the leftmost dirty factor (source side first).
    LeftmostFirst,
    /// Always rewrite the rightmost dirty factor.
    RightmostFirst,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub steps: usize,
    pub peak_terms: usize,
}

pub type Measure = Vec<(u32, u32, u32)>;

#[derive(Clone, Debug)]
struct Term {
    factors: Vec<Monomial>,
    coefficient: Monomial,
    scalar: Rational,
}

const STEP_LIMIT: usize = 5_000_000;

fn xi() -> VarSymbol {
    VarSymbol::xi(1)
}

fn is_xi(s: &VarSymbol) -> bool {
    matches!(s, VarSymbol::Xi { .. })
}

/// Per-factor measure of a term.
fn measure(algs: &[std::sync::Arc<FactorAlgebra>], t: &Term) -> Measure {
    algs.iter()
        .zip(&t.factors)
        .map(|(alg, m)| {
            let left_w = alg.left().weight();
            let (mut left, mut right, mut xi_exp) = (0, 0, 0);
            for &(s, e) in m.factors() {
                match s.weight() {
                    None => xi_exp += e,
                    Some(w) if w == left_w => left += e,
                    Some(_) => right += e,
                }
            }
            (left, xi_exp.saturating_sub(alg.bound()), right)
        })
        .collect()
}

fn dirty(m: &(u32, u32, u32)) -> bool {
    *m != (0, 0, 0)
}

/// Rewrites one dirty factor of `t`, returning its replacement terms.
fn step(alg: &FactorAlgebra, t: &Term, i: usize, last: bool) -> Result<Vec<Term>, BimError> {
    let m = &t.factors[i];
    let left_w = alg.left().weight();
    let left_sym = m.symbols().copied().find(|s| s.weight() == Some(left_w));
    let xi_exp = m.factors().iter().filter(|(s, _)| is_xi(s)).map(|(_, e)| *e).sum::<u32>();
    let replace = |rest: Monomial, image: &[(Monomial, Rational)]| -> Vec<Term> {
        image
            .iter()
            .map(|(mono, c)| {
                let mut nt = t.clone();
                nt.factors[i] = rest.mul(mono);
                nt.scalar = &t.scalar * c;
                nt
            })
            .collect()
    };
    if let Some(s) = left_sym {
        let raw = alg.raw_image(&s).ok_or_else(|| BimError::ForeignSymbol {
            symbol: s.to_string(),
            place: format!("factor {}", i + 1),
        })?;
        let (e, rest) = m.split_off(&s);
        let rest = rest.mul(&Monomial::power(s, e - 1));
        return Ok(replace(rest, &expand_xi_list(&raw)));
    }
    if xi_exp > alg.bound() {
        let (e, rest) = m.split_off(&xi());
        let rest = rest.mul(&Monomial::power(xi(), e - alg.bound() - 1));
        return Ok(replace(rest, &expand_xi_list(alg.reduction())));
    }
    let right_sym = m.symbols().copied().find(|s| !is_xi(s));
    if let Some(s) = right_sym {
        let (e, rest) = m.split_off(&s);
        let mut nt = t.clone();
        nt.factors[i] = rest.mul(&Monomial::power(s, e - 1));
        if last {
            nt.coefficient = nt.coefficient.mul(&Monomial::var(s));
        } else {
            nt.factors[i + 1] = nt.factors[i + 1].mul(&Monomial::var(s));
        }
        return Ok(vec![nt]);
    }
    Ok(vec![t.clone()])
}

/// `sum_l list[l] xi^l` as explicit monomial terms.
fn expand_xi_list(list: &[Polynomial]) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::new();
    for (l, p) in list.iter().enumerate() {
        for (m, c) in p.terms() {
            out.push((m.mul(&Monomial::power(xi(), l as u32)), c.clone()));
        }
    }
    out
}

/// Normalizes by rewriting, asserting that every step decreases the measure.
pub fn rewrite_normalize(raw: &RawTensor, strategy: Strategy) -> Result<(BimElement, RewriteStats), BimError> {
    let path = &raw.path;
    let mut stats = RewriteStats::default();
    if path.is_zero() {
        return Ok((BimElement::zero(path.clone()), stats));
    }
    let algs: Vec<_> = path.steps().into_iter().map(FactorAlgebra::get).collect();
    let m = path.len();
    let n_total = path.n_total();
    for (i, f) in raw.factors.iter().enumerate() {
        let (lw, rw) = (algs[i].left().weight(), algs[i].right().weight());
        if let Some(s) = f.symbols().into_iter().find(|s| s.weight().is_some_and(|w| w != lw && w != rw)) {
            return Err(BimError::ForeignSymbol { symbol: s.to_string(), place: format!("factor {}", i + 1) });
        }
    }
    // expand the raw tensor into monomial terms, folding every xi symbol into one
    let mut work: Vec<Term> = vec![Term {
        factors: vec![Monomial::one(); m],
        coefficient: Monomial::one(),
        scalar: rat(1),
    }];
    for (i, f) in raw.factors.iter().enumerate() {
        let mut next = Vec::new();
        for t in &work {
            for (mono, c) in f.terms() {
                let folded = Monomial::from_pairs(
                    mono.factors().iter().map(|&(s, e)| (if is_xi(&s) { xi() } else { s }, e)),
                );
                let mut nt = t.clone();
                nt.factors[i] = nt.factors[i].mul(&folded);
                nt.scalar = &nt.scalar * c;
                next.push(nt);
            }
        }
        work = next;
    }
    work.retain(|t| !t.factors.iter().any(|mono| mono.symbols().any(|s| vanishes(n_total, s))));
    // pending terms bucketed by measure; like terms merge before they are rewritten
    let mut pending: BTreeMap<Measure, HashMap<(Vec<Monomial>, Monomial), Rational>> = BTreeMap::new();
    let push = |pending: &mut BTreeMap<Measure, HashMap<(Vec<Monomial>, Monomial), Rational>>, mu: Measure, t: Term| {
        let slot = pending.entry(mu).or_default().entry((t.factors, t.coefficient)).or_insert_with(|| rat(0));
        *slot += t.scalar;
    };
    for t in work {
        push(&mut pending, measure(&algs, &t), t);
    }
    let mut done: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    while let Some((mu, bucket)) = pending.pop_last() {
        stats.peak_terms = stats.peak_terms.max(bucket.len() + pending.values().map(HashMap::len).sum::<usize>());
        let target = match strategy {
            Strategy::LeftmostFirst => mu.iter().position(dirty),
            Strategy::RightmostFirst => mu.iter().rposition(dirty),
        };
        for ((factors, coefficient), scalar) in bucket {
            if scalar == rat(0) {
                continue;
            }
            let t = Term { factors, coefficient, scalar };
            let Some(i) = target else {
                let exps = t.factors.iter().map(|mono| mono.exponent(&xi())).collect();
                let c = Polynomial::term(t.scalar, t.coefficient);
                *done.entry(exps).or_default() += &c;
                continue;
            };
            stats.steps += 1;
            if stats.steps > STEP_LIMIT {
                return Err(BimError::RewriteDiverged(format!("more than {STEP_LIMIT} steps")));
            }
            for nt in step(&algs[i], &t, i, i + 1 == m)? {
                let nu = measure(&algs, &nt);
                if nu >= mu {
                    return Err(BimError::RewriteDiverged(format!("measure {mu:?} did not decrease to {nu:?}")));
                }
                // out-of-range generators are zero
                if nt.factors.iter().chain([&nt.coefficient]).any(|mono| mono.symbols().any(|s| vanishes(n_total, s))) {
                    continue;
                }
                push(&mut pending, nu, nt);
            }
        }
    }
    for c in done.values_mut() {
        *c = &*c * &raw.coefficient;
    }
    Ok((BimElement::from_map_unchecked(path.clone(), done), stats))
}

/// Generators outside their ring's catalog are zero.
fn vanishes(n_total: u32, s: &VarSymbol) -> bool {
    match *s {
        VarSymbol::ChernX { weight, index } => index as i64 > (weight as i64 + n_total as i64) / 2,
        VarSymbol::ChernY { weight, index } => index as i64 > (n_total as i64 - weight as i64) / 2,
        VarSymbol::Xi { .. } => false,
    }
}
