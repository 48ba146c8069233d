use rand::seq::SliceRandom;
use rand::Rng;

use super::{FlagPath, RawTensor};
use crate::exactpoly::{rat, Monomial, Polynomial, VarSymbol};
use crate::grassrings::GrassContext;

/// A random polynomial in the generators of `ctx` with small integer coefficients.
pub fn random_ring_element<R: Rng>(rng: &mut R, ctx: GrassContext, max_terms: usize) -> Polynomial {
    let gens = ctx.generators();
    random_poly(rng, &gens, max_terms, 1)
}

fn random_poly<R: Rng>(rng: &mut R, gens: &[VarSymbol], max_terms: usize, max_exp: u32) -> Polynomial {
    let mut p = Polynomial::zero();
    let terms = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let mut pairs = Vec::new();
        if !gens.is_empty() {
            for _ in 0..rng.gen_range(0..=2) {
                let s = *gens.choose(rng).unwrap();
                let e = if matches!(s, VarSymbol::Xi { .. }) { rng.gen_range(0..=max_exp) } else { 1 };
                pairs.push((s, e));
            }
        }
        let c = rng.gen_range(-3i64..=3);
        p.add_term(Monomial::from_pairs(pairs), rat(if c == 0 { 1 } else { c }));
    }
    p
}

/// A raw tensor whose factors mix `xi` (exponent up to bound + 2) with canonical
/// and non-canonical generators of both adjacent rings.
pub fn random_raw_tensor<R: Rng>(rng: &mut R, path: &FlagPath, max_terms: usize) -> RawTensor {
    let factors = path
        .steps()
        .into_iter()
        .map(|st| {
            let mut gens = st.lower_ctx().generators();
            gens.extend(st.upper_ctx().generators());
            gens.push(VarSymbol::xi(1));
            gens.push(VarSymbol::xi(1));
            random_poly(rng, &gens, max_terms, st.bound() + 2)
        })
        .collect();
    RawTensor::new(path.clone(), factors).expect("factor count matches")
}

/// Every path inside `0..=N` with at most `max_len` steps, shifted naturally.
pub fn short_paths(n_total: u32, max_len: usize) -> Vec<FlagPath> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<i64>> = (0..=n_total as i64).map(|k| vec![k]).collect();
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for rings in frontier {
            out.push(FlagPath::natural(n_total, rings.clone()).expect("unit steps"));
            let last = *rings.last().unwrap();
            for d in [1, -1] {
                let k = last + d;
                if (0..=n_total as i64).contains(&k) {
                    let mut r = rings.clone();
                    r.push(k);
                    next.push(r);
                }
            }
        }
        frontier = next;
    }
    out
}
