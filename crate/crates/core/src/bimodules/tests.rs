use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::exactpoly::{LaurentPoly, Polynomial, VarSymbol};
use crate::grassrings::GrassContext;

fn path(n: u32, rings: &[i64]) -> FlagPath {
    FlagPath::new(n, rings.to_vec(), 0).unwrap()
}

fn xi() -> Polynomial {
    Polynomial::var(VarSymbol::xi(1))
}

fn ctx(n: i64, k: i64) -> GrassContext {
    GrassContext::new(n, k).unwrap()
}

#[test]
fn xi_crosses_an_excursion() {
    let p = path(1, &[0, 1, 0]);
    let raw = RawTensor::new(p.clone(), vec![xi(), Polynomial::one()]).unwrap();
    let e = normalize(&raw).unwrap();
    let expected = BimElement::from_terms(p, [(vec![0, 0], ctx(1, 0).y(1))]).unwrap();
    assert_eq!(e, expected);
}

#[test]
fn unit_tensor_is_the_zero_basis_vector() {
    for rings in [vec![2], vec![1, 2], vec![1, 2, 1, 0], vec![3, 2, 3]] {
        let p = path(3, &rings);
        let raw = RawTensor::new(p.clone(), vec![Polynomial::one(); p.len()]).unwrap();
        assert_eq!(normalize(&raw).unwrap(), BimElement::basis_vector(p.clone(), vec![0; p.len()]).unwrap());
    }
}

#[test]
fn xi_squared_on_a_two_dimensional_step() {
    // xi is a root of t^2 - x_{1,2} t + x_{2,2} because (1 + xi t)(1 + x_{1,0} t) = x_{.,2}(t)
    let p = path(2, &[1, 2]);
    let e = normalize(&RawTensor::new(p.clone(), vec![xi().pow(2)]).unwrap()).unwrap();
    let top = ctx(2, 2);
    let expected = BimElement::from_terms(p, [(vec![1], top.x(1)), (vec![0], -top.x(2))]).unwrap();
    assert_eq!(e, expected);
}

#[test]
fn factor_relation_is_the_vanishing_generator() {
    // the monic relation is exactly x_{k+1,n} = 0 (up) or y_{N-k,n+2} = 0 (down)
    for n in 1..=4u32 {
        for lower in 0..n {
            for up in [true, false] {
                let st = Step { n_total: n, lower, up };
                let alg = FactorAlgebra::get(st);
                let vanishing = if up {
                    VarSymbol::x(lower + 1, st.lower_ctx().weight())
                } else {
                    VarSymbol::y(n - lower, st.upper_ctx().weight())
                };
                let unreduced = alg.raw_image(&vanishing).unwrap();
                assert!(alg.reduce(unreduced).iter().all(Polynomial::is_zero), "{st:?}");
            }
        }
    }
}

#[test]
fn basis_and_rank_examples() {
    for n in 2..=4 {
        assert_eq!(path(n, &[1, 2]).basis(), vec![vec![0], vec![1]]);
        assert_eq!(graded_rank(&path(n, &[1, 2])), &LaurentPoly::q_pow(0) + &LaurentPoly::q_pow(2));
    }
    assert_eq!(path(2, &[1]).basis(), vec![Vec::<u32>::new()]);
    assert_eq!(graded_rank(&FlagPath::new(2, vec![1], 5).unwrap()), LaurentPoly::q_pow(5));
    assert_eq!(path(1, &[0, 1, 0]).basis(), vec![vec![0, 0]]);
    assert_eq!(graded_rank(&path(1, &[0, 1, 0])), LaurentPoly::q_pow(0));
    let p = path(3, &[1, 2, 1, 0]);
    assert_eq!(p.basis().len(), 2 * 2 * 3);
}

#[test]
fn zero_paths() {
    let p = path(2, &[2, 3, 2]);
    assert!(p.is_zero());
    assert!(p.basis().is_empty());
    let raw = RawTensor::new(p.clone(), vec![xi(), xi()]).unwrap();
    assert!(normalize(&raw).unwrap().is_zero());
    assert!(graded_rank(&p).is_zero());
}

#[test]
fn actions() {
    let p = path(2, &[1, 2, 1]);
    let unit = BimElement::basis_vector(p.clone(), vec![0, 0]).unwrap();
    let c = ctx(2, 1);
    let right = unit.act(Side::Right, &c.y(1)).unwrap();
    assert_eq!(right.coefficient(&[0, 0]), c.y(1));
    assert_eq!(unit.act(Side::Left, &Polynomial::one()).unwrap(), unit);
    let left = unit.act(Side::Left, &c.x(1)).unwrap();
    assert_ne!(left, unit.act(Side::Right, &c.x(1)).unwrap());
    assert!(unit.act(Side::Left, &ctx(2, 2).x(2)).is_err());
}

#[test]
fn symmetric_excursion_has_equal_actions() {
    // (0,1,0) at N=1 has rank one over H_0, so both actions of y_{1,-1} agree
    let p = path(1, &[0, 1, 0]);
    let unit = BimElement::basis_vector(p, vec![0, 0]).unwrap();
    let y = ctx(1, 0).y(1);
    assert_eq!(unit.act(Side::Left, &y).unwrap(), unit.act(Side::Right, &y).unwrap());
}

#[test]
fn tensor_examples() {
    let a = normalize(&RawTensor::new(path(1, &[0, 1]), vec![xi()]).unwrap()).unwrap();
    let b = BimElement::basis_vector(path(1, &[1, 0]), vec![0]).unwrap();
    let expected = BimElement::from_terms(path(1, &[0, 1, 0]), [(vec![0, 0], ctx(1, 0).y(1))]).unwrap();
    assert_eq!(a.tensor(&b).unwrap(), expected);
    let id_left = BimElement::basis_vector(path(1, &[0]), vec![]).unwrap();
    assert_eq!(id_left.tensor(&a).unwrap(), a);
    let id_right = BimElement::basis_vector(path(1, &[1]), vec![]).unwrap();
    assert_eq!(a.tensor(&id_right).unwrap(), a);
    assert!(a.tensor(&a).is_err());
}

#[test]
fn junction_relations() {
    for n in 1..=3u32 {
        for p in short_paths(n, 3) {
            for junction in 1..p.len() {
                let ring = p.ring_ctx(junction).unwrap();
                for s in ring.generators() {
                    let mut before = vec![Polynomial::one(); p.len()];
                    before[junction - 1] = Polynomial::var(s);
                    let mut after = vec![Polynomial::one(); p.len()];
                    after[junction] = Polynomial::var(s);
                    let lhs = normalize(&RawTensor::new(p.clone(), before).unwrap()).unwrap();
                    let rhs = normalize(&RawTensor::new(p.clone(), after).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "{p} junction {junction} {s}");
                }
            }
        }
    }
}

#[test]
fn rewrite_strategies_agree_with_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=2 {
        for p in short_paths(n, 3) {
            for _ in 0..5 {
                let raw = random_raw_tensor(&mut rng, &p, 2);
                let sweep = normalize(&raw).unwrap();
                for s in [Strategy::LeftmostFirst, Strategy::RightmostFirst] {
                    let (e, _) = rewrite_normalize(&raw, s).unwrap();
                    assert_eq!(e, sweep, "{p} {s:?}");
                }
            }
        }
    }
}

#[test]
fn rendering_uses_diagram_order() {
    let p = path(1, &[0, 1, 0]);
    let e = BimElement::from_terms(p, [(vec![0, 0], ctx(1, 0).y(1))]).unwrap();
    assert_eq!(e.to_string(), "y[1]@-1 | 1");
    let q = path(3, &[1, 2, 1]);
    let f = BimElement::from_terms(q, [(vec![1, 0], Polynomial::one()), (vec![0, 0], -ctx(3, 1).x(1))]).unwrap();
    assert_eq!(f.to_string(), "1 | xi - x[1]@-1 | 1");
    assert_eq!(BimElement::zero(path(2, &[1])).to_string(), "0");
}

#[test]
fn words_and_shifts() {
    let e = FlagPath::from_word(3, &['E'], 0, ShiftConvention::TheoremProof).unwrap();
    assert_eq!((e.rings().to_vec(), e.shift()), (vec![0, 1], -2));
    let ef = FlagPath::from_word(1, &['E', 'F'], 1, ShiftConvention::TheoremProof).unwrap();
    assert_eq!((ef.rings().to_vec(), ef.shift()), (vec![1, 0, 1], 0));
    assert_eq!(ef.word(), vec!['E', 'F']);
    let table = FlagPath::from_word(1, &['E', 'F'], 1, ShiftConvention::Table).unwrap();
    assert_eq!(table.shift(), 1);
    assert!(FlagPath::from_word(2, &['F'], 0, ShiftConvention::TheoremProof).unwrap().is_zero());
    assert!(FlagPath::new(2, vec![0, 2], 0).is_err());
}
