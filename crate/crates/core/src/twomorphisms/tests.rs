use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::bimodules::{normalize, BimElement, RawTensor};
use crate::exactpoly::{Polynomial, VarSymbol};
use crate::grassrings::GrassContext;

fn xi(a: u32) -> Polynomial {
    Polynomial::var(VarSymbol::xi(1)).pow(a)
}

fn gen(kind: GeneratorKind, n: u32, k: i64) -> Generator {
    Generator::new(kind, n, k)
}

const DOT_E: GeneratorKind = GeneratorKind::Dot { up: true };
const CROSS_E: GeneratorKind = GeneratorKind::Crossing { up: true };

fn all_generators(n: u32) -> Vec<Generator> {
    let kinds = [
        DOT_E,
        GeneratorKind::Dot { up: false },
        CROSS_E,
        GeneratorKind::Crossing { up: false },
        GeneratorKind::Cup(Turn::FE),
        GeneratorKind::Cup(Turn::EF),
        GeneratorKind::Cap(Turn::FE),
        GeneratorKind::Cap(Turn::EF),
    ];
    let mut out = Vec::new();
    for kind in kinds {
        for k in 0..=n as i64 {
            let g = gen(kind, n, k);
            if !g.is_zero() {
                out.push(g);
            }
        }
    }
    out
}

#[test]
fn dot_raises_the_exponent() {
    let f = BimMap::generator(gen(DOT_E, 3, 1));
    assert_eq!(f.on_basis(&[0]).unwrap(), BimElement::basis_vector(f.codomain().clone(), vec![1]).unwrap());
    let twice = f.compose(&f).unwrap();
    let expected = normalize(&RawTensor::new(f.domain().clone(), vec![xi(2)]).unwrap()).unwrap();
    assert_eq!(twice.on_basis(&[0]).unwrap(), expected);
    assert_eq!(twice.declared_degree(), 4);
    let identity_path = crate::bimodules::FlagPath::identity(GrassContext::new(3, 1).unwrap());
    assert!(BimMap::place(gen(DOT_E, 3, 1), &identity_path, 0).is_err());
}

#[test]
fn crossing_examples() {
    // display exponents (m1, m2) are (left strand, right strand) = (path[1], path[0])
    let f = BimMap::generator(gen(CROSS_E, 3, 1));
    let cod = f.codomain().clone();
    assert_eq!(f.on_basis(&[0, 1]).unwrap(), BimElement::basis_vector(cod.clone(), vec![0, 0]).unwrap());
    let expected = BimElement::basis_vector(cod.clone(), vec![0, 1])
        .unwrap()
        .add(&BimElement::basis_vector(cod, vec![1, 0]).unwrap())
        .unwrap();
    assert_eq!(gen(CROSS_E, 3, 1).image(&[0, 2]).unwrap(), expected);
    for m in 0..=1 {
        assert!(f.on_basis(&[m, m]).unwrap().is_zero());
    }
    assert!(f.compose(&f).unwrap().is_zero_map().unwrap());
}

#[test]
fn cup_examples() {
    let c0 = BimMap::generator(gen(GeneratorKind::Cup(Turn::FE), 2, 0));
    assert_eq!(c0.on_basis(&[]).unwrap(), BimElement::basis_vector(c0.codomain().clone(), vec![0, 0]).unwrap());
    let g = gen(GeneratorKind::Cup(Turn::FE), 3, 1);
    let ctx = GrassContext::new(3, 1).unwrap();
    let p = g.codomain();
    let raw = |a: Polynomial, b: Polynomial| normalize(&RawTensor::new(p.clone(), vec![a, b]).unwrap()).unwrap();
    let expected = raw(Polynomial::one(), xi(1)).sub(&raw(ctx.x(1), Polynomial::one())).unwrap();
    let value = BimMap::generator(g).on_basis(&[]).unwrap();
    assert_eq!(value, expected);
    let two_sided = raw(xi(1), Polynomial::one()).sub(&raw(Polynomial::one(), ctx.x(1))).unwrap();
    assert_eq!(value, two_sided);
    assert!(gen(GeneratorKind::Cup(Turn::FE), 3, 3).is_zero());
}

#[test]
fn cap_examples() {
    for n in 1..=4u32 {
        let k = n as i64 - 1;
        let f = BimMap::generator(gen(GeneratorKind::Cap(Turn::FE), n, k));
        assert!(f.on_basis(&[0, 0]).unwrap().coefficient(&[]).is_one());
        for k in 0..=n as i64 - 2 {
            let f = BimMap::generator(gen(GeneratorKind::Cap(Turn::FE), n, k));
            assert!(f.on_basis(&[0, 0]).unwrap().is_zero());
        }
        let f = BimMap::generator(gen(GeneratorKind::Cap(Turn::EF), n, 1));
        assert!(f.on_basis(&[0, 0]).unwrap().coefficient(&[]).is_one());
    }
}

#[test]
fn composition_and_whiskering() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = BimMap::generator(gen(CROSS_E, 3, 0));
    let id = BimMap::identity(f.domain().clone());
    assert!(map_equals(&f.compose(&id).unwrap(), &f, 5, &mut rng).unwrap().equal);
    assert!(map_equals(&f, &f, 5, &mut rng).unwrap().equal);
    let empty = crate::bimodules::FlagPath::identity(GrassContext::new(3, 0).unwrap());
    let end = crate::bimodules::FlagPath::identity(GrassContext::new(3, 2).unwrap());
    assert!(map_equals(&f.whisker(&empty, &end).unwrap(), &f, 5, &mut rng).unwrap().equal);

    let ee = compile_word(&SignedWord::new("E E", -3), 3, Default::default()).unwrap();
    let d1 = BimMap::place(gen(DOT_E, 3, 0), &ee, 0).unwrap();
    let d2 = BimMap::place(gen(DOT_E, 3, 1), &ee, 1).unwrap();
    let a = d1.compose(&d2).unwrap();
    let b = d2.compose(&d1).unwrap();
    assert!(map_equals(&a, &b, 10, &mut rng).unwrap().equal);

    let four = compile_word(&SignedWord::new("E F E F", 0), 2, Default::default()).unwrap();
    let cap = BimMap::place(gen(GeneratorKind::Cap(Turn::EF), 2, 1), &four, 2).unwrap();
    assert_eq!(cap.codomain().len(), four.len() - 2);
    assert_eq!(cap.codomain().rings(), &[1, 0, 1]);
    assert!(BimMap::place(gen(GeneratorKind::Cap(Turn::EF), 2, 1), &four, 1).is_err());
}

#[test]
fn zigzag_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let e = compile_word(&SignedWord::new("E", -1), 1, Default::default()).unwrap();
    let cup = BimMap::generator(gen(GeneratorKind::Cup(Turn::FE), 1, 0))
        .whisker(&crate::bimodules::FlagPath::identity(GrassContext::new(1, 0).unwrap()), &e)
        .unwrap();
    let cap = BimMap::place(gen(GeneratorKind::Cap(Turn::EF), 1, 1), cup.codomain(), 1).unwrap();
    let zig = cap.compose(&cup).unwrap();
    let report = map_equals(&zig, &BimMap::identity(e.clone()), 10, &mut rng).unwrap();
    assert!(report.equal, "{report:?}");
}

#[test]
fn degree_audit_and_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=3 {
        for g in all_generators(n) {
            let f = BimMap::generator(g);
            match f.measured_degree().unwrap() {
                MeasuredDegree::Degree(d) => assert_eq!(d, g.declared_degree(), "{g}"),
                MeasuredDegree::ZeroMap => {}
                MeasuredDegree::Inhomogeneous(why) => panic!("{g}: {why}"),
            }
            assert_eq!(check_bimodule_law(&f, 10, &mut rng).unwrap(), None, "{g}");
            assert_eq!(check_well_defined(g, 2).unwrap(), None, "{g}");
        }
    }
}

#[test]
fn words() {
    let n = 3;
    let e = compile_word(&SignedWord::new("E", -3), n, Default::default()).unwrap();
    assert_eq!((e.rings().to_vec(), e.shift()), (vec![0, 1], 1 - 3));
    assert!(compile_word(&SignedWord::new("F", -3), n, Default::default()).unwrap().is_zero());
    assert!(compile_word(&SignedWord::new("E", 0), n, Default::default()).is_err());
    let ef = compile_word(&SignedWord::new("EF", 1), 1, Default::default()).unwrap();
    assert_eq!(ef.rings(), &[1, 0, 1]);
}
