use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use catsl2_core::bimodules::{normalize, random_raw_tensor, random_ring_element, BimElement, FlagPath, Side};
use catsl2_core::diagramlang::{compile_diagram, random_diagram, DiagramAst};
use catsl2_core::exactpoly::{rat, series_invert, Homogeneity, Monomial, Polynomial};
use catsl2_core::grassrings::GrassContext;
use catsl2_core::twomorphisms::{map_equals, BimMap, Generator, GeneratorKind, Turn};

fn context() -> impl Strategy<Value = GrassContext> {
    (1i64..=4).prop_flat_map(|n| (Just(n), 0..=n)).prop_map(|(n, k)| GrassContext::new(n, k).unwrap())
}

fn poly_in(ctx: GrassContext, terms: Vec<(i64, Vec<u32>)>) -> Polynomial {
    let gens = ctx.generators();
    let mut p = Polynomial::zero();
    for (c, exps) in terms {
        let m = Monomial::from_pairs(gens.iter().copied().zip(exps).filter(|(_, e)| *e > 0));
        p.add_term(m, rat(c));
    }
    p
}

fn raw_terms(max_terms: usize) -> impl Strategy<Value = Vec<(i64, Vec<u32>)>> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0u32..3, 8)), 0..=max_terms)
}

fn ring_triple() -> impl Strategy<Value = (Polynomial, Polynomial, Polynomial)> {
    (context(), raw_terms(4), raw_terms(4), raw_terms(4))
        .prop_map(|(ctx, a, b, c)| (poly_in(ctx, a), poly_in(ctx, b), poly_in(ctx, c)))
}

/// A single term with nonzero coefficient: homogeneous unless zero.
fn monomial_in(ctx: GrassContext) -> impl Strategy<Value = Polynomial> {
    (1i64..=5, prop::collection::vec(0u32..4, 8)).prop_map(move |(c, e)| poly_in(ctx, vec![(c, e)]))
}

fn generator_kind() -> impl Strategy<Value = GeneratorKind> {
    prop_oneof![
        Just(GeneratorKind::Dot { up: true }),
        Just(GeneratorKind::Dot { up: false }),
        Just(GeneratorKind::Crossing { up: true }),
        Just(GeneratorKind::Crossing { up: false }),
        Just(GeneratorKind::Cup(Turn::FE)),
        Just(GeneratorKind::Cup(Turn::EF)),
        Just(GeneratorKind::Cap(Turn::FE)),
        Just(GeneratorKind::Cap(Turn::EF)),
    ]
}

fn random_element(path: &FlagPath, seed: u64) -> BimElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    normalize(&random_raw_tensor(&mut rng, path, 3)).unwrap()
}

fn degree(h: Homogeneity) -> Option<i64> {
    match h {
        Homogeneity::Degree(d) => Some(d),
        _ => None,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((a, b, c) in ring_triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Polynomial::zero(), a.clone());
        prop_assert_eq!(&a * &Polynomial::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), Polynomial::zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_inversion_is_an_inverse(ctx in context(), tail in prop::collection::vec(raw_terms(3), 1..5), top in 0usize..7) {
        let mut series = vec![Polynomial::one()];
        series.extend(tail.into_iter().map(|t| poly_in(ctx, t)));
        let inv = series_invert(&series, top).unwrap();
        prop_assert_eq!(inv.len(), top + 1);
        for d in 0..=top {
            let product = (0..=d).fold(Polynomial::zero(), |acc, j| {
                let s = series.get(j).cloned().unwrap_or_else(Polynomial::zero);
                acc + &s * &inv[d - j]
            });
            let delta = if d == 0 { Polynomial::one() } else { Polynomial::zero() };
            prop_assert_eq!(product, delta, "degree {}", d);
        }
        let back = series_invert(&inv, top).unwrap();
        for (d, b) in back.iter().enumerate() {
            let s = series.get(d).cloned().unwrap_or_else(Polynomial::zero);
            prop_assert_eq!(b, &s);
        }
    }

    #[test]
    fn degrees_add_under_multiplication((p, q) in context().prop_flat_map(|c| (monomial_in(c), monomial_in(c)))) {
        let (dp, dq) = (degree(p.homogeneous_degree()).unwrap(), degree(q.homogeneous_degree()).unwrap());
        prop_assert_eq!(degree((&p * &q).homogeneous_degree()), Some(dp + dq));
    }

    #[test]
    fn degrees_add_under_the_action(n in 1u32..=3, seed in any::<u64>(), exps in prop::collection::vec(0u32..3, 8)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let paths: Vec<FlagPath> = catsl2_core::bimodules::short_paths(n, 3).into_iter().filter(|p| !p.is_zero()).collect();
        let path = paths[seed as usize % paths.len()].clone();
        let basis = path.basis();
        let e = BimElement::basis_vector(path.clone(), basis[rng.gen_range(0..basis.len())].clone()).unwrap();
        let de = degree(e.degree()).unwrap();
        for side in [Side::Left, Side::Right] {
            let ctx = match side {
                Side::Left => path.source_ctx(),
                Side::Right => path.target_ctx(),
            }.unwrap();
            let r = poly_in(ctx, vec![(1, exps.clone())]);
            let dr = degree(r.homogeneous_degree()).unwrap();
            let image = e.act(side, &r).unwrap();
            if !image.is_zero() {
                prop_assert_eq!(degree(image.degree()), Some(de + dr));
            }
        }
    }

    #[test]
    fn actions_are_associative_and_commute(n in 1u32..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let paths: Vec<FlagPath> = catsl2_core::bimodules::short_paths(n, 3).into_iter().filter(|p| !p.is_zero()).collect();
        let path = paths[seed as usize % paths.len()].clone();
        let e = random_element(&path, seed);
        let (src, tgt) = (path.source_ctx().unwrap(), path.target_ctx().unwrap());
        let (a, b) = (random_ring_element(&mut rng, src, 3), random_ring_element(&mut rng, src, 3));
        let (c, d) = (random_ring_element(&mut rng, tgt, 3), random_ring_element(&mut rng, tgt, 3));
        prop_assert_eq!(e.act(Side::Left, &b).unwrap().act(Side::Left, &a).unwrap(), e.act(Side::Left, &(&a * &b)).unwrap());
        prop_assert_eq!(e.act(Side::Right, &c).unwrap().act(Side::Right, &d).unwrap(), e.act(Side::Right, &(&c * &d)).unwrap());
        prop_assert_eq!(
            e.act(Side::Left, &a).unwrap().act(Side::Right, &c).unwrap(),
            e.act(Side::Right, &c).unwrap().act(Side::Left, &a).unwrap()
        );
        prop_assert_eq!(e.act(Side::Left, &Polynomial::one()).unwrap(), e);
    }

    #[test]
    fn generators_are_bimodule_maps(kind in generator_kind(), n in 1u32..=3, k_seed in any::<u64>(), seed in any::<u64>()) {
        let g = Generator::new(kind, n, (k_seed % (n as u64 + 1)) as i64);
        prop_assume!(!g.is_zero());
        let f = BimMap::generator(g);
        let e = random_element(f.domain(), seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let a = random_ring_element(&mut rng, f.domain().source_ctx().unwrap(), 3);
        let b = random_ring_element(&mut rng, f.domain().target_ctx().unwrap(), 3);
        let moved = e.act(Side::Left, &a).unwrap().act(Side::Right, &b).unwrap();
        let lhs = f.apply(&moved).unwrap();
        let rhs = f.apply(&e).unwrap().act(Side::Left, &a).unwrap().act(Side::Right, &b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compilation_respects_layer_composition(seed in any::<u64>(), cut_seed in any::<usize>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ast = random_diagram(&mut rng, 3, 4, 3);
        prop_assume!(ast.layers.len() >= 2);
        let cut = 1 + cut_seed % (ast.layers.len() - 1);
        let prefix = DiagramAst { layers: ast.layers[..cut].to_vec(), ..ast.clone() };
        let mut suffix = DiagramAst { layers: ast.layers[cut..].to_vec(), ..ast.clone() };
        suffix.domain.value = prefix.codomain();
        let whole = compile_diagram(&ast).unwrap();
        let (p, s) = (compile_diagram(&prefix).unwrap(), compile_diagram(&suffix).unwrap());
        let composed = s.map.compose(&p.map).unwrap();
        prop_assert_eq!(whole.table_degree, p.table_degree + s.table_degree);
        prop_assert!(map_equals(&whole.map, &composed, 2, &mut rng).unwrap().equal);
    }
}
