use super::*;
use crate::exactpoly::Homogeneity;

fn ctx(n: i64, k: i64) -> GrassContext {
    GrassContext::new(n, k).unwrap()
}

// Oracle: Y_b as a signed sum over compositions of b with parts in 1..=k.
fn y_class_by_compositions(c: GrassContext, beta: i64) -> Polynomial {
    fn walk(c: GrassContext, rest: i64, parts: &mut Vec<i64>, out: &mut Polynomial) {
        if rest == 0 {
            let mut term = Polynomial::integer(if parts.len().is_multiple_of(2) { 1 } else { -1 });
            for &p in parts.iter() {
                term = &term * &c.x(p);
            }
            *out += &term;
            return;
        }
        for p in 1..=rest.min(c.k() as i64) {
            parts.push(p);
            walk(c, rest - p, parts, out);
            parts.pop();
        }
    }
    let mut out = Polynomial::zero();
    walk(c, beta, &mut Vec::new(), &mut out);
    out
}

#[test]
fn low_y_classes_match_closed_forms() {
    let c = ctx(4, 3);
    let n = c.weight();
    let x = |j| Polynomial::var(VarSymbol::x(j, n));
    assert_eq!(special_class(c, Family::Y, 1), -x(1));
    assert_eq!(special_class(c, Family::Y, 2), &x(1).pow(2) - &x(2));
    let y3 = &(&(-x(3)) + &(&x(1) * &x(2)).scale_int(2)) - &x(1).pow(3);
    assert_eq!(special_class(c, Family::Y, 3), y3);
}

#[test]
fn base_cases() {
    for c in GrassContext::all(3) {
        assert!(special_class(c, Family::X, 0).is_one());
        assert!(special_class(c, Family::Y, -2).is_zero());
    }
    assert!(special_class(ctx(3, 0), Family::Y, 1).is_zero());
    assert!(special_class(ctx(3, 0), Family::Y, 4).is_zero());
}

#[test]
fn recursion_agrees_with_composition_oracle() {
    for n in 1..=4 {
        for c in GrassContext::all(n) {
            for beta in 0..=2 * n as i64 + 2 {
                assert_eq!(special_class(c, Family::Y, beta), y_class_by_compositions(c, beta), "{c} beta={beta}");
            }
        }
    }
}

#[test]
fn special_classes_are_homogeneous() {
    for n in 1..=4 {
        for c in GrassContext::all(n) {
            for a in 0..=2 * n as i64 + 4 {
                for fam in [Family::X, Family::Y] {
                    match special_class(c, fam, a).homogeneous_degree() {
                        Homogeneity::AnyDegree => {}
                        Homogeneity::Degree(d) => assert_eq!(d, 2 * a),
                        Homogeneity::Inhomogeneous => panic!("{c} {fam:?} {a}"),
                    }
                }
            }
        }
    }
}

#[test]
fn bubble_values() {
    for c in GrassContext::all(3) {
        for o in [Orientation::Clockwise, Orientation::Counterclockwise] {
            assert!(bubble_value(c, o, 0).is_one());
            assert!(bubble_value(c, o, -1).is_zero());
        }
    }
    let c = ctx(3, 1);
    assert_eq!(bubble_value(c, Orientation::Clockwise, 1), &c.x(1) - &c.y(1));
    let top = ctx(3, 3);
    assert_eq!(bubble_value(top, Orientation::Clockwise, 1), top.x(1));
    let bottom = ctx(3, 0);
    assert_eq!(bubble_value(bottom, Orientation::Counterclockwise, 1), bottom.y(1));
}

#[test]
fn series_identities() {
    assert!(check_series_identity(ctx(2, 1), SeriesIdentity::XY, 6).holds);
    assert!(check_series_identity(ctx(1, 0), SeriesIdentity::YX, 4).holds);
    for n in 1..=4 {
        for c in GrassContext::all(n) {
            assert!(check_series_identity(c, SeriesIdentity::BubbleProduct, 0).holds);
            for which in [SeriesIdentity::XY, SeriesIdentity::YX, SeriesIdentity::BubbleProduct] {
                assert!(check_series_identity(c, which, 2 * n as i64).holds, "{c} {which:?}");
            }
        }
    }
}

#[test]
fn catalogs() {
    let c = ctx(3, 1);
    assert_eq!(c.generators().len(), 3);
    assert!(c.x(2).is_zero());
    assert!(c.y(3).is_zero());
    assert!(c.owns(&VarSymbol::y(2, -1)));
    assert!(!c.owns(&VarSymbol::x(2, -1)));
    let step = StepContext::new(c).unwrap();
    assert_eq!(
        step.canonical_generators(),
        vec![VarSymbol::x(1, -1), VarSymbol::xi(1), VarSymbol::y(1, 1)]
    );
    assert!(StepContext::new(ctx(3, 3)).is_none());
    assert_eq!(GrassContext::from_weight(3, -1).unwrap(), c);
    assert!(GrassContext::from_weight(3, 0).is_err());
}
