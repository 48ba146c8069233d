use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::bimodules::{BimElement, FlagPath};
use crate::exactpoly::rat;
use crate::grassrings::{bubble_value, GrassContext, Orientation};
use crate::twomorphisms::{map_equals, BimMap, MeasuredDegree};

fn header(n: i64, w: i64, domain: &str) -> String {
    format!("N = {n}\nweight = {w}\ndomain = {domain}\n")
}

#[test]
fn parses_a_bubble() {
    let ast = parse_diagram("N = 1\nweight = -1\ndomain = 1\nlayer: cup_fe\nlayer: cap_fe").unwrap();
    assert_eq!(ast.layers.len(), 2);
    assert_eq!(ast.layers[0].value[0].value, Token::CupFE);
    assert!(ast.codomain().is_empty());
}

#[test]
fn spans_point_at_tokens() {
    let ast = parse_diagram(&format!("{}layer: cross_ee  # comment", header(3, -3, "E E"))).unwrap();
    assert_eq!(ast.layers[0].value[0].span, SourceSpan::new(4, 8, 15));
}

#[test]
fn arity_and_orientation_errors() {
    let err = parse_diagram(&format!("{}layer: cap_fe", header(2, 0, "E"))).unwrap_err();
    assert_eq!(err.kind, DslErrorKind::StrandCount);
    assert!(err.message.contains("cap consumes 2 strands, found 1"), "{}", err.message);
    assert_eq!(err.span.line, 4);
    let err = parse_diagram(&format!("{}layer: cap_fe", header(2, 0, "E F"))).unwrap_err();
    assert_eq!(err.kind, DslErrorKind::Orientation);
    let err = parse_diagram(&format!("{}layer: dot_e", header(2, 0, "E E"))).unwrap_err();
    assert_eq!(err.kind, DslErrorKind::StrandCount);
    let err = parse_diagram(&format!("{}layer: wiggle", header(2, 0, "E"))).unwrap_err();
    assert_eq!(err.kind, DslErrorKind::UnknownToken);
    assert_eq!(err.span, SourceSpan::new(4, 8, 13));
    assert_eq!(parse_diagram("N = 2\nweight = 1\ndomain = 1").unwrap_err().kind, DslErrorKind::Header);
    assert_eq!(parse_diagram("N = 2\nweight = 0").unwrap_err().kind, DslErrorKind::Header);
}

#[test]
fn render_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let ast = random_diagram(&mut rng, 3, 4, 4);
        let text = render_diagram(&ast);
        assert_eq!(parse_diagram(&text).unwrap(), ast, "{text}");
    }
}

#[test]
fn dot_diagram_is_the_dot() {
    let d = compile_diagram(&parse_diagram(&format!("{}layer: dot_e", header(2, 0, "E"))).unwrap()).unwrap();
    let e = parse_element("1", d.map.domain()).unwrap();
    assert_eq!(d.map.apply(&e).unwrap().to_string(), "xi");
    assert_eq!(d.table_degree, 2);
}

#[test]
fn crossing_diagram_evaluation() {
    let d = compile_diagram(&parse_diagram(&format!("{}layer: cross_ee", header(2, -2, "E E"))).unwrap()).unwrap();
    let e = parse_element("xi | 1", d.map.domain()).unwrap();
    assert_eq!(d.map.apply(&e).unwrap().to_string(), "1 | 1");
}

#[test]
fn bubbles_compile_to_bubble_values() {
    for n in 1..=3i64 {
        for k in 0..=n {
            let w = 2 * k - n;
            for dots in 0..=3u32 {
                for (cup, dot, cap, orient) in [
                    ("cup_fe", "id_f dot_e", "cap_fe", Orientation::Counterclockwise),
                    ("cup_ef", "id_e dot_f", "cap_ef", Orientation::Clockwise),
                ] {
                    let mut text = format!("{}layer: {cup}\n", header(n, w, "1"));
                    for _ in 0..dots {
                        text.push_str(&format!("layer: {dot}\n"));
                    }
                    text.push_str(&format!("layer: {cap}\n"));
                    let d = compile_diagram(&parse_diagram(&text).unwrap()).unwrap();
                    let ctx = GrassContext::new(n, k).unwrap();
                    let alpha = match orient {
                        Orientation::Clockwise => dots as i64 - w + 1,
                        Orientation::Counterclockwise => dots as i64 + w + 1,
                    };
                    let value = d.map.on_basis(&[]).unwrap().coefficient(&[]);
                    let zero_path = d.map.domain().is_zero() || !d.warnings.is_empty();
                    let expected_path_ok = match orient {
                        Orientation::Counterclockwise => k < n,
                        Orientation::Clockwise => k > 0,
                    };
                    if expected_path_ok {
                        assert!(!zero_path);
                        assert_eq!(value, bubble_value(ctx, orient, alpha), "{text}");
                    }
                }
            }
        }
    }
}

#[test]
fn zigzag_diagram_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d = compile_diagram(&parse_diagram(&format!("{}layer: id_e cup_fe\nlayer: cap_ef id_e", header(1, -1, "E"))).unwrap()).unwrap();
    assert!(map_equals(&d.map, &BimMap::identity(d.map.domain().clone()), 5, &mut rng).unwrap().equal);
    assert_eq!(d.map.measured_degree().unwrap(), MeasuredDegree::Degree(0));
}

#[test]
fn zero_domain_warns() {
    let d = compile_diagram(&parse_diagram(&format!("{}layer: dot_f", header(2, -2, "F"))).unwrap()).unwrap();
    assert_eq!(d.warnings.len(), 1);
    assert!(d.map.is_zero_map().unwrap());
}

#[test]
fn element_parsing() {
    let p = FlagPath::natural(3, vec![1, 2, 1]).unwrap();
    assert_eq!(parse_element("1 | 1", &p).unwrap(), BimElement::basis_vector(p.clone(), vec![0, 0]).unwrap());
    let q = FlagPath::natural(1, vec![0, 1, 0]).unwrap();
    let e = parse_element("xi | 1", &q).unwrap();
    assert_eq!(e.coefficient(&[0, 0]), GrassContext::new(1, 0).unwrap().y(1));
    let id = FlagPath::identity(GrassContext::new(3, 2).unwrap());
    assert_eq!(parse_element("x[3]", &id).unwrap_err().kind, DslErrorKind::Generator);
    assert_eq!(parse_element("1 | 1 | 1", &p).unwrap_err().kind, DslErrorKind::FactorCount);
    assert_eq!(parse_element("1 | $", &p).unwrap_err().span, SourceSpan::new(1, 5, 5));
    let sample = parse_element("xi^2 | 1 + 2 * x[1] | xi", &p).unwrap();
    assert_eq!(parse_element(&sample.to_string(), &p).unwrap(), sample);
    let half = parse_element("1/2 * xi | 1 - (x[1] + y[1]@-1) | 1", &p).unwrap();
    assert_eq!(parse_element(&half.to_string(), &p).unwrap(), half);
    assert_eq!(half.scale(&rat(2)).coefficient(&[0, 1]), crate::exactpoly::Polynomial::one());
}
