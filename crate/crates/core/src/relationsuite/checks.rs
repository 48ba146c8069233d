use super::{CheckSpec, Context, Outcome, Suite};
use crate::bimodules::{graded_rank, normalize, BimElement, FlagPath, RawTensor, ShiftConvention};
use crate::diagramlang::{compile_diagram, parse_diagram};
use crate::exactpoly::{rat, sign, LaurentPoly, Polynomial, VarSymbol};
use crate::grassrings::{
    bubble_value, check_series_identity, special_class, Family, GrassContext, Orientation, SeriesIdentity,
};
use crate::twomorphisms::{
    check_bimodule_law, check_well_defined, compile_word, map_equals, BimMap, Generator, GeneratorKind,
    MeasuredDegree, SignedWord, Turn,
};

fn spec(name: &'static str, suite: Suite, statement: &'static str, run: fn(&Context) -> Outcome) -> CheckSpec {
    CheckSpec { name, suite, statement, run }
}

pub(super) fn all() -> Vec<CheckSpec> {
    use Suite::*;
    vec![
        spec("biadjointness.zigzag_e", Biadjointness, "(id_e cup_fe) then (cap_ef id_e) is the identity of E", zigzag_e),
        spec("biadjointness.zigzag_f", Biadjointness, "(id_f cup_ef) then (cap_fe id_f) is the identity of F", zigzag_f),
        spec("biadjointness.zigzag_e_mirror", Biadjointness, "(cup_ef id_e) then (id_e cap_fe) is the identity of E", zigzag_e_mirror),
        spec("biadjointness.zigzag_f_mirror", Biadjointness, "(cup_fe id_f) then (id_f cap_ef) is the identity of F", zigzag_f_mirror),
        spec("dot_cyclicity.right", DotCyclicity, "a dot on E rotated through cup_ef and cap_fe is the dot on F", dot_cyclicity_right),
        spec("dot_cyclicity.left", DotCyclicity, "a dot on E rotated through cup_fe and cap_ef is the dot on F", dot_cyclicity_left),
        spec("crossing_duality.right", CrossingDuality, "cross_ee rotated by nested cups on the right is cross_ff", crossing_duality_right),
        spec("crossing_duality.left", CrossingDuality, "cross_ee rotated by nested cups on the left is cross_ff", crossing_duality_left),
        spec("bubbles.clockwise", Bubbles, "clockwise bubbles match the closed formula, vanish below degree 0, equal 1 in degree 0", bubbles_cw),
        spec("bubbles.counterclockwise", Bubbles, "counterclockwise bubbles match the closed formula, vanish below degree 0, equal 1 in degree 0", bubbles_ccw),
        spec("nilhecke.crossing_squared_e", Nilhecke, "cross_ee composed with itself is zero", crossing_squared_e),
        spec("nilhecke.crossing_squared_f", Nilhecke, "cross_ff composed with itself is zero", crossing_squared_f),
        spec("nilhecke.dot_exchange_e", Nilhecke, "identity of EE is the difference of dotted crossings (both forms)", dot_exchange_e),
        spec("nilhecke.dot_exchange_f", Nilhecke, "identity of FF is the half-turn rotation of the E dot exchange (both forms)", dot_exchange_f),
        spec("nilhecke.braid_e", Nilhecke, "braid relation on EEE", braid_e),
        spec("nilhecke.braid_f", Nilhecke, "braid relation on FFF", braid_f),
        spec("reduction.first", Reduction, "right curl on E equals minus the clockwise bubble sum", reduction_first),
        spec("reduction.second", Reduction, "left curl on E equals the counterclockwise bubble sum", reduction_second),
        spec("identity_decomposition.fe", IdentityDecomposition, "cup_fe after cap_fe on FE: minus the crossing square plus the bubble sum", identity_decomposition_fe),
        spec("identity_decomposition.ef", IdentityDecomposition, "cup_ef after cap_ef on EF: minus the crossing square plus the bubble sum", identity_decomposition_ef),
        spec("propositions.x_slide", Propositions, "X_a,n = sum (-1)^l X_a-l,n+2 xi^l in H_k,k+1", x_slide),
        spec("propositions.y_slide", Propositions, "Y_a,n+2 = sum (-1)^l Y_a-l,n xi^l in H_k,k+1", y_slide),
        spec("propositions.xi_via_y", Propositions, "xi^a = (-1)^a sum x_a-j,n Y_j,n+2 in H_k,k+1", xi_via_y),
        spec("propositions.xi_via_x", Propositions, "xi^a = (-1)^a sum X_a-j,n y_j,n+2 in H_k,k+1", xi_via_x),
        spec("propositions.two_sided_x", Propositions, "sum (-1)^j x_j (x) xi^a-j is two-sided on (k,k+1,k)", two_sided_x),
        spec("propositions.two_sided_y", Propositions, "sum (-1)^j y_j (x) xi^a-j is two-sided on (k,k-1,k)", two_sided_y),
        spec("propositions.dot_slide_x", Propositions, "xi moves across the cup_fe element", dot_slide_x),
        spec("propositions.dot_slide_y", Propositions, "xi moves across the cup_ef element", dot_slide_y),
        spec("propositions.series_x_y", Propositions, "sum x_j Y_b-j = delta_b,0 up to degree 2N", series_x_y),
        spec("propositions.series_y_x", Propositions, "sum y_j X_a-j = delta_a,0 up to degree 2N", series_y_x),
        spec("propositions.bubble_series", Propositions, "clockwise and counterclockwise bubble series multiply to 1 up to degree 2N", bubble_series),
        spec("degree_audit.generators", DegreeAudit, "every generator has its table degree", degree_generators),
        spec("degree_audit.diagrams", DegreeAudit, "every suite diagram has the sum of its generator degrees", degree_diagrams),
        spec("well_definedness.bimodule_law", WellDefinedness, "every generator commutes with both ring actions", bimodule_law),
        spec("well_definedness.normal_form", WellDefinedness, "generator formulas agree on unreduced and reduced inputs", normal_form),
        spec("non_nilpotency.dot_e", NonNilpotency, "dot_e^M is nonzero on 1 for M <= 4N", non_nilpotency_e),
        spec("non_nilpotency.dot_f", NonNilpotency, "dot_f^M is nonzero on 1 for M <= 4N", non_nilpotency_f),
        spec("k0.theorem_proof", K0, "rank EF - rank FE = [n], shifts as in the 2-functor proof", k0_theorem_proof),
        spec("k0.table", K0, "rank EF - rank FE under the shift table of the 1-morphism assignment", k0_table),
    ]
}

type Built = Result<BimMap, String>;

fn header(n_total: u32, k: i64, domain: &str) -> String {
    format!("N = {n_total}\nweight = {}\ndomain = {domain}\n", 2 * k - n_total as i64)
}

fn diagram_text(n_total: u32, k: i64, domain: &str, layers: &[String]) -> String {
    let mut text = header(n_total, k, domain);
    for l in layers {
        text.push_str(&format!("layer: {l}\n"));
    }
    text
}

fn diagram(ctx: &Context, domain: &str, layers: &[&str]) -> Built {
    let layers: Vec<String> = layers.iter().map(|s| s.to_string()).collect();
    diagram_at(ctx.n_total, ctx.k, domain, &layers)
}

fn diagram_at(n_total: u32, k: i64, domain: &str, layers: &[String]) -> Built {
    let text = diagram_text(n_total, k, domain, layers);
    let ast = parse_diagram(&text).map_err(|e| format!("{e}"))?;
    compile_diagram(&ast).map(|c| c.map).map_err(|e| format!("{e}"))
}

fn repeat(layer: &str, times: i64) -> Vec<String> {
    (0..times.max(0)).map(|_| layer.to_string()).collect()
}

fn compare(ctx: &Context, lhs: Built, rhs: Built) -> Outcome {
    let (lhs, rhs) = match (lhs, rhs) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) | (_, Err(e)) => return Outcome::fail(format!("could not build: {e}")),
    };
    if lhs.domain().is_zero() {
        return Outcome::Pass(Some(format!("vacuous: {} is the zero bimodule", lhs.domain())));
    }
    let mut rng = ctx.rng();
    match map_equals(&lhs, &rhs, ctx.options.extra_samples, &mut rng) {
        Ok(r) if r.equal => Outcome::Pass(Some(format!(
            "{} basis vectors, {} decorated samples",
            r.checked_basis, r.checked_samples
        ))),
        Ok(r) => Outcome::Fail { reason: "maps differ".into(), counterexample: r.counterexample },
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn identity_of(built: &Built) -> Built {
    built.as_ref().map(|f| BimMap::identity(f.domain().clone())).map_err(|e| e.clone())
}

fn zigzag_e(ctx: &Context) -> Outcome {
    let lhs = diagram(ctx, "E", &["id_e cup_fe", "cap_ef id_e"]);
    let rhs = identity_of(&lhs);
    compare(ctx, lhs, rhs)
}

fn zigzag_f(ctx: &Context) -> Outcome {
    let lhs = diagram(ctx, "F", &["id_f cup_ef", "cap_fe id_f"]);
    let rhs = identity_of(&lhs);
    compare(ctx, lhs, rhs)
}

fn zigzag_e_mirror(ctx: &Context) -> Outcome {
    let lhs = diagram(ctx, "E", &["cup_ef id_e", "id_e cap_fe"]);
    let rhs = identity_of(&lhs);
    compare(ctx, lhs, rhs)
}

fn zigzag_f_mirror(ctx: &Context) -> Outcome {
    let lhs = diagram(ctx, "F", &["cup_fe id_f", "id_f cap_ef"]);
    let rhs = identity_of(&lhs);
    compare(ctx, lhs, rhs)
}

fn dot_cyclicity_right(ctx: &Context) -> Outcome {
    let lhs = diagram(ctx, "F", &["id_f cup_ef", "id_f dot_e id_f", "cap_fe id_f"]);
    compare(ctx, lhs, diagram(ctx, "F", &["dot_f"]))
}

fn dot_cyclicity_left(ctx: &Context) -> Outcome {
    let lhs = diagram(ctx, "F", &["cup_fe id_f", "id_f dot_e id_f", "id_f cap_ef"]);
    compare(ctx, lhs, diagram(ctx, "F", &["dot_f"]))
}

fn crossing_duality_right(ctx: &Context) -> Outcome {
    let lhs = diagram(
        ctx,
        "F F",
        &[
            "id_f id_f cup_ef",
            "id_f id_f id_e cup_ef id_f",
            "id_f id_f cross_ee id_f id_f",
            "id_f cap_fe id_e id_f id_f",
            "cap_fe id_f id_f",
        ],
    );
    compare(ctx, lhs, diagram(ctx, "F F", &["cross_ff"]))
}

fn crossing_duality_left(ctx: &Context) -> Outcome {
    let lhs = diagram(
        ctx,
        "F F",
        &[
            "cup_fe id_f id_f",
            "id_f cup_fe id_e id_f id_f",
            "id_f id_f cross_ee id_f id_f",
            "id_f id_f id_e cap_ef id_f",
            "id_f id_f cap_ef",
        ],
    );
    compare(ctx, lhs, diagram(ctx, "F F", &["cross_ff"]))
}

/// Layers of a bubble with `dots` dots; `alpha` is its degree parameter.
fn bubble_layers(orientation: Orientation, dots: i64) -> Vec<String> {
    let (cup, dot, cap) = match orientation {
        Orientation::Counterclockwise => ("cup_fe", "id_f dot_e", "cap_fe"),
        Orientation::Clockwise => ("cup_ef", "id_e dot_f", "cap_ef"),
    };
    let mut layers = vec![cup.to_string()];
    layers.extend(repeat(dot, dots));
    layers.push(cap.to_string());
    layers
}

fn bubble_alpha(orientation: Orientation, dots: i64, weight: i64) -> i64 {
    match orientation {
        Orientation::Counterclockwise => dots + weight + 1,
        Orientation::Clockwise => dots - weight + 1,
    }
}

fn bubbles(ctx: &Context, orientation: Orientation) -> Outcome {
    let ring = GrassContext::new(ctx.n_total as i64, ctx.k).expect("k in range");
    let n = ctx.weight();
    let mut unit_note = None;
    let mut vanishing = 0;
    for dots in 0..=(2 * ctx.n_total as i64 + 2) {
        let alpha = bubble_alpha(orientation, dots, n);
        let map = match diagram_at(ctx.n_total, ctx.k, "1", &bubble_layers(orientation, dots)) {
            Ok(m) => m,
            Err(e) => return Outcome::fail(format!("could not build: {e}")),
        };
        let value = match map.on_basis(&[]) {
            Ok(v) => v.coefficient(&[]),
            Err(e) => return Outcome::fail(e.to_string()),
        };
        let expected = bubble_value(ring, orientation, alpha);
        if value != expected {
            return Outcome::Fail {
                reason: format!("bubble with {dots} dots (degree parameter {alpha})"),
                counterexample: Some(format!("{value} vs closed formula {expected}")),
            };
        }
        if alpha < 0 {
            vanishing += 1;
        }
        if alpha == 0 {
            if !value.is_one() {
                return Outcome::fail(format!("degree-zero bubble with {dots} dots is {value}"));
            }
            unit_note = Some(format!("degree-zero value 1 with {dots} dots"));
        }
    }
    let unit_note = match unit_note {
        Some(s) => s,
        None => {
            let fake = bubble_value(ring, orientation, 0);
            if !fake.is_one() {
                return Outcome::fail(format!("degree-zero fake bubble is {fake}"));
            }
            "degree-zero value 1 as a fake bubble".to_string()
        }
    };
    Outcome::Pass(Some(format!("{unit_note}; {vanishing} negative-degree bubbles vanish")))
}

fn bubbles_cw(ctx: &Context) -> Outcome {
    bubbles(ctx, Orientation::Clockwise)
}

fn bubbles_ccw(ctx: &Context) -> Outcome {
    bubbles(ctx, Orientation::Counterclockwise)
}

fn zero_like(built: &Built) -> Built {
    built
        .as_ref()
        .map(|f| BimMap::zero(f.domain().clone(), f.codomain().clone(), f.declared_degree()))
        .map_err(|e| e.clone())
}

fn crossing_squared_e(ctx: &Context) -> Outcome {
    let lhs = diagram(ctx, "E E", &["cross_ee", "cross_ee"]);
    let rhs = zero_like(&lhs);
    compare(ctx, lhs, rhs)
}

fn crossing_squared_f(ctx: &Context) -> Outcome {
    let lhs = diagram(ctx, "F F", &["cross_ff", "cross_ff"]);
    let rhs = zero_like(&lhs);
    compare(ctx, lhs, rhs)
}

fn difference(a: Built, b: Built) -> Built {
    BimMap::difference(&a?, &b?).map_err(|e| e.to_string())
}

fn dot_exchange(ctx: &Context, s: char) -> Outcome {
    let (dom, cross, dot_left, dot_right) = if s == 'e' {
        ("E E", "cross_ee", "dot_e id_e", "id_e dot_e")
    } else {
        ("F F", "cross_ff", "dot_f id_f", "id_f dot_f")
    };
    let id = diagram(ctx, dom, &[]);
    let mut first = (diagram(ctx, dom, &[dot_left, cross]), diagram(ctx, dom, &[cross, dot_right]));
    let mut second = (diagram(ctx, dom, &[cross, dot_left]), diagram(ctx, dom, &[dot_right, cross]));
    // rotating the picture by a half turn exchanges the two dotted terms
    if s == 'f' {
        first = (first.1, first.0);
        second = (second.1, second.0);
    }
    let first = difference(first.0, first.1);
    let second = difference(second.0, second.1);
    match compare(ctx, id.clone(), first) {
        Outcome::Pass(_) => compare(ctx, id, second),
        other => other,
    }
}

fn dot_exchange_e(ctx: &Context) -> Outcome {
    dot_exchange(ctx, 'e')
}

fn dot_exchange_f(ctx: &Context) -> Outcome {
    dot_exchange(ctx, 'f')
}

fn braid(ctx: &Context, s: char) -> Outcome {
    if ctx.n_total < 3 {
        return Outcome::Skipped("requires N ≥ 3".into());
    }
    let (dom, a, b) = if s == 'e' {
        ("E E E", "cross_ee id_e", "id_e cross_ee")
    } else {
        ("F F F", "cross_ff id_f", "id_f cross_ff")
    };
    compare(ctx, diagram(ctx, dom, &[a, b, a]), diagram(ctx, dom, &[b, a, b]))
}

fn braid_e(ctx: &Context) -> Outcome {
    braid(ctx, 'e')
}

fn braid_f(ctx: &Context) -> Outcome {
    braid(ctx, 'f')
}

/// `sum_i c_i . (dot diagram_i) . (junction multiplication by p_i)`.
fn decorated_sum(lhs: &BimMap, terms: Vec<(i64, Built, usize, crate::exactpoly::Polynomial, i64)>) -> Built {
    let mut maps = Vec::new();
    for (c, dots, junction, poly, degree) in terms {
        if poly.is_zero() {
            continue;
        }
        let dots = dots?;
        let mul = BimMap::junction_mul(lhs.domain().clone(), junction, poly, degree).map_err(|e| e.to_string())?;
        maps.push((rat(c), dots.compose(&mul).map_err(|e| e.to_string())?));
    }
    if maps.is_empty() {
        return Ok(BimMap::zero(lhs.domain().clone(), lhs.codomain().clone(), lhs.declared_degree()));
    }
    BimMap::linear_combination(maps).map_err(|e| e.to_string())
}

fn ring_at(ctx: &Context, k: i64) -> Option<GrassContext> {
    GrassContext::new(ctx.n_total as i64, k).ok()
}

fn reduction_first(ctx: &Context) -> Outcome {
    let lhs = match diagram(ctx, "E", &["id_e cup_ef", "cross_ee id_f", "id_e cap_ef"]) {
        Ok(m) => m,
        Err(e) => return Outcome::fail(e),
    };
    if lhs.domain().is_zero() {
        return compare(ctx, Ok(lhs.clone()), Ok(lhs));
    }
    let n = ctx.weight();
    let ring = ring_at(ctx, ctx.k).expect("k in range");
    let terms = (0..=-n)
        .map(|l| {
            let dots = diagram_at(ctx.n_total, ctx.k, "E", &repeat("dot_e", -n - l));
            (-1, dots, 0, bubble_value(ring, Orientation::Clockwise, l), 2 * l)
        })
        .collect();
    let rhs = decorated_sum(&lhs, terms);
    compare(ctx, Ok(lhs), rhs)
}

fn reduction_second(ctx: &Context) -> Outcome {
    let lhs = match diagram(ctx, "E", &["cup_fe id_e", "id_f cross_ee", "cap_fe id_e"]) {
        Ok(m) => m,
        Err(e) => return Outcome::fail(e),
    };
    if lhs.domain().is_zero() {
        return compare(ctx, Ok(lhs.clone()), Ok(lhs));
    }
    // the bubble sits in the left region, of weight n
    let n = ctx.weight() + 2;
    let ring = ring_at(ctx, ctx.k + 1).expect("domain is nonzero");
    let terms = (0..=n)
        .map(|j| {
            let dots = diagram_at(ctx.n_total, ctx.k, "E", &repeat("dot_e", n - j));
            (1, dots, 1, bubble_value(ring, Orientation::Counterclockwise, j), 2 * j)
        })
        .collect();
    let rhs = decorated_sum(&lhs, terms);
    compare(ctx, Ok(lhs), rhs)
}

fn dotted_pair(n_total: u32, k: i64, domain: &str, left: (&str, i64), right: (&str, i64)) -> Built {
    let mut layers = repeat(left.0, left.1);
    layers.extend(repeat(right.0, right.1));
    diagram_at(n_total, k, domain, &layers)
}

fn identity_decomposition(ctx: &Context, fe: bool) -> Outcome {
    let (dom, cap_cup, square) = if fe {
        ("F E", ["cap_fe", "cup_fe"], ["id_f cup_fe id_e", "cross_ff cross_ee", "id_f cap_fe id_e"])
    } else {
        ("E F", ["cap_ef", "cup_ef"], ["id_e cup_ef id_f", "cross_ee cross_ff", "id_e cap_ef id_f"])
    };
    let lhs = match diagram(ctx, dom, &cap_cup) {
        Ok(m) => m,
        Err(e) => return Outcome::fail(e),
    };
    if lhs.domain().is_zero() {
        return compare(ctx, Ok(lhs.clone()), Ok(lhs));
    }
    let square = match diagram(ctx, dom, &square) {
        Ok(m) => m,
        Err(e) => return Outcome::fail(e),
    };
    // middle region
    let mid_k = if fe { ctx.k + 1 } else { ctx.k - 1 };
    let n = 2 * mid_k - ctx.n_total as i64;
    let ring = ring_at(ctx, mid_k).expect("domain is nonzero");
    let (top, orientation, left_dot, right_dot) = if fe {
        (n - 1, Orientation::Counterclockwise, "dot_f id_e", "id_f dot_e")
    } else {
        (-n - 1, Orientation::Clockwise, "dot_e id_f", "id_e dot_f")
    };
    let mut terms = Vec::new();
    for l in 0..=top {
        for j in 0..=l {
            let dots = dotted_pair(ctx.n_total, ctx.k, dom, (left_dot, top - l), (right_dot, l - j));
            terms.push((1, dots, 1, bubble_value(ring, orientation, j), 2 * j));
        }
    }
    let bubbles = match decorated_sum(&lhs, terms) {
        Ok(m) => m,
        Err(e) => return Outcome::fail(e),
    };
    let rhs = BimMap::linear_combination(vec![(rat(-1), square), (rat(1), bubbles)]).map_err(|e| e.to_string());
    compare(ctx, Ok(lhs), rhs)
}

fn identity_decomposition_fe(ctx: &Context) -> Outcome {
    identity_decomposition(ctx, true)
}

fn identity_decomposition_ef(ctx: &Context) -> Outcome {
    identity_decomposition(ctx, false)
}

fn xi(a: i64) -> Polynomial {
    Polynomial::var(VarSymbol::xi(1)).pow(a as u32)
}

/// Sum of raw tensors (each a list of factors) in normal form.
fn element(path: &FlagPath, tensors: Vec<Vec<Polynomial>>) -> Result<BimElement, String> {
    let mut out = BimElement::zero(path.clone());
    for factors in tensors {
        let raw = RawTensor::new(path.clone(), factors).map_err(|e| e.to_string())?;
        out = out.add(&normalize(&raw).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    }
    Ok(out)
}

/// Runs `identity(alpha)` for `alpha` in `0..=max` on `path`, returning the first disagreement.
fn battery(
    path: Result<FlagPath, String>,
    max: i64,
    identity: impl Fn(i64) -> (Vec<Vec<Polynomial>>, Vec<Vec<Polynomial>>),
) -> Outcome {
    let path = match path {
        Ok(p) if !p.is_zero() => p,
        Ok(p) => return Outcome::Pass(Some(format!("vacuous: {p} is the zero bimodule"))),
        Err(e) => return Outcome::fail(e),
    };
    for alpha in 0..=max {
        let (l, r) = identity(alpha);
        match (element(&path, l), element(&path, r)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => {
                return Outcome::Fail { reason: format!("alpha = {alpha}"), counterexample: Some(format!("{a} vs {b}")) }
            }
            (Err(e), _) | (_, Err(e)) => return Outcome::fail(e),
        }
    }
    Outcome::Pass(Some(format!("alpha = 0..={max} on {path}")))
}

fn path(ctx: &Context, rings: Vec<i64>) -> Result<FlagPath, String> {
    FlagPath::natural(ctx.n_total, rings).map_err(|e| e.to_string())
}

fn up_rings(ctx: &Context) -> Option<(GrassContext, GrassContext)> {
    Some((ring_at(ctx, ctx.k)?, ring_at(ctx, ctx.k + 1)?))
}

fn slide_max(ctx: &Context) -> i64 {
    2 * ctx.n_total as i64 + 2
}

fn x_slide(ctx: &Context) -> Outcome {
    let Some((lo, hi)) = up_rings(ctx) else {
        return Outcome::Pass(Some("vacuous: no step above k".into()));
    };
    battery(path(ctx, vec![ctx.k, ctx.k + 1]), slide_max(ctx), |a| {
        let lhs = vec![vec![special_class(lo, Family::X, a)]];
        let rhs = (0..=a).map(|l| vec![special_class(hi, Family::X, a - l).scale_int(sign(l)) * xi(l)]).collect();
        (lhs, rhs)
    })
}

fn y_slide(ctx: &Context) -> Outcome {
    let Some((lo, hi)) = up_rings(ctx) else {
        return Outcome::Pass(Some("vacuous: no step above k".into()));
    };
    battery(path(ctx, vec![ctx.k, ctx.k + 1]), slide_max(ctx), |a| {
        let lhs = vec![vec![special_class(hi, Family::Y, a)]];
        let rhs = (0..=a).map(|l| vec![special_class(lo, Family::Y, a - l).scale_int(sign(l)) * xi(l)]).collect();
        (lhs, rhs)
    })
}

fn xi_via_y(ctx: &Context) -> Outcome {
    let Some((lo, hi)) = up_rings(ctx) else {
        return Outcome::Pass(Some("vacuous: no step above k".into()));
    };
    battery(path(ctx, vec![ctx.k, ctx.k + 1]), slide_max(ctx), |a| {
        let rhs = (0..=a).map(|j| vec![(lo.x(a - j) * special_class(hi, Family::Y, j)).scale_int(sign(a))]).collect();
        (vec![vec![xi(a)]], rhs)
    })
}

fn xi_via_x(ctx: &Context) -> Outcome {
    let Some((lo, hi)) = up_rings(ctx) else {
        return Outcome::Pass(Some("vacuous: no step above k".into()));
    };
    battery(path(ctx, vec![ctx.k, ctx.k + 1]), slide_max(ctx), |a| {
        let rhs = (0..=a).map(|j| vec![(special_class(lo, Family::X, a - j) * hi.y(j)).scale_int(sign(a))]).collect();
        (vec![vec![xi(a)]], rhs)
    })
}

fn two_sided(ctx: &Context, up: bool) -> Outcome {
    let ring = ring_at(ctx, ctx.k).expect("k in range");
    let gen = move |j: i64| if up { ring.x(j) } else { ring.y(j) };
    let d = if up { 1 } else { -1 };
    battery(path(ctx, vec![ctx.k, ctx.k + d, ctx.k]), 2 * ctx.n_total as i64, |a| {
        let lhs = (0..=a).map(|j| vec![gen(j).scale_int(sign(j)), xi(a - j)]).collect();
        let rhs = (0..=a).map(|l| vec![xi(a - l).scale_int(sign(l)), gen(l)]).collect();
        (lhs, rhs)
    })
}

fn two_sided_x(ctx: &Context) -> Outcome {
    two_sided(ctx, true)
}

fn two_sided_y(ctx: &Context) -> Outcome {
    two_sided(ctx, false)
}

fn dot_slide_x(ctx: &Context) -> Outcome {
    let ring = ring_at(ctx, ctx.k).expect("k in range");
    let k = ctx.k;
    battery(path(ctx, vec![k, k + 1, k]), 0, |_| {
        let lhs = (0..=k).map(|l| vec![xi(k - l + 1).scale_int(sign(l)), ring.x(l)]).collect();
        let rhs = (0..=k).map(|l| vec![xi(k - l).scale_int(sign(l)), ring.x(l) * xi(1)]).collect();
        (lhs, rhs)
    })
}

fn dot_slide_y(ctx: &Context) -> Outcome {
    let ring = ring_at(ctx, ctx.k).expect("k in range");
    let (k, top) = (ctx.k, ctx.n_total as i64 - ctx.k);
    battery(path(ctx, vec![k, k - 1, k]), 0, |_| {
        let lhs = (0..=top).map(|j| vec![ring.y(j).scale_int(sign(j)) * xi(1), xi(top - j)]).collect();
        let rhs = (0..=top).map(|j| vec![ring.y(j).scale_int(sign(j)), xi(top - j + 1)]).collect();
        (lhs, rhs)
    })
}

fn series(ctx: &Context, which: SeriesIdentity) -> Outcome {
    let ring = ring_at(ctx, ctx.k).expect("k in range");
    let max = 2 * ctx.n_total as i64;
    let check = check_series_identity(ring, which, max);
    match check.counterexample {
        None if check.holds => Outcome::Pass(Some(format!("indices 0..={max}"))),
        Some((i, p)) => Outcome::Fail { reason: format!("index {i}"), counterexample: Some(p.to_string()) },
        None => Outcome::fail("identity does not hold"),
    }
}

fn series_x_y(ctx: &Context) -> Outcome {
    series(ctx, SeriesIdentity::XY)
}

fn series_y_x(ctx: &Context) -> Outcome {
    series(ctx, SeriesIdentity::YX)
}

fn bubble_series(ctx: &Context) -> Outcome {
    series(ctx, SeriesIdentity::BubbleProduct)
}

const KINDS: [GeneratorKind; 8] = [
    GeneratorKind::Dot { up: true },
    GeneratorKind::Dot { up: false },
    GeneratorKind::Crossing { up: true },
    GeneratorKind::Crossing { up: false },
    GeneratorKind::Cup(Turn::FE),
    GeneratorKind::Cup(Turn::EF),
    GeneratorKind::Cap(Turn::FE),
    GeneratorKind::Cap(Turn::EF),
];

fn generators(ctx: &Context) -> Vec<Generator> {
    KINDS
        .iter()
        .map(|&kind| Generator::new(kind, ctx.n_total, ctx.k))
        .filter(|g| !g.is_zero())
        .collect()
}

fn degree_matches(map: &BimMap, expected: i64) -> Result<bool, String> {
    match map.measured_degree().map_err(|e| e.to_string())? {
        MeasuredDegree::Degree(d) => Ok(d == expected),
        MeasuredDegree::ZeroMap => Ok(true),
        MeasuredDegree::Inhomogeneous(s) => Err(format!("inhomogeneous: {s}")),
    }
}

fn degree_generators(ctx: &Context) -> Outcome {
    let gens = generators(ctx);
    for g in &gens {
        let map = BimMap::generator(*g);
        match degree_matches(&map, g.declared_degree()) {
            Ok(true) => {}
            Ok(false) => {
                return Outcome::Fail {
                    reason: format!("{g} does not have degree {}", g.declared_degree()),
                    counterexample: Some(format!("{:?}", map.measured_degree())),
                }
            }
            Err(e) => return Outcome::fail(format!("{g}: {e}")),
        }
    }
    Outcome::Pass(Some(format!("{} generators", gens.len())))
}

/// The diagrams used by the relation checks at rightmost region `k`, as
/// `(name, source text)`.
pub fn suite_diagrams(n_total: u32, k: i64) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    let mut add = |name: &str, domain: &str, layers: &[&str]| {
        let layers: Vec<String> = layers.iter().map(|s| s.to_string()).collect();
        out.push((name.to_string(), diagram_text(n_total, k, domain, &layers)));
    };
    add("zigzag_e", "E", &["id_e cup_fe", "cap_ef id_e"]);
    add("zigzag_f", "F", &["id_f cup_ef", "cap_fe id_f"]);
    add("zigzag_e_mirror", "E", &["cup_ef id_e", "id_e cap_fe"]);
    add("zigzag_f_mirror", "F", &["cup_fe id_f", "id_f cap_ef"]);
    add("dot_cyclicity_right", "F", &["id_f cup_ef", "id_f dot_e id_f", "cap_fe id_f"]);
    add("dot_cyclicity_left", "F", &["cup_fe id_f", "id_f dot_e id_f", "id_f cap_ef"]);
    add(
        "crossing_duality_right",
        "F F",
        &["id_f id_f cup_ef", "id_f id_f id_e cup_ef id_f", "id_f id_f cross_ee id_f id_f", "id_f cap_fe id_e id_f id_f", "cap_fe id_f id_f"],
    );
    add(
        "crossing_duality_left",
        "F F",
        &["cup_fe id_f id_f", "id_f cup_fe id_e id_f id_f", "id_f id_f cross_ee id_f id_f", "id_f id_f id_e cap_ef id_f", "id_f id_f cap_ef"],
    );
    add("crossing_squared_e", "E E", &["cross_ee", "cross_ee"]);
    add("crossing_squared_f", "F F", &["cross_ff", "cross_ff"]);
    add("dotted_crossing_e", "E E", &["dot_e id_e", "cross_ee"]);
    add("dotted_crossing_f", "F F", &["cross_ff", "id_f dot_f"]);
    add("braid_e", "E E E", &["cross_ee id_e", "id_e cross_ee", "cross_ee id_e"]);
    add("braid_f", "F F F", &["id_f cross_ff", "cross_ff id_f", "id_f cross_ff"]);
    add("curl_right", "E", &["id_e cup_ef", "cross_ee id_f", "id_e cap_ef"]);
    add("curl_left", "E", &["cup_fe id_e", "id_f cross_ee", "cap_fe id_e"]);
    add("cap_cup_fe", "F E", &["cap_fe", "cup_fe"]);
    add("cap_cup_ef", "E F", &["cap_ef", "cup_ef"]);
    add("square_fe", "F E", &["id_f cup_fe id_e", "cross_ff cross_ee", "id_f cap_fe id_e"]);
    add("square_ef", "E F", &["id_e cup_ef id_f", "cross_ee cross_ff", "id_e cap_ef id_f"]);
    for dots in 0..3 {
        for o in [Orientation::Clockwise, Orientation::Counterclockwise] {
            let layers = bubble_layers(o, dots);
            let name = format!("bubble_{}_{dots}", if o == Orientation::Clockwise { "cw" } else { "ccw" });
            out.push((name, diagram_text(n_total, k, "1", &layers)));
        }
    }
    out
}

fn degree_diagrams(ctx: &Context) -> Outcome {
    let diagrams = suite_diagrams(ctx.n_total, ctx.k);
    let mut audited = 0;
    for (name, text) in &diagrams {
        let compiled = match parse_diagram(text).map(|a| compile_diagram(&a)) {
            Ok(Ok(c)) => c,
            Ok(Err(e)) | Err(e) => return Outcome::fail(format!("{name}: {e}")),
        };
        if compiled.map.domain().is_zero() {
            continue;
        }
        audited += 1;
        match degree_matches(&compiled.map, compiled.table_degree) {
            Ok(true) => {}
            Ok(false) => {
                return Outcome::Fail {
                    reason: format!("{name} does not have degree {}", compiled.table_degree),
                    counterexample: Some(format!("{:?}", compiled.map.measured_degree())),
                }
            }
            Err(e) => return Outcome::fail(format!("{name}: {e}")),
        }
    }
    Outcome::Pass(Some(format!("{audited} nonzero diagrams of {}", diagrams.len())))
}

fn bimodule_law(ctx: &Context) -> Outcome {
    let mut rng = ctx.rng();
    let gens = generators(ctx);
    for g in &gens {
        match check_bimodule_law(&BimMap::generator(*g), ctx.options.law_samples, &mut rng) {
            Ok(None) => {}
            Ok(Some(c)) => return Outcome::Fail { reason: format!("{g}"), counterexample: Some(c) },
            Err(e) => return Outcome::fail(format!("{g}: {e}")),
        }
    }
    Outcome::Pass(Some(format!("{} generators, {} samples each", gens.len(), ctx.options.law_samples)))
}

fn normal_form(ctx: &Context) -> Outcome {
    let gens = generators(ctx);
    for g in &gens {
        match check_well_defined(*g, 2) {
            Ok(None) => {}
            Ok(Some(c)) => return Outcome::Fail { reason: format!("{g}"), counterexample: Some(c) },
            Err(e) => return Outcome::fail(format!("{g}: {e}")),
        }
    }
    Outcome::Pass(Some(format!("{} generators, exponent excess 2", gens.len())))
}

fn non_nilpotency(ctx: &Context, up: bool) -> Outcome {
    let g = Generator::new(GeneratorKind::Dot { up }, ctx.n_total, ctx.k);
    if g.is_zero() {
        return Outcome::Pass(Some(format!("vacuous: {} is the zero bimodule", g.domain())));
    }
    let dot = BimMap::generator(g);
    let max = 4 * ctx.n_total as i64;
    let mut e = match BimElement::basis_vector(g.domain(), vec![0]) {
        Ok(e) => e,
        Err(err) => return Outcome::fail(err.to_string()),
    };
    for m in 1..=max {
        e = match dot.apply(&e) {
            Ok(v) => v,
            Err(err) => return Outcome::fail(err.to_string()),
        };
        if e.is_zero() {
            return Outcome::fail(format!("dot^{m} kills 1"));
        }
    }
    Outcome::Pass(Some(format!("dot^{max} on 1 is {e}")))
}

fn non_nilpotency_e(ctx: &Context) -> Outcome {
    non_nilpotency(ctx, true)
}

fn non_nilpotency_f(ctx: &Context) -> Outcome {
    non_nilpotency(ctx, false)
}

/// `rank(EF 1_n) - rank(FE 1_n)` under `convention`.
pub(crate) fn k0_difference(n_total: u32, k: i64, convention: ShiftConvention) -> Result<LaurentPoly, String> {
    let rank = |word: &str| -> Result<LaurentPoly, String> {
        let p = compile_word(&SignedWord::new(word, 2 * k - n_total as i64), n_total, convention)
            .map_err(|e| e.to_string())?;
        Ok(if p.is_zero() { LaurentPoly::zero() } else { graded_rank(&p) })
    };
    Ok(&rank("EF")? - &rank("FE")?)
}

fn k0(ctx: &Context, convention: ShiftConvention) -> Result<(LaurentPoly, LaurentPoly), String> {
    Ok((k0_difference(ctx.n_total, ctx.k, convention)?, super::quantum_integer(ctx.weight())))
}

fn k0_theorem_proof(ctx: &Context) -> Outcome {
    match k0(ctx, ShiftConvention::TheoremProof) {
        Ok((d, q)) if d == q => Outcome::Pass(Some(format!("EF - FE = {d} = [{}]", ctx.weight()))),
        Ok((d, q)) => Outcome::Fail {
            reason: format!("EF - FE differs from [{}]", ctx.weight()),
            counterexample: Some(format!("{d} vs {q}")),
        },
        Err(e) => Outcome::fail(e),
    }
}

/// Reports how the shift table fares; a disagreement is flagged in the
/// reason rather than failing the run, since the theorem-proof convention is
/// the one the engine adopts.
fn k0_table(ctx: &Context) -> Outcome {
    match k0(ctx, ShiftConvention::Table) {
        Ok((d, q)) if d == q => Outcome::Pass(Some(format!("agrees: EF - FE = {d}"))),
        Ok((d, q)) => Outcome::Pass(Some(format!(
            "flagged: shift table gives EF - FE = {d}, not [{}] = {q}",
            ctx.weight()
        ))),
        Err(e) => Outcome::fail(e),
    }
}
