use std::collections::BTreeSet;

use super::*;
use crate::bimodules::ShiftConvention;
use crate::diagramlang::{compile_diagram, parse_diagram};
use crate::twomorphisms::BimMap;

fn run(n: i64, suites: &[Suite]) -> VerifyReport {
    run_suite(n, suites, SuiteOptions::default()).unwrap()
}

fn map(text: &str) -> BimMap {
    compile_diagram(&parse_diagram(text).unwrap()).unwrap().map
}

#[test]
fn quantum_integers() {
    assert_eq!(quantum_integer(1).to_string(), "1");
    assert_eq!(quantum_integer(2).to_string(), "q + q^-1");
    assert_eq!(quantum_integer(-3).to_string(), "-q^2 - 1 - q^-2");
    assert!(quantum_integer(0).is_zero());
    for n in -6..=6 {
        assert_eq!(quantum_integer(-n), -&quantum_integer(n));
        assert_eq!(quantum_integer(n).at_one(), n);
    }
}

fn geometric(bound: i64) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for a in 0..=bound {
        out.add_term(2 * a, 1);
    }
    out
}

/// Ranks counted from the step bounds by hand: EF from k steps down (bound
/// N-k) then up (bound k-1); FE steps up (bound k) then down (bound N-k-1).
fn k0_oracle(n: i64, k: i64) -> LaurentPoly {
    let ef = if k >= 1 {
        &(&LaurentPoly::q_pow((1 - k) + (1 - n + (k - 1))) * &geometric(n - k)) * &geometric(k - 1)
    } else {
        LaurentPoly::zero()
    };
    let fe = if k < n {
        &(&LaurentPoly::q_pow((1 - n + k) + (1 - (k + 1))) * &geometric(k)) * &geometric(n - k - 1)
    } else {
        LaurentPoly::zero()
    };
    &ef - &fe
}

#[test]
fn k0_matches_enumeration_oracle() {
    for n in 1..=6u32 {
        for k in 0..=n as i64 {
            let d = checks::k0_difference(n, k, ShiftConvention::TheoremProof).unwrap();
            assert_eq!(d, k0_oracle(n as i64, k), "N={n} k={k}");
            assert_eq!(d, quantum_integer(2 * k - n as i64), "N={n} k={k}");
        }
    }
}

#[test]
fn table_convention_is_off_by_q() {
    for n in 1..=4u32 {
        for k in 0..=n as i64 {
            let d = checks::k0_difference(n, k, ShiftConvention::Table).unwrap();
            let expected = &LaurentPoly::q_pow(1) * &quantum_integer(2 * k - n as i64);
            assert_eq!(d, expected, "N={n} k={k}");
        }
    }
    let r = run(3, &[Suite::K0]);
    assert!(r.all_passed());
    assert!(r.results.iter().filter(|x| x.check == "k0.table").all(|x| x.reason.starts_with("flagged")));
}

#[test]
fn n_one_passes_with_braid_skipped() {
    let r = run(1, &Suite::ALL);
    assert!(r.all_passed(), "{}", r.to_table());
    let braids: Vec<_> = r.results.iter().filter(|x| x.check.starts_with("nilhecke.braid")).collect();
    assert!(!braids.is_empty());
    assert!(braids.iter().all(|x| x.status == Status::Skipped && x.reason == "requires N ≥ 3"));
}

#[test]
fn degree_zero_bubbles_are_one() {
    let r = run(2, &[Suite::Bubbles]);
    assert!(r.all_passed());
    for k in 0..=2 {
        for check in ["bubbles.clockwise", "bubbles.counterclockwise"] {
            let x = r.results.iter().find(|x| x.check == check && x.k == k).unwrap();
            assert!(x.reason.contains("degree-zero value 1"), "{}", x.reason);
        }
    }
}

#[test]
fn identity_decomposition_at_n_three() {
    let r = run(3, &[Suite::IdentityDecomposition]);
    assert!(r.all_passed(), "{}", r.to_table());
    // every weight has a nonvacuous instance
    let weights: BTreeSet<i64> = r
        .results
        .iter()
        .filter(|x| !x.reason.starts_with("vacuous"))
        .map(|x| 2 * x.k - 3)
        .collect();
    assert_eq!(weights, [-3, -1, 1, 3].into_iter().collect());
}

#[test]
fn rejects_out_of_range_n() {
    assert!(run_suite(0, &Suite::ALL, SuiteOptions::default()).is_err());
    assert!(run_suite(5, &Suite::ALL, SuiteOptions::default()).is_err());
    let wide = SuiteOptions { max_n: 5, ..SuiteOptions::default() };
    assert!(run_suite(5, &[Suite::K0], wide).is_ok());
}

#[test]
fn reports_are_deterministic() {
    let strip = |mut r: VerifyReport| {
        r.results.iter_mut().for_each(|x| x.millis = 0);
        r.to_json()
    };
    let a = strip(run(2, &Suite::ALL));
    let b = strip(run(2, &Suite::ALL));
    assert_eq!(a, b);
    let names: Vec<(String, i64)> = run(2, &Suite::ALL).results.into_iter().map(|x| (x.check, x.k)).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn coverage_lock() {
    let inv = inventory();
    let names: BTreeSet<&str> = inv.iter().map(|c| c.name).collect();
    assert_eq!(names.len(), inv.len(), "duplicate check names");
    let displays: BTreeSet<&str> = RELATION_MANIFEST.iter().map(|(d, _)| *d).collect();
    let targets: BTreeSet<&str> = RELATION_MANIFEST.iter().map(|(_, c)| *c).collect();
    assert_eq!(displays.len(), RELATION_MANIFEST.len());
    assert_eq!(targets.len(), RELATION_MANIFEST.len(), "a check covers two relations");
    for t in &targets {
        assert!(names.contains(t), "{t} missing from the inventory");
    }
    for s in Suite::ALL {
        assert!(inv.iter().any(|c| c.suite == s), "{s} has no checks");
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert_eq!(RELATION_MANIFEST.len(), 17);
    assert_eq!(inv.len(), 39);
}

#[test]
fn json_shape() {
    let r = run(1, &[Suite::NonNilpotency]);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let first = &v["results"][0];
    for key in ["check", "N", "k", "status", "reason", "millis"] {
        assert!(first.get(key).is_some(), "{key}");
    }
    assert_eq!(first["status"], "pass");
    assert!(first.get("counterexample").is_none());
}

// The relations are not satisfied by accident: the pieces they compare are nonzero
// and perturbed right-hand sides are rejected.

#[test]
fn curl_is_nonzero() {
    let curl = map("N = 2\nweight = 0\ndomain = E\nlayer: id_e cup_ef\nlayer: cross_ee id_f\nlayer: id_e cap_ef");
    assert!(!curl.is_zero_map().unwrap());
}

#[test]
fn crossing_square_alone_is_not_the_identity_decomposition() {
    let text = "N = 2\nweight = 0\ndomain = F E\n";
    let lhs = map(&format!("{text}layer: cap_fe\nlayer: cup_fe"));
    let square = map(&format!("{text}layer: id_f cup_fe id_e\nlayer: cross_ff cross_ee\nlayer: id_f cap_fe id_e"));
    let neg = square.scaled(crate::exactpoly::rat(-1));
    let mut rng: rand_chacha::ChaCha8Rng = rand::SeedableRng::seed_from_u64(1);
    assert!(!crate::twomorphisms::map_equals(&lhs, &neg, 0, &mut rng).unwrap().equal);
    assert!(!lhs.is_zero_map().unwrap());
}

#[test]
fn unrotated_dot_exchange_fails_on_f() {
    let text = "N = 2\nweight = 2\ndomain = F F\n";
    let a = map(&format!("{text}layer: dot_f id_f\nlayer: cross_ff"));
    let b = map(&format!("{text}layer: cross_ff\nlayer: id_f dot_f"));
    let diff = BimMap::difference(&a, &b).unwrap();
    let id = BimMap::identity(a.domain().clone());
    let mut rng: rand_chacha::ChaCha8Rng = rand::SeedableRng::seed_from_u64(2);
    assert!(!crate::twomorphisms::map_equals(&id, &diff, 0, &mut rng).unwrap().equal);
    let mut rng: rand_chacha::ChaCha8Rng = rand::SeedableRng::seed_from_u64(2);
    assert!(crate::twomorphisms::map_equals(&id, &diff.scaled(crate::exactpoly::rat(-1)), 0, &mut rng).unwrap().equal);
}
