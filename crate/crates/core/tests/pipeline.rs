use std::collections::BTreeMap;

use dualcover::braidmono::{hurwitz_move, hurwitz_move_inverse, LocalKind};
use dualcover::curvegeom::Tolerances;
use dualcover::monorep::{check_extension, classify_branch_point, rep_search, MonodromyRep, Outcome, Perm, PointClass};
use dualcover::pipeline::{Analysis, PipelineError};

mod common;

use common::{check_loops, check_simple_ramification, corpus, rep_path, CORPUS};

#[test]
fn reverse_and_composite_loops_on_corpus() {
    for name in CORPUS {
        check_loops(&corpus(name), 1).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn simple_ramification_in_two_frames() {
    for name in CORPUS {
        for seed in [1, 2] {
            check_simple_ramification(&corpus(name), seed).unwrap_or_else(|e| panic!("{name}, seed {seed}: {e}"));
        }
    }
}

fn cubic(seed: u64) -> Analysis {
    Analysis::run(&corpus("fermat-cubic"), &Tolerances::default(), seed).unwrap()
}

/// Outcome counts of every class found by the search.
fn census(a: &Analysis, k: usize) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for r in rep_search(&a.factorization, k).unwrap() {
        *out.entry(format!("{:?}", a.verdict(&r).unwrap().outcome)).or_insert(0) += 1;
    }
    out
}

#[test]
fn cubic_dual_factorization_is_stable_across_seeds() {
    let (a, b) = (cubic(1), cubic(2));
    for f in [&a.factorization, &b.factorization] {
        assert_eq!(f.strands, 6);
        assert_eq!(f.factors.len(), 12);
        assert_eq!(f.count(LocalKind::Tangency), 3);
        assert_eq!(f.count(LocalKind::CuspLine), 9);
        assert_eq!(f.count(LocalKind::NodeLine), 0);
        f.check_full_twist().unwrap();
    }
    // representation counts are invariants of the complement
    assert_eq!(census(&a, 3), census(&b, 3));
    assert_eq!(census(&a, 4), census(&b, 4));
}

#[test]
fn hurwitz_moves_preserve_extension() {
    let a = cubic(1);
    let f = &a.factorization;
    let mut reps = rep_search(f, 3).unwrap();
    reps.push(a.projection().unwrap());
    let failing = MonodromyRep::from_json(&std::fs::read_to_string(rep_path("fermat-cubic-not-extending")).unwrap()).unwrap();
    assert!(!check_extension(&failing, f).unwrap());
    reps.push(failing);
    let t = Perm::transposition(3, 0, 1);
    for i in 0..f.factors.len() - 1 {
        let moved = hurwitz_move(f, i).unwrap();
        moved.check_full_twist().unwrap();
        let back = hurwitz_move_inverse(&moved, i).unwrap();
        assert!(back.factors.iter().zip(&f.factors).all(|(x, y)| x.equals(y)));
        for r in &reps {
            assert_eq!(check_extension(r, &moved).unwrap(), check_extension(r, f).unwrap());
            let c = r.conjugated(&t);
            assert_eq!(check_extension(&c, &moved).unwrap(), check_extension(r, f).unwrap());
        }
    }
}

#[test]
fn rep_search_returns_canonical_forms() {
    let a = cubic(1);
    for k in [3, 4] {
        for r in rep_search(&a.factorization, k).unwrap() {
            assert_eq!(r.canonical(), r);
            assert_eq!(r.canonical().canonical(), r);
        }
    }
}

fn assert_projection_is_canonical(name: &str, seed: u64) {
    let a = Analysis::run(&corpus(name), &Tolerances::default(), seed).unwrap();
    let rep = a.projection().unwrap();
    assert_eq!(rep.sheets(), a.data.curve.degree() as usize);
    assert!(check_extension(&rep, &a.factorization).unwrap(), "{name}");
    for (i, &kind) in a.factorization.local_kinds.iter().enumerate() {
        if kind != LocalKind::Tangency {
            assert_eq!(classify_branch_point(&rep, &a.factorization, i).unwrap(), PointClass::Good, "{name}");
        }
    }
    let v = a.verdict(&rep).unwrap();
    assert_eq!(v.outcome, Outcome::EquivalentToProjection, "{name}");
}

#[test]
fn projection_of_cubics_is_equivalent_to_projection() {
    for name in ["fermat-cubic", "random-cubic", "nodal-cubic"] {
        assert_projection_is_canonical(name, 1);
    }
}

#[test]
fn projection_of_smooth_quartic_is_equivalent_to_projection() {
    assert_projection_is_canonical("smooth-quartic", 1);
}

#[test]
fn conic_cover_extends_but_is_refused() {
    let a = Analysis::run(&corpus("conic"), &Tolerances::default(), 1).unwrap();
    let rep = a.projection().unwrap();
    assert_eq!(rep.sheets(), 2);
    assert!(rep.images().iter().all(|p| *p == Perm::transposition(2, 0, 1)));
    assert!(check_extension(&rep, &a.factorization).unwrap());
    let err = a.verdict(&rep).unwrap_err();
    assert!(matches!(err, PipelineError::Rep(_)) && err.is_refusal());
}

#[test]
fn nodal_cubic_projection_shape() {
    let a = Analysis::run(&corpus("nodal-cubic"), &Tolerances::default(), 1).unwrap();
    let rep = a.projection().unwrap();
    assert_eq!(rep.images().len(), 4);
    assert!(rep.is_transitive() && rep.is_simply_ramified());
    let prod = rep.images().iter().fold(Perm::identity(3), |acc, p| acc.then(p));
    assert!(prod.is_identity());
}
