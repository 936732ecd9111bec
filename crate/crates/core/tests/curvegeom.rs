use num_complex::Complex64;
use proptest::prelude::*;

use dualcover::curvegeom::{
    bidual_check, classify_singularity, dual_curve, genericity_check, plucker_expect, singular_points, Plane,
    PlaneCurve, SingKind,
};
use dualcover::exactpoly::{rat, Polynomial};

fn corpus(name: &str) -> PlaneCurve {
    let path = format!("{}/../../data/curves/{name}.poly", env!("CARGO_MANIFEST_DIR"));
    PlaneCurve::from_file_text(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn count(points: &[dualcover::curvegeom::SingularPoint], kind: SingKind) -> usize {
    points.iter().filter(|p| p.kind == kind).count()
}

/// Degree and singularities of the dual against the Plücker prediction.
fn check_plucker(name: &str, nodes: u32) {
    let c = corpus(name);
    let own = singular_points(&c).unwrap();
    assert_eq!(own.len(), nodes as usize, "{name}");
    assert!(own.iter().all(|p| p.kind == SingKind::Node));
    let expect = plucker_expect(c.degree(), nodes).unwrap();
    let d = dual_curve(&c).unwrap();
    assert_eq!(d.degree(), expect.dual_degree, "{name}");
    assert_eq!(d.degree(), c.degree() * (c.degree() - 1) - 2 * nodes);
    let sp = singular_points(&d).unwrap();
    assert_eq!(count(&sp, SingKind::Cusp), expect.dual_cusps as usize, "{name}");
    assert_eq!(count(&sp, SingKind::Node), expect.dual_nodes as usize, "{name}");
    assert_eq!(count(&sp, SingKind::Other), 0, "{name}");
}

#[test]
fn plucker_on_the_cubic_corpus() {
    check_plucker("fermat-cubic", 0);
    check_plucker("random-cubic", 0);
    check_plucker("nodal-cubic", 1);
}

#[test]
fn conic_is_self_dual() {
    let c = corpus("conic");
    let d = dual_curve(&c).unwrap();
    assert_eq!(d.plane(), Plane::Dual);
    assert!(d.relabel(Plane::Source).defining().same_up_to_scalar(c.defining()));
}

#[test]
fn biduality_on_corpus() {
    for name in ["conic", "fermat-cubic", "random-cubic", "nodal-cubic"] {
        assert!(bidual_check(&corpus(name)).unwrap(), "{name}");
    }
}

#[test]
fn nodal_cubic_has_one_node_at_origin() {
    let sp = singular_points(&corpus("nodal-cubic")).unwrap();
    assert_eq!(sp.len(), 1);
    assert_eq!(sp[0].kind, SingKind::Node);
    let l = sp[0].location;
    assert!(l[0].norm() < 1e-12 && l[1].norm() < 1e-12);
}

#[test]
fn smooth_cubics_are_general_enough() {
    for (name, seed) in [("fermat-cubic", 1), ("random-cubic", 5)] {
        let r = genericity_check(&corpus(name), seed).unwrap();
        assert!(r.verdict, "{name}: {r:?}");
    }
}

#[test]
fn conic_is_refused_by_degree() {
    let r = genericity_check(&corpus("conic"), 1).unwrap();
    assert!(!r.degree_admissible);
    assert!(!r.verdict);
    assert!(!r.notes.is_empty());
}

#[test]
fn fermat_quartic_has_hyperflexes() {
    let r = genericity_check(&corpus("fermat-quartic"), 1).unwrap();
    assert!(!r.inflexions_simple);
    assert!(!r.verdict);
    assert_eq!(r.witnesses.len(), 12);
}

/// `F(M X)` for an integer matrix `M`.
fn transform(f: &Polynomial, m: &[[i64; 3]; 3]) -> Polynomial {
    let vars = ["x", "y", "z"];
    let images: Vec<Polynomial> = (0..3)
        .map(|i| {
            (0..3).fold(Polynomial::zero(&vars), |acc, j| {
                &acc + &Polynomial::var(&vars, j).scale(&rat(m[i][j]))
            })
        })
        .collect();
    f.substitute_all(&images)
}

fn det(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `M^-1 p` by Cramer's rule.
fn solve(m: &[[i64; 3]; 3], p: [f64; 3]) -> [Complex64; 3] {
    let d = det(m) as f64;
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut a = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                a[i][j] = if j == k { p[i] } else { m[i][j] as f64 };
            }
        }
        let dk = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
        *o = Complex64::new(dk / d, 0.0);
    }
    out
}

fn matrix() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-3i64..=3)).prop_filter("invertible", |m| det(m) != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_survives_coordinate_change(m in matrix()) {
        let cases = [
            ("z*y^2 - x^2*(x + z)", SingKind::Node),
            ("y^2*z - x^3", SingKind::Cusp),
            ("y^2*z^2 - x^4 + x*y^3", SingKind::Other),
        ];
        for (text, kind) in cases {
            let c = PlaneCurve::parse(text, Plane::Source).unwrap();
            let moved = PlaneCurve::new(&transform(c.defining(), &m), Plane::Source).unwrap();
            let q = solve(&m, [0.0, 0.0, 1.0]);
            prop_assert_eq!(classify_singularity(&moved, &q).unwrap(), kind, "{}", text);
        }
    }
}
