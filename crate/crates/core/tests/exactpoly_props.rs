mod common;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use dualcover::exactpoly::{parse_poly, resultant, squarefree_part, sylvester_resultant, Polynomial};

use common::{q, specialize, sylvester_det};

const VARS: [&str; 3] = ["x", "y", "z"];

/// Up to `max_terms` terms with exponents below `max_exp` in the first
/// `nvars` variables of `VARS` and small rational coefficients.
fn poly(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..max_exp, nvars), -6i64..=6, 1i64..=3),
        1..=max_terms,
    )
    .prop_map(move |terms| {
        let vars = &VARS[..nvars];
        Polynomial::from_terms(vars, terms.into_iter().map(|(e, n, d)| (e, q(n, d))))
    })
}

/// A polynomial in x and y of degree exactly `deg` in x with a nonzero
/// constant leading coefficient.
fn monic_in_x(deg: u32) -> impl Strategy<Value = Polynomial> {
    (poly(2, deg, 4), 1i64..=4).prop_map(move |(p, lead)| {
        let vars = &VARS[..2];
        let top = Polynomial::from_terms(vars, [(vec![deg, 0], q(lead, 1))]);
        &top + &p
    })
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(a in poly(3, 3, 4), b in poly(3, 3, 4), c in poly(3, 3, 4)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(3, 3, 4), b in poly(3, 3, 4), p in prop::collection::vec((-5i64..=5, 1i64..=4), 3)) {
        let pt: Vec<BigRational> = p.into_iter().map(|(n, d)| q(n, d)).collect();
        prop_assert_eq!((&a * &b).evaluate(&pt), a.evaluate(&pt) * b.evaluate(&pt));
        prop_assert_eq!((&a + &b).evaluate(&pt), a.evaluate(&pt) + b.evaluate(&pt));
    }

    #[test]
    fn print_parse_round_trip(a in poly(3, 4, 5)) {
        prop_assert_eq!(parse_poly(&a.to_string(), &VARS).unwrap(), a);
    }

    #[test]
    fn resultant_is_multiplicative(f in monic_in_x(2), g in monic_in_x(1), h in monic_in_x(2)) {
        let lhs = resultant(&(&f * &g), &h, "x").unwrap();
        let rhs = &resultant(&f, &h, "x").unwrap() * &resultant(&g, &h, "x").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_matches_specialized_sylvester(f in monic_in_x(3), g in monic_in_x(2), n in -4i64..=4, d in 1i64..=3) {
        let y0 = q(n, d);
        let r = resultant(&f, &g, "x").unwrap();
        let r0 = r.evaluate(&[BigRational::zero(), y0.clone()]);
        prop_assert_eq!(r0, sylvester_det(&specialize(&f, &y0), &specialize(&g, &y0)));
    }

    #[test]
    fn subresultant_matches_sylvester_matrix(f in monic_in_x(3), g in monic_in_x(3)) {
        prop_assert_eq!(resultant(&f, &g, "x").unwrap(), sylvester_resultant(&f, &g, "x").unwrap());
    }

    #[test]
    fn squarefree_part_idempotent_and_divides(a in poly(2, 3, 3), b in poly(2, 2, 3)) {
        let f = &(&a * &a) * &b;
        prop_assume!(!f.is_zero());
        let s = squarefree_part(&f);
        prop_assert!(f.exact_div(&s).is_some());
        prop_assert!(squarefree_part(&s).same_up_to_scalar(&s));
    }
}

#[test]
fn squarefree_of_constructed_square() {
    // h^2 k with coprime quadratics h, k
    let h = parse_poly("x^2 + y^2 - 1", &VARS[..2]).unwrap();
    let k = parse_poly("x^2 - 2*y + 3", &VARS[..2]).unwrap();
    let f = &(&h * &h) * &k;
    assert!(squarefree_part(&f).same_up_to_scalar(&(&h * &k)));
}
