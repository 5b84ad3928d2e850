use std::sync::Arc;

use hk_core::poly::DegreeProfile;
use hk_core::scalar::{rat, rat_int};
use hk_core::{format_poly, parse_poly, ExactScalar, Monomial, SparsePolynomial, Sym, VariableSystem};
use proptest::prelude::*;

fn system() -> Arc<VariableSystem> {
    VariableSystem::builder().real("x", 2).complex("z", 2).build().unwrap()
}

/// Symbols 0..6: x[1], x[2], z[1], zbar[1], z[2], zbar[2].
const SYMBOLS: Sym = 6;

fn term() -> impl Strategy<Value = (Vec<(Sym, u16)>, (i64, i64, i64))> {
    (
        prop::collection::vec((0..SYMBOLS, 1u16..3), 0..3),
        (-6i64..=6, -6i64..=6, 1i64..=4),
    )
}

fn poly() -> impl Strategy<Value = SparsePolynomial> {
    prop::collection::vec(term(), 0..5).prop_map(|terms| {
        let sys = system();
        SparsePolynomial::from_terms(
            &sys,
            terms.into_iter().map(|(pairs, (re, im, den))| {
                (Monomial::from_pairs(pairs), ExactScalar::new(rat(re, den), rat(im, den)))
            }),
        )
    })
}

fn homogeneous(degree: u32) -> impl Strategy<Value = SparsePolynomial> {
    prop::collection::vec((prop::collection::vec(0..2 as Sym, degree as usize), -5i64..=5), 1..4).prop_map(
        move |terms| {
            let sys = system();
            SparsePolynomial::from_terms(
                &sys,
                terms
                    .into_iter()
                    .map(|(syms, c)| (Monomial::from_pairs(syms.into_iter().map(|s| (s, 1))), ExactScalar::int(c))),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative_and_commutative(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn partials_commute(a in poly(), u in 0..SYMBOLS, v in 0..SYMBOLS) {
        prop_assert_eq!(a.partial(u).partial(v), a.partial(v).partial(u));
    }

    #[test]
    fn leibniz_rule(a in poly(), b in poly(), s in 0..SYMBOLS) {
        let lhs = (&a * &b).partial(s);
        let rhs = &(&a.partial(s) * &b) + &(&a * &b.partial(s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_is_an_involutive_ring_map(a in poly(), b in poly()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn power_scales_degree(p in homogeneous(2), e in 1u32..4) {
        let profile = p.degree_profile("x").unwrap();
        prop_assume!(profile != DegreeProfile::Zero);
        prop_assert_eq!(p.power(e).degree_profile("x").unwrap(), profile.scaled(e));
    }

    #[test]
    fn text_round_trip(a in poly()) {
        let text = format_poly(&a);
        let back = parse_poly(a.system(), &text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(format_poly(&back), text);
    }
}

#[test]
fn canonical_order_is_graded() {
    let sys = system();
    let p = parse_poly(&sys, "x[2] + 1 + x[1]^2 + zbar[1]*z[1] + x[1]*x[2]").unwrap();
    let degrees: Vec<u32> = p.terms().iter().map(|(m, _)| m.degree()).collect();
    let mut sorted = degrees.clone();
    sorted.sort_by(|a, b| b.cmp(a));
    assert_eq!(degrees, sorted);
}

#[test]
fn zero_is_homogeneous_of_every_degree() {
    let sys = system();
    let zero = SparsePolynomial::zero(&sys);
    assert_eq!(zero.degree_profile("x").unwrap(), DegreeProfile::Zero);
    assert_eq!(format_poly(&zero), "0");
}

#[test]
fn gaussian_coefficients_parse() {
    let sys = system();
    let p = parse_poly(&sys, "(1/2,-3)*z[1]*zbar[2]").unwrap();
    let m = Monomial::from_pairs([(2, 1), (5, 1)]);
    assert_eq!(p.coeff(&m), ExactScalar::new(rat(1, 2), rat_int(-3)));
}
