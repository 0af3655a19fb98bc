use proptest::prelude::*;
use twdr_core::arith::{parse_polynomial, rat, MonomialOrder, MultiPoly, Rational};
use twdr_core::milnor::{quasihomogeneous_weights, weighted_milnor_number, JacobianContext};

const CORPUS: &[(&str, usize)] = &[
    ("x^2+y^3", 2),
    ("x^3+y^4", 2),
    ("x^5+y^5", 2),
    ("x^3-3*x+y^2", 2),
    ("x^2+y^2+z^2", 3),
    ("x^3+x*y^2+y^4", 2),
    ("x^4-2*x^2", 1),
    ("x^3+y^3+z^3", 3),
];

fn ctx(f: &str, n: usize, order: MonomialOrder) -> JacobianContext {
    JacobianContext::new(parse_polynomial(f, n).unwrap(), &order).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=4, nvars), rational()), 0..6)
        .prop_map(move |terms| MultiPoly::from_terms(nvars, terms))
}

#[test]
fn milnor_number_is_order_independent() {
    for &(f, n) in CORPUS {
        let a = ctx(f, n, MonomialOrder::degrevlex(n));
        let b = ctx(f, n, MonomialOrder::deglex(n));
        assert_eq!(a.milnor_number(), b.milnor_number(), "{f}");
    }
}

#[test]
fn standard_monomials_avoid_leading_terms() {
    for &(f, n) in CORPUS {
        let c = ctx(f, n, MonomialOrder::degrevlex(n));
        for m in c.standard_monomials() {
            for lm in c.groebner().leading_monomials() {
                assert!(!lm.iter().zip(m).all(|(a, b)| a <= b), "{f}: {m:?} divisible by {lm:?}");
            }
        }
    }
}

#[test]
fn critical_parts_account_for_milnor_number() {
    for &(f, n) in CORPUS {
        let c = ctx(f, n, MonomialOrder::degrevlex(n));
        let total: usize = c.critical_parts().iter().map(|p| p.multiplicity * p.degree()).sum();
        assert_eq!(total, c.milnor_number(), "{f}");
    }
}

#[test]
fn weighted_milnor_number_matches() {
    for &(f, n) in CORPUS {
        let c = ctx(f, n, MonomialOrder::degrevlex(n));
        if let Some(w) = quasihomogeneous_weights(c.f()) {
            assert_eq!(weighted_milnor_number(&w), Rational::from_integer((c.milnor_number() as i64).into()), "{f}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_form_is_idempotent_and_linear(i in 0..CORPUS.len(), g in poly(3), h in poly(3), c in rational()) {
        let (f, n) = CORPUS[i];
        let cx = ctx(f, n, MonomialOrder::degrevlex(n));
        let restrict = |p: &MultiPoly| MultiPoly::from_terms(n, p.terms().map(|(m, c)| (m[..n].to_vec(), c.clone())));
        let (g, h) = (restrict(&g), restrict(&h));
        let ng = cx.normal_form(&g);
        prop_assert!(cx.check_normal_form(&g, &ng));
        prop_assert_eq!(&cx.normal_form(&ng.nf).nf, &ng.nf);
        let nh = cx.normal_form(&h);
        let combo = cx.normal_form(&g.scale(&c).add(&h));
        prop_assert_eq!(combo.nf, ng.nf.scale(&c).add(&nh.nf));
    }

    #[test]
    fn multiplication_matrices_multiply(i in 0..CORPUS.len(), g in poly(3), h in poly(3)) {
        let (f, n) = CORPUS[i];
        let cx = ctx(f, n, MonomialOrder::degrevlex(n));
        let restrict = |p: &MultiPoly| MultiPoly::from_terms(n, p.terms().map(|(m, c)| (m[..n].to_vec(), c.clone())));
        let (g, h) = (restrict(&g), restrict(&h));
        let mg = cx.mult_matrix(&g);
        let mh = cx.mult_matrix(&h);
        prop_assert_eq!(cx.mult_matrix(&g.mul(&h)), &mg * &mh);
        prop_assert_eq!(&mg * &mh, &mh * &mg);
    }
}
