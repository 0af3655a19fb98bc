use proptest::prelude::*;
use twdr_core::arith::{parse_polynomial, rat, variable_names, MatSeries, Matrix, MultiPoly, Rational, USeries};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn poly(nvars: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, nvars), rational()), 0..6)
        .prop_map(move |terms| MultiPoly::from_terms(nvars, terms))
}

fn series() -> impl Strategy<Value = USeries<Rational>> {
    (prop::collection::vec(rational(), 1..6), 2i64..10).prop_map(|(cs, n)| {
        USeries::new(cs.into_iter().enumerate().map(|(k, c)| (k as i64, c)), Some(n))
    })
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(rational(), n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(2), b in poly(2), c in poly(2)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&MultiPoly::one(2)), a.clone());
    }

    #[test]
    fn print_parse_round_trip(a in poly(3)) {
        let text = a.to_string_with(&variable_names(3));
        prop_assert_eq!(parse_polynomial(&text, 3).unwrap(), a);
    }

    #[test]
    fn derivative_is_a_derivation(a in poly(2), b in poly(2)) {
        let lhs = a.mul(&b).partial(0);
        let rhs = a.partial(0).mul(&b).add(&a.mul(&b.partial(0)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_commutes(a in series(), b in series(), n in 1i64..6) {
        let n = n.min(a.order().unwrap()).min(b.order().unwrap());
        prop_assert!(a.mul(&b).truncate(n).agrees_mod(&a.truncate(n).mul(&b.truncate(n)), n));
        prop_assert!(a.add(&b).truncate(n).agrees_mod(&a.truncate(n).add(&b.truncate(n)), n));
    }

    #[test]
    fn series_inverse(a in series(), n in 1i64..8) {
        prop_assume!(a.valuation() == Some(0));
        let inv = a.invert(n).unwrap();
        let one = USeries::constant(rat(1, 1));
        let k = n.min(a.order().unwrap_or(n));
        prop_assert!(a.mul(&inv).agrees_mod(&one, k));
    }

    #[test]
    fn matrix_inverse(m in matrix(3)) {
        match m.inverse() {
            Some(inv) => prop_assert!((&m * &inv).is_identity()),
            None => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn matrix_series_inverse(m0 in matrix(2), m1 in matrix(2)) {
        prop_assume!(m0.inverse().is_some());
        let s = MatSeries::exact([(0, m0), (1, m1)]);
        let inv = s.invert(6).unwrap();
        prop_assert!(s.mul(&inv).agrees_mod(&MatSeries::identity(2), 6));
    }

    #[test]
    fn charpoly_annihilates(m in matrix(3)) {
        prop_assert!(m.charpoly().eval_matrix(&m).is_zero());
    }
}
