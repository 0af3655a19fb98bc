use std::collections::BTreeMap;

use proptest::prelude::*;
use twdr_core::arith::{int, rat, MatSeries, Matrix, Rational, UniPoly};
use twdr_core::brieskorn::ConnectionMatrix;
use twdr_core::turrittin::{check_gauge, datum_equal, extract_monodromy, rh_inverse, ExponentialPart, GaugeCertificate, MonodromyDatum, PartDatum};

fn residue() -> impl Strategy<Value = Rational> {
    (1i64..=6).prop_flat_map(|q| (0..q).prop_map(move |p| rat(p, q)))
}

fn partition(m: usize) -> BoxedStrategy<Vec<usize>> {
    if m == 0 {
        return Just(Vec::new()).boxed();
    }
    (1..=m)
        .prop_flat_map(move |first| partition(m - first).prop_map(move |mut rest| {
            rest.push(first);
            rest.sort_unstable_by(|a, b| b.cmp(a));
            rest
        }))
        .boxed()
}

fn part(t0: i64, jordan: bool) -> impl Strategy<Value = PartDatum> {
    prop::collection::vec(residue(), 1..=3).prop_flat_map(move |rs| {
        let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
        for r in &rs {
            *counts.entry(r.clone()).or_insert(0) += 1;
        }
        let keys: Vec<(Rational, usize)> = counts.into_iter().collect();
        let parts: Vec<BoxedStrategy<Vec<usize>>> = keys.iter().map(|(_, m)| partition(*m)).collect();
        let rs = rs.clone();
        parts.prop_map(move |ps| {
            let mut d = PartDatum::new(ExponentialPart::rational(rat(t0, 2), rs.len()), rs.clone());
            if jordan {
                d.jordan = Some(keys.iter().map(|(q, _)| q.clone()).zip(ps).collect());
            }
            d
        })
    })
}

fn datum(jordan: bool) -> impl Strategy<Value = MonodromyDatum> {
    prop::collection::btree_set(-6i64..=6, 1..=3).prop_flat_map(move |t0s| {
        let parts: Vec<_> = t0s.into_iter().map(|t| part(t, jordan)).collect();
        parts.prop_map(MonodromyDatum::new)
    })
}

fn small() -> impl Strategy<Value = i64> {
    -2i64..=2
}

/// `G = P(I + uU)(I + uL)S` with `U` strictly upper, `L` strictly lower and
/// `S = diag(u^{k_i})`, `k_i ∈ {0,1}`, together with its exact inverse.
#[derive(Clone, Debug)]
struct Gauge {
    p: Vec<i64>,
    upper: Vec<i64>,
    lower: Vec<i64>,
    shear: Vec<bool>,
}

fn gauge(dim: usize) -> impl Strategy<Value = Gauge> {
    (
        prop::collection::vec(small(), dim * dim),
        prop::collection::vec(small(), dim * dim),
        prop::collection::vec(small(), dim * dim),
        prop::collection::vec(any::<bool>(), dim),
    )
        .prop_map(|(p, upper, lower, shear)| Gauge { p, upper, lower, shear })
}

fn unipotent_factor(n: &Matrix<Rational>, dim: usize) -> (MatSeries<Rational>, MatSeries<Rational>) {
    let g = MatSeries::exact([(0, Matrix::identity(dim)), (1, n.clone())]);
    let mut inv = MatSeries::identity(dim);
    let mut power = Matrix::identity(dim);
    for k in 1..=dim {
        power = &power * &n.neg();
        inv = inv.add(&MatSeries::exact([(k as i64, power.clone())]));
    }
    (g, inv)
}

fn build(g: &Gauge, dim: usize) -> Option<(MatSeries<Rational>, MatSeries<Rational>)> {
    let mut p = Matrix::from_fn(dim, dim, |i, j| int(g.p[i * dim + j]));
    if p.inverse().is_none() {
        p = p.add(&Matrix::scalar(dim, int(7)));
    }
    let pinv = p.inverse()?;
    let u = Matrix::from_fn(dim, dim, |i, j| if j > i { int(g.upper[i * dim + j]) } else { int(0) });
    let l = Matrix::from_fn(dim, dim, |i, j| if j < i { int(g.lower[i * dim + j]) } else { int(0) });
    let (gu, gu_inv) = unipotent_factor(&u, dim);
    let (gl, gl_inv) = unipotent_factor(&l, dim);
    let mut s_terms = [Matrix::zeros(dim, dim), Matrix::zeros(dim, dim)];
    let mut sinv_terms = [Matrix::zeros(dim, dim), Matrix::zeros(dim, dim)];
    for i in 0..dim {
        let k = usize::from(g.shear[i]);
        s_terms[k][(i, i)] = int(1);
        sinv_terms[k][(i, i)] = int(1);
    }
    let s = MatSeries::exact([(0, s_terms[0].clone()), (1, s_terms[1].clone())]);
    let sinv = MatSeries::exact([(0, sinv_terms[0].clone()), (-1, sinv_terms[1].clone())]);
    let gauge = MatSeries::constant(p).mul(&gu).mul(&gl).mul(&s);
    let inv = sinv.mul(&gl_inv).mul(&gu_inv).mul(&MatSeries::constant(pinv));
    Some((gauge, inv))
}

fn transform(b: &MatSeries<Rational>, g: &MatSeries<Rational>, ginv: &MatSeries<Rational>) -> MatSeries<Rational> {
    ginv.mul(&b.mul(g).add(&g.derivative().shift(2)))
}

fn round_trip(d: &MonodromyDatum, g: &Gauge, jordan: bool) -> Result<(), TestCaseError> {
    let b = rh_inverse(d);
    let Some((gauge, inv)) = build(g, b.dim) else { return Ok(()) };
    let twisted = transform(&b.matrix, &gauge, &inv);
    prop_assume!(twisted.valuation().is_none_or(|v| v >= 0));
    let cert = GaugeCertificate { stage: "test", dim: b.dim, gauge, source: b.matrix.clone(), target: twisted.clone(), order: 16, inverse: None };
    prop_assert!(check_gauge(&cert));
    let got = extract_monodromy(&ConnectionMatrix::new(twisted, b.dim), Some(8), jordan).unwrap();
    prop_assert!(datum_equal(&got.datum, d), "{:?} vs {:?}", got.datum, d);
    if jordan {
        prop_assert_eq!(&got.datum, d);
    }
    prop_assert!(got.certificates_ok());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rh_inverse_then_extract(d in datum(false), g in gauge(9)) {
        round_trip(&d, &g, false)?;
    }

    #[test]
    fn rh_inverse_then_extract_with_jordan(d in datum(true), g in gauge(9)) {
        round_trip(&d, &g, true)?;
    }

    #[test]
    fn datum_equality_ignores_part_order(d in datum(false)) {
        let mut rev = d.clone();
        rev.parts.reverse();
        prop_assert!(datum_equal(&d, &rev));
        prop_assert!(d.is_valid());
    }
}

#[test]
fn irrational_round_trip() {
    let p = UniPoly::new(vec![int(-2), int(0), int(1)]);
    let d = MonodromyDatum::new(vec![
        PartDatum::new(ExponentialPart::new(p, 2), [rat(1, 3), rat(1, 2)]),
        PartDatum::new(ExponentialPart::rational(int(1), 1), [rat(0, 1)]),
    ]);
    let b = rh_inverse(&d);
    assert_eq!(b.dim, 5);
    let got = extract_monodromy(&b, None, false).unwrap();
    assert!(datum_equal(&got.datum, &d), "{:?}", got.datum);
    assert!(got.certificates_ok());
}
