//! Integer shearing of a logarithmic system `u∂u = A(u)` until every
//! eigenvalue of `A(0)` lies in `[0,1)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::gauge::GaugeCertificate;
use super::split::adapted_basis;
use crate::arith::factor::rational_roots;
use crate::arith::field::{Field, Rational};
use crate::arith::matrix::Matrix;
use crate::arith::series::MatSeries;
use crate::arith::upoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Normalized<F> {
    pub residue: Matrix<F>,
    pub log_form: MatSeries<F>,
    /// Eigenvalues of `residue`, ascending, with algebraic multiplicity.
    pub eigenvalues: Vec<(Rational, usize)>,
    pub certificate: GaugeCertificate<F>,
}

/// Eigenvalues of a matrix whose characteristic polynomial splits over
/// the rationals.
pub fn rational_eigenvalues<F: Field>(m: &Matrix<F>) -> Result<Vec<(Rational, usize)>> {
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    let chi = m.charpoly();
    let coeffs: Option<Vec<Rational>> = chi.coeffs().iter().map(Field::to_rational).collect();
    let chi_q = UniPoly::new(coeffs.ok_or_else(|| Error::IrrationalResidue(chi.display_with("t")))?);
    let roots = rational_roots(&chi_q);
    if roots.iter().map(|(_, k)| k).sum::<usize>() != m.rows() {
        return Err(Error::IrrationalResidue(chi_q.display_with("t")));
    }
    Ok(roots)
}

/// Sizes of the Jordan blocks of `m` at `lambda`, descending.
pub fn jordan_partition<F: Field>(m: &Matrix<F>, lambda: &Rational, mult: usize) -> Vec<usize> {
    let n = m.rows();
    let shifted = m.add_scalar_identity(&-F::from_rational(lambda.clone()));
    let mut ranks = vec![n];
    let mut power = Matrix::identity(n);
    for _ in 0..mult {
        power = &power * &shifted;
        ranks.push(power.rank());
    }
    // blocks of size ≥ k: ranks[k-1] − ranks[k]
    let at_least: Vec<usize> = (1..=mult).map(|k| ranks[k - 1] - ranks[k]).collect();
    let mut sizes = Vec::new();
    for k in 1..=mult {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, exactly));
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// `S⁻¹AS + diag(k·I, 0)` for `S = diag(u^k I_s, I)`.
fn shear<F: Field>(a: &MatSeries<F>, dim: usize, s: usize, k: i64) -> MatSeries<F> {
    let mut terms: BTreeMap<i64, Matrix<F>> = BTreeMap::new();
    let mut put = |e: i64, r0: usize, c0: usize, blk: Matrix<F>| {
        terms.entry(e).or_insert_with(|| Matrix::zeros(dim, dim)).set_block(r0, c0, &blk);
    };
    for (e, c) in a.terms() {
        put(e, 0, 0, c.submatrix(0, s, 0, s));
        put(e - k, 0, s, c.submatrix(0, s, s, dim));
        put(e + k, s, 0, c.submatrix(s, dim, 0, s));
        put(e, s, s, c.submatrix(s, dim, s, dim));
    }
    let mut id = Matrix::zeros(dim, dim);
    for i in 0..s {
        id[(i, i)] = F::from_int(k);
    }
    let order = a.order().map(|o| o - k.abs());
    MatSeries::new(terms, order).add(&MatSeries::constant(id))
}

fn shear_gauge<F: Field>(dim: usize, s: usize, k: i64) -> MatSeries<F> {
    let mut first = Matrix::zeros(dim, dim);
    let mut rest = Matrix::zeros(dim, dim);
    for i in 0..dim {
        if i < s {
            first[(i, i)] = F::one();
        } else {
            rest[(i, i)] = F::one();
        }
    }
    MatSeries::exact([(k, first)]).add(&MatSeries::exact([(0, rest)]))
}

/// Shears `u∂u = A` until the residue eigenvalues lie in `[0,1)`. The
/// certificate is stated for `u²∂u = u·A`.
pub fn normalize_residues<F: Field>(log_form: &MatSeries<F>, dim: usize, n: i64) -> Result<Normalized<F>> {
    let source = log_form.shift(1);
    let mut a = log_form.clone();
    let mut g: MatSeries<F> = MatSeries::identity(dim);
    let mut h: MatSeries<F> = MatSeries::identity(dim);
    let zero = Rational::zero();
    let one = Rational::one();
    let mut guard = 0usize;
    loop {
        if a.order().is_some_and(|o| o < 1) {
            return Err(Error::InsufficientPrecision("residue lost while shearing".into()));
        }
        let r = a.coeff_or_zero(0, dim);
        let eig = rational_eigenvalues(&r)?;
        let (lo, hi) = match (eig.first(), eig.last()) {
            (Some(l), Some(h)) => (l.clone(), h.clone()),
            _ => {
                return Ok(Normalized {
                    residue: r,
                    log_form: a,
                    eigenvalues: eig,
                    certificate: GaugeCertificate::identity("residues", &source, dim, n),
                })
            }
        };
        let (lambda, mult, k) = if hi.0 >= one {
            (hi.0, hi.1, -1)
        } else if lo.0 < zero {
            (lo.0, lo.1, 1)
        } else {
            let target = a.shift(1);
            let order = target.order().unwrap_or(n);
            let certificate = GaugeCertificate { stage: "residues", dim, gauge: g, source, target, order, inverse: Some(h) };
            return Ok(Normalized { residue: r, log_form: a, eigenvalues: eig, certificate });
        };
        guard += 1;
        if guard > 64 * dim + 64 {
            return Err(Error::InsufficientPrecision("shearing did not settle".into()));
        }
        let lin = UniPoly::linear(F::from_rational(lambda.clone()));
        let others: Vec<(UniPoly<F>, usize)> = eig
            .iter()
            .filter(|(q, _)| q != &lambda)
            .map(|(q, m)| (UniPoly::linear(F::from_rational(q.clone())), *m))
            .collect();
        let rest = others.iter().fold(UniPoly::constant(F::one()), |acc, (p, m)| acc * &p.pow(*m));
        let (p, _) = adapted_basis(&r, &[(lin, mult), (rest, 1)])?;
        let pinv = p.inverse().ok_or_else(|| Error::Precondition("adapted basis is singular".into()))?;
        a = MatSeries::new(a.terms().map(|(e, c)| (e, &(&pinv * c) * &p)), a.order());
        a = shear(&a, dim, mult, k);
        g = g.mul(&MatSeries::constant(p)).mul(&shear_gauge(dim, mult, k));
        h = shear_gauge(dim, mult, -k).mul(&MatSeries::constant(pinv)).mul(&h);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat};
    use crate::turrittin::gauge::check_gauge;

    #[test]
    fn shear_examples() {
        let a = MatSeries::exact([(0, Matrix::diagonal(&[rat(5, 6), rat(7, 6)]))]);
        let out = normalize_residues(&a, 2, 8).unwrap();
        assert_eq!(out.eigenvalues, vec![(rat(1, 6), 1), (rat(5, 6), 1)]);
        assert!(check_gauge(&out.certificate));

        let a = MatSeries::exact([(0, Matrix::diagonal(&[rat(1, 2)]))]);
        let out = normalize_residues(&a, 1, 8).unwrap();
        assert_eq!(out.residue, Matrix::diagonal(&[rat(1, 2)]));

        let a = MatSeries::exact([(0, Matrix::diagonal(&[rat(-1, 2)]))]);
        let out = normalize_residues(&a, 1, 8).unwrap();
        assert_eq!(out.residue, Matrix::diagonal(&[rat(1, 2)]));
        assert!(check_gauge(&out.certificate));
    }

    #[test]
    fn resonant_pair() {
        // R = [[0,1],[0,2]] is diagonalizable with eigenvalues 0 and 2
        let r = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(2)]]);
        let a = MatSeries::new([(0, r), (1, Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(3), int(0)]]))], Some(12));
        let out = normalize_residues(&a, 2, 8).unwrap();
        assert_eq!(out.eigenvalues, vec![(int(0), 2)]);
        assert!(check_gauge(&out.certificate));
    }

    #[test]
    fn irrational_eigenvalues_are_rejected() {
        let r = Matrix::from_rows(vec![vec![int(0), int(2)], vec![int(1), int(0)]]);
        let a = MatSeries::exact([(0, r)]);
        assert!(matches!(normalize_residues(&a, 2, 8), Err(Error::IrrationalResidue(_))));
    }

    #[test]
    fn jordan_sizes() {
        let j = Matrix::from_rows(vec![
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(0)],
            vec![int(0), int(0), int(0)],
        ]);
        assert_eq!(jordan_partition(&j, &int(0), 3), vec![2, 1]);
        assert_eq!(jordan_partition(&Matrix::<Rational>::zeros(2, 2), &int(0), 2), vec![1, 1]);
    }
}
