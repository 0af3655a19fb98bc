//! Reduction to logarithmic form by saturating a lattice under
//! `θ(v) = u v′ + (B/u) v`.
//!
//! Starting from the standard lattice, `L ← L + θL` is iterated until
//! `θL ⊂ L`; for a regular singular block this happens within `dim` steps.
//! A basis `G` of the final lattice gives `B′ = u·G⁻¹θ(G)` with `B′(0) = 0`.

use super::gauge::GaugeCertificate;
use crate::arith::field::Field;
use crate::arith::matrix::Matrix;
use crate::arith::series::{MatSeries, USeries};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct MoserResult<F> {
    /// `R` with `u∂u = R + O(u)` in the new basis.
    pub residue: Matrix<F>,
    /// The whole new matrix `B′`, divided by `u`.
    pub log_form: MatSeries<F>,
    pub certificate: GaugeCertificate<F>,
}

fn theta<F: Field>(a_over_u: &MatSeries<F>, g: &MatSeries<F>) -> MatSeries<F> {
    g.derivative().shift(1).add(&a_over_u.mul(g))
}

/// Column basis of the `F[[u]]`-span of the columns of `m` (`rows` rows),
/// by elimination on entries of least valuation.
fn lattice_basis<F: Field>(m: &MatSeries<F>, rows: usize, cols: usize, target: i64) -> Result<MatSeries<F>> {
    let mut e = m.entries(rows, cols);
    let mut live_rows: Vec<usize> = (0..rows).collect();
    let mut live_cols: Vec<usize> = (0..cols).collect();
    let mut basis: Vec<usize> = Vec::new();
    while !live_rows.is_empty() {
        let mut best: Option<(i64, usize, usize)> = None;
        for &r in &live_rows {
            for &c in &live_cols {
                if let Some(v) = e[r][c].valuation() {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                    }
                }
            }
        }
        let (_, r, c) = best.ok_or_else(|| Error::InsufficientPrecision("lattice lost rank".into()))?;
        let inv = e[r][c].inv_laurent(target)?;
        for &j in &live_cols {
            if j == c || e[r][j].is_zero_known() {
                continue;
            }
            let q = e[r][j].mul(&inv);
            for i in 0..rows {
                let delta = q.mul(&e[i][c]);
                e[i][j] = e[i][j].sub(&delta);
            }
        }
        basis.push(c);
        live_rows.retain(|&x| x != r);
        live_cols.retain(|&x| x != c);
    }
    let g: Vec<Vec<USeries<F>>> = (0..rows).map(|i| basis.iter().map(|&c| exact_part(&e[i][c])).collect()).collect();
    Ok(MatSeries::from_entries(&g))
}

/// Keeps the known terms and declares the result exact. Valid for lattice
/// bases once the dropped tail lies in the lattice.
fn exact_part<F: Field>(s: &USeries<F>) -> USeries<F> {
    USeries::exact(s.terms().map(|(k, c)| (k, c.clone())))
}

pub fn moser_rank_reduce<F: Field>(block: &MatSeries<F>, dim: usize, n: i64) -> Result<MoserResult<F>> {
    if dim == 0 {
        return Ok(MoserResult {
            residue: Matrix::zeros(0, 0),
            log_form: MatSeries::zero_exact(),
            certificate: GaugeCertificate::identity("moser", block, 0, n),
        });
    }
    if !block.coeff_or_zero(0, dim).is_nilpotent() {
        return Err(Error::Precondition("constant term is not nilpotent".into()));
    }
    let a = block.truncate(n).shift(-1);
    let mut g = MatSeries::identity(dim);
    for _ in 0..=dim + 1 {
        let t = theta(&a, &g);
        let ginv = g.inv_laurent(dim, n + 2 * dim as i64)?;
        let x = ginv.mul(&t);
        let order = x.order().unwrap_or(n);
        if order < 1 {
            return Err(Error::InsufficientPrecision(format!("Moser step known only below u^{order}")));
        }
        if x.valuation_bound().is_none_or(|v| v >= 0) {
            let target = x.shift(1);
            let certificate = GaugeCertificate {
                stage: "moser",
                dim,
                gauge: g,
                source: block.clone(),
                order: order + 1,
                target,
                inverse: None,
            };
            return Ok(MoserResult { residue: x.coeff_or_zero(0, dim), log_form: x, certificate });
        }
        let stacked = hstack_series(&g, &t, dim);
        g = lattice_basis(&stacked, dim, 2 * dim, n + 2 * dim as i64)?;
    }
    Err(Error::IrregularPart(dim + 1))
}

fn hstack_series<F: Field>(a: &MatSeries<F>, b: &MatSeries<F>, dim: usize) -> MatSeries<F> {
    let ea = a.entries(dim, dim);
    let eb = b.entries(dim, dim);
    let rows: Vec<Vec<USeries<F>>> = ea.into_iter().zip(eb).map(|(mut x, y)| {
        x.extend(y);
        x
    }).collect();
    MatSeries::from_entries(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat, Rational};
    use crate::turrittin::gauge::check_gauge;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn already_logarithmic() {
        let b = MatSeries::exact([(1, Matrix::diagonal(&[rat(5, 6), rat(7, 6)]))]);
        let r = moser_rank_reduce(&b, 2, 8).unwrap();
        assert_eq!(r.residue, Matrix::diagonal(&[rat(5, 6), rat(7, 6)]));
        assert!(r.certificate.gauge.agrees_mod(&MatSeries::identity(2), 8));
        assert!(check_gauge(&r.certificate));
        let one = MatSeries::exact([(1, Matrix::diagonal(&[rat(1, 2)]))]);
        assert_eq!(moser_rank_reduce(&one, 1, 4).unwrap().residue, Matrix::diagonal(&[rat(1, 2)]));
    }

    #[test]
    fn nilpotent_constant_term() {
        let b = MatSeries::exact([(0, m(&[&[0, 1], &[0, 0]])), (1, m(&[&[0, 0], &[0, 1]]))]);
        let r = moser_rank_reduce(&b, 2, 8).unwrap();
        assert!(check_gauge(&r.certificate));
        let mut eig = crate::arith::factor::rational_roots(&r.residue.charpoly());
        eig.sort();
        // residues agree with {0, 0} modulo the integers
        assert!(eig.iter().all(|(q, _)| q.is_integer()));
        assert_eq!(eig.iter().map(|(_, k)| k).sum::<usize>(), 2);
    }

    #[test]
    fn irregular_block_is_reported() {
        // u²∂u = [[0,1],[u,0]] has slope 1/2
        let b = MatSeries::exact([(0, m(&[&[0, 1], &[0, 0]])), (1, m(&[&[0, 0], &[1, 0]]))]);
        assert!(matches!(moser_rank_reduce(&b, 2, 12), Err(Error::IrregularPart(_)) | Err(Error::InsufficientPrecision(_))));
    }
}
