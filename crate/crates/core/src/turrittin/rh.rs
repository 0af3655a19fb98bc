use super::datum::{MonodromyDatum, PartDatum};
use crate::arith::field::{int, Rational};
use crate::arith::matrix::Matrix;
use crate::arith::series::MatSeries;
use crate::brieskorn::ConnectionMatrix;

/// Residues of one part on the diagonal, with ones above it inside each
/// Jordan block.
fn residue_matrix(p: &PartDatum) -> Matrix<Rational> {
    let r = p.part.rank;
    let mut m = Matrix::zeros(r, r);
    let mut at = 0;
    for (q, &mult) in &p.residues {
        let sizes = p
            .jordan
            .as_ref()
            .and_then(|j| j.get(q).cloned())
            .unwrap_or_else(|| vec![1; mult]);
        for s in sizes {
            for i in 0..s {
                m[(at + i, at + i)] = q.clone();
                if i + 1 < s {
                    m[(at + i, at + i + 1)] = int(1);
                }
            }
            at += s;
        }
    }
    m
}

fn companion(p: &crate::arith::upoly::UniPoly<Rational>) -> Matrix<Rational> {
    let d = p.degree().unwrap_or(0);
    let mut c = Matrix::zeros(d, d);
    for i in 1..d {
        c[(i, i - 1)] = int(1);
    }
    for i in 0..d {
        c[(i, d - 1)] = -p.coeff(i).clone();
    }
    c
}

/// The model connection of a datum: per part `t₀·I + u·M`, or
/// `C(p)⊗I + u·(I⊗M)` over the rationals for an irrational `t₀`.
pub fn rh_inverse(datum: &MonodromyDatum) -> ConnectionMatrix {
    let mut b0 = Vec::new();
    let mut b1 = Vec::new();
    for p in &datum.parts {
        let m = residue_matrix(p);
        let c = companion(&p.part.minpoly);
        let d = c.rows();
        b0.push(c.kron(&Matrix::identity(p.part.rank)));
        b1.push(Matrix::identity(d).kron(&m));
    }
    let dim = datum.total_rank();
    let terms = [(0, Matrix::block_diag(&b0)), (1, Matrix::block_diag(&b1))]
        .into_iter()
        .filter(|(_, m)| !m.is_zero());
    ConnectionMatrix::new(MatSeries::exact(terms), dim)
}
