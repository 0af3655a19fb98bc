//! Splitting `u²∂u = B` along the generalized eigenspaces of `B(0)`.

use std::sync::Arc;

use super::gauge::GaugeCertificate;
use crate::arith::factor::factor_rational;
use crate::arith::field::{Field, FieldElem, NumberField, Rational};
use crate::arith::matrix::{Matrix, Sylvester};
use crate::arith::series::MatSeries;
use crate::arith::upoly::UniPoly;
use crate::error::{Error, Result};

/// One factor `p^m` of the characteristic polynomial of `B(0)` with the
/// block of size `m·deg p` it cuts out.
#[derive(Clone, Debug)]
pub struct RationalBlock {
    pub minpoly: UniPoly<Rational>,
    pub multiplicity: usize,
    pub block: MatSeries<Rational>,
    pub dim: usize,
}

/// Columns spanning `ker q_i(M)^{m_i}` for each factor, side by side.
pub fn adapted_basis<F: Field>(m: &Matrix<F>, factors: &[(UniPoly<F>, usize)]) -> Result<(Matrix<F>, Vec<usize>)> {
    let mut cols = Vec::new();
    let mut sizes = Vec::new();
    for (q, mult) in factors {
        let k = q.pow(*mult).eval_matrix(m).nullspace();
        sizes.push(k.cols());
        cols.push(k);
    }
    let p = Matrix::hstack(&cols);
    if p.cols() != m.rows() {
        return Err(Error::Precondition("generalized eigenspaces do not span".into()));
    }
    Ok((p, sizes))
}

fn conjugate_constant<F: Field>(b: &MatSeries<F>, p: &Matrix<F>, pinv: &Matrix<F>) -> MatSeries<F> {
    MatSeries::new(b.terms().map(|(k, c)| (k, &(pinv * c) * p)), b.order())
}

/// Removes the off-diagonal blocks of a series whose constant term is
/// block diagonal with pairwise disjoint block spectra. Returns the gauge
/// `I + Σ G_k u^k` (exact, degree below `n`) and the diagonal blocks mod `u^n`.
pub fn decouple<F: Field>(
    b: &MatSeries<F>,
    dim: usize,
    sizes: &[usize],
    n: i64,
) -> Result<(MatSeries<F>, Vec<MatSeries<F>>)> {
    let offs: Vec<usize> = sizes.iter().scan(0, |acc, &s| { let o = *acc; *acc += s; Some(o) }).collect();
    let nb = sizes.len();
    let blk = |m: &Matrix<F>, a: usize, c: usize| m.submatrix(offs[a], offs[a] + sizes[a], offs[c], offs[c] + sizes[c]);
    let b0 = b.coeff_or_zero(0, dim);
    let mut solvers: Vec<Vec<Option<Sylvester<F>>>> = Vec::new();
    for a in 0..nb {
        let mut row = Vec::new();
        for c in 0..nb {
            row.push(if a == c {
                None
            } else {
                Some(Sylvester::new(&blk(&b0, a, a), &blk(&b0, c, c)).ok_or(Error::SingularSylvester)?)
            });
        }
        solvers.push(row);
    }

    let n_us = n.max(1) as usize;
    let bt: Vec<Matrix<F>> = (0..n_us as i64).map(|k| b.coeff_or_zero(k, dim)).collect();
    let mut g: Vec<Matrix<F>> = vec![Matrix::identity(dim)];
    let mut bp: Vec<Matrix<F>> = vec![b0.clone()];
    for k in 1..n_us {
        let mut c = bt[k].clone();
        for i in 1..k {
            if !bt[k - i].is_zero() && !g[i].is_zero() {
                c = c.add(&(&bt[k - i] * &g[i]));
            }
            if !g[i].is_zero() && !bp[k - i].is_zero() {
                c = c.sub(&(&g[i] * &bp[k - i]));
            }
        }
        if k >= 2 {
            c = c.add(&g[k - 1].scale(&F::from_int(k as i64 - 1)));
        }
        let mut gk = Matrix::zeros(dim, dim);
        let mut bk = Matrix::zeros(dim, dim);
        for a in 0..nb {
            for d in 0..nb {
                let cad = blk(&c, a, d);
                if a == d {
                    bk.set_block(offs[a], offs[a], &cad);
                } else if !cad.is_zero() {
                    let x = solvers[a][d].as_ref().unwrap().solve(&cad.neg());
                    gk.set_block(offs[a], offs[d], &x);
                }
            }
        }
        g.push(gk);
        bp.push(bk);
    }
    let gauge = MatSeries::exact(g.into_iter().enumerate().map(|(k, m)| (k as i64, m)));
    let order = crate::arith::series::min_order(Some(n), b.order());
    let blocks = (0..nb)
        .map(|a| MatSeries::new(bp.iter().enumerate().map(|(k, m)| (k as i64, blk(m, a, a))), order))
        .collect();
    Ok((gauge, blocks))
}

/// Splits `B` over the rationals, one block per irreducible factor of the
/// characteristic polynomial of `B(0)`.
pub fn split_by_exponential_parts(
    b: &MatSeries<Rational>,
    dim: usize,
    n: i64,
) -> Result<(Vec<RationalBlock>, GaugeCertificate<Rational>)> {
    if n < 2 {
        return Err(Error::Precondition("truncation order below 2".into()));
    }
    if dim == 0 {
        return Ok((Vec::new(), GaugeCertificate::identity("split", b, 0, n)));
    }
    let b0 = b.coeff_or_zero(0, dim);
    let factors = factor_rational(&b0.charpoly());
    if factors.len() == 1 {
        let (p, m) = factors.into_iter().next().unwrap();
        let block = b.truncate(n);
        let cert = GaugeCertificate::identity("split", b, dim, n);
        return Ok((vec![RationalBlock { minpoly: p, multiplicity: m, block, dim }], cert));
    }
    let (p, sizes) = adapted_basis(&b0, &factors)?;
    let pinv = p.inverse().ok_or_else(|| Error::Precondition("adapted basis is singular".into()))?;
    let bt = conjugate_constant(b, &p, &pinv);
    let (g, blocks) = decouple(&bt, dim, &sizes, n)?;
    let total = MatSeries::constant(p).mul(&g);
    let target = block_diag_series(&blocks, &sizes, n);
    let cert = GaugeCertificate { stage: "split", dim, gauge: total, source: b.clone(), target, order: n, inverse: None };
    let parts = factors
        .into_iter()
        .zip(blocks)
        .zip(sizes)
        .map(|(((minpoly, multiplicity), block), dim)| RationalBlock { minpoly, multiplicity, block, dim })
        .collect();
    Ok((parts, cert))
}

pub fn block_diag_series<F: Field>(blocks: &[MatSeries<F>], sizes: &[usize], n: i64) -> MatSeries<F> {
    let dim: usize = sizes.iter().sum();
    let mut keys = std::collections::BTreeSet::new();
    let mut order = None;
    for b in blocks {
        keys.extend(b.terms().map(|(k, _)| k));
        order = crate::arith::series::min_order(order, b.order());
    }
    let order = crate::arith::series::min_order(order, Some(n));
    let terms = keys.into_iter().map(|k| {
        let mut m = Matrix::zeros(dim, dim);
        let mut off = 0;
        for (b, &s) in blocks.iter().zip(sizes) {
            m.set_block(off, off, &b.coeff_or_zero(k, s));
            off += s;
        }
        (k, m)
    });
    MatSeries::new(terms, order)
}

pub fn lift(b: &MatSeries<Rational>) -> MatSeries<FieldElem> {
    b.map(|m| m.map(|q| FieldElem::rational(q.clone())))
}

/// The part of an irreducible block belonging to the root `a` of its
/// minimal polynomial, over `Q(a)`.
pub fn split_root(block: &RationalBlock, n: i64) -> Result<(Arc<NumberField>, MatSeries<FieldElem>, GaugeCertificate<FieldElem>)> {
    let field = NumberField::new(&block.minpoly)?;
    let a = field.generator();
    let lifted = lift(&block.block);
    let dim = block.dim;
    let m = block.multiplicity;
    let p = block.minpoly.map(|q| FieldElem::rational(q.clone()));
    let lin = UniPoly::linear(a.clone());
    let (rest, rem) = p.div_rem(&lin);
    debug_assert!(rem.is_zero());
    let b0 = lifted.coeff_or_zero(0, dim);
    let (pm, sizes) = adapted_basis(&b0, &[(lin, m), (rest, m)])?;
    let pinv = pm.inverse().ok_or_else(|| Error::Precondition("adapted basis is singular".into()))?;
    let bt = conjugate_constant(&lifted, &pm, &pinv);
    let (g, blocks) = decouple(&bt, dim, &sizes, n)?;
    let total = MatSeries::constant(pm).mul(&g);
    let target = block_diag_series(&blocks, &sizes, n);
    let cert = GaugeCertificate { stage: "split-root", dim, gauge: total, source: lifted, target, order: n, inverse: None };
    Ok((field, blocks.into_iter().next().unwrap(), cert))
}

/// `B − t₀·I` at `u⁰`; the constant term must become nilpotent.
pub fn remove_exponential_twist<F: Field>(block: &MatSeries<F>, dim: usize, t0: &F) -> Result<MatSeries<F>> {
    let shift = MatSeries::constant(Matrix::scalar(dim, t0.clone()));
    let out = block.sub(&shift);
    if !out.coeff_or_zero(0, dim).is_nilpotent() {
        return Err(Error::Precondition(format!("constant term has an eigenvalue other than {t0}")));
    }
    Ok(out)
}
