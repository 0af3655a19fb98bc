use std::collections::BTreeMap;

use rayon::prelude::*;

use super::datum::{datum_equal, ExponentialPart, MonodromyDatum, PartDatum};
use super::gauge::{check_gauge, GaugeCertificate};
use super::moser::moser_rank_reduce;
use super::residues::{jordan_partition, normalize_residues, Normalized};
use super::split::{remove_exponential_twist, split_by_exponential_parts, split_root, RationalBlock};
use crate::arith::field::{Field, FieldElem, Rational};
use crate::brieskorn::ConnectionMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Certificate {
    Rational(GaugeCertificate<Rational>),
    Extension(GaugeCertificate<FieldElem>),
}

impl Certificate {
    pub fn check(&self) -> bool {
        match self {
            Certificate::Rational(c) => check_gauge(c),
            Certificate::Extension(c) => check_gauge(c),
        }
    }

    pub fn stage(&self) -> &'static str {
        match self {
            Certificate::Rational(c) => c.stage,
            Certificate::Extension(c) => c.stage,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub datum: MonodromyDatum,
    pub certificates: Vec<Certificate>,
    /// Truncation order at which the datum was taken.
    pub trunc: i64,
}

impl Extraction {
    pub fn certificates_ok(&self) -> bool {
        self.certificates.par_iter().all(Certificate::check)
    }
}

pub fn default_truncation(mu: usize) -> i64 {
    4 * mu as i64 + 4
}

pub fn truncation_cap(mu: usize) -> i64 {
    16 * mu as i64 + 16
}

fn part_datum<F: Field>(part: ExponentialPart, norm: &Normalized<F>, jordan: bool) -> PartDatum {
    let mut datum = PartDatum::new(
        part,
        norm.eigenvalues.iter().flat_map(|(q, m)| std::iter::repeat_n(q.clone(), *m)),
    );
    if jordan {
        let map: BTreeMap<Rational, Vec<usize>> = norm
            .eigenvalues
            .iter()
            .map(|(q, m)| (q.clone(), jordan_partition(&norm.residue, q, *m)))
            .collect();
        datum.jordan = Some(map);
    }
    datum
}

fn rational_part(block: &RationalBlock, n: i64, jordan: bool) -> Result<(PartDatum, Vec<Certificate>)> {
    let t0 = block.minpoly.coeff(0).clone();
    let t0 = -t0;
    let untwisted = remove_exponential_twist(&block.block, block.dim, &t0)?;
    let moser = moser_rank_reduce(&untwisted, block.dim, n)?;
    let norm = normalize_residues(&moser.log_form, block.dim, n)?;
    let datum = part_datum(ExponentialPart::rational(t0, block.dim), &norm, jordan);
    Ok((datum, vec![Certificate::Rational(moser.certificate), Certificate::Rational(norm.certificate)]))
}

fn extension_part(block: &RationalBlock, n: i64, jordan: bool) -> Result<(PartDatum, Vec<Certificate>)> {
    let (field, root_block, cert) = split_root(block, n)?;
    let rank = block.multiplicity;
    let untwisted = remove_exponential_twist(&root_block, rank, &field.generator())?;
    let moser = moser_rank_reduce(&untwisted, rank, n)?;
    let norm = normalize_residues(&moser.log_form, rank, n)?;
    let datum = part_datum(ExponentialPart::new(block.minpoly.clone(), rank), &norm, jordan);
    Ok((
        datum,
        vec![
            Certificate::Extension(cert),
            Certificate::Extension(moser.certificate),
            Certificate::Extension(norm.certificate),
        ],
    ))
}

/// Split, untwist, reduce and normalize at one truncation order.
pub fn extract_at(b: &ConnectionMatrix, n: i64, jordan: bool) -> Result<Extraction> {
    let (blocks, split_cert) = split_by_exponential_parts(&b.matrix, b.dim, n)?;
    let results: Vec<(PartDatum, Vec<Certificate>)> = blocks
        .par_iter()
        .map(|blk| {
            if blk.minpoly.degree() == Some(1) {
                rational_part(blk, n, jordan)
            } else {
                extension_part(blk, n, jordan)
            }
        })
        .collect::<Result<_>>()?;
    let mut certificates = vec![Certificate::Rational(split_cert)];
    let mut parts = Vec::with_capacity(results.len());
    for (p, c) in results {
        parts.push(p);
        certificates.extend(c);
    }
    Ok(Extraction { datum: MonodromyDatum::new(parts), certificates, trunc: n })
}

/// Runs at `N` and `2N`, doubling until the two agree. Starts at
/// `4μ+4` unless `n` is given; gives up past `max(16μ+16, 4n)`.
pub fn extract_monodromy(b: &ConnectionMatrix, n: Option<i64>, jordan: bool) -> Result<Extraction> {
    let mu = b.dim;
    if mu == 0 {
        return Ok(Extraction { datum: MonodromyDatum::empty(), certificates: Vec::new(), trunc: n.unwrap_or_else(|| default_truncation(0)) });
    }
    let start = n.unwrap_or_else(|| default_truncation(mu));
    if start < 2 {
        return Err(Error::Precondition("truncation order below 2".into()));
    }
    let cap = truncation_cap(mu).max(4 * start);
    let mut n = start;
    let mut last_err: Option<Error> = None;
    while 2 * n <= cap {
        let (lo, hi) = rayon::join(|| extract_at(b, n, jordan), || extract_at(b, 2 * n, jordan));
        match (lo, hi) {
            (Ok(lo), Ok(hi)) if datum_equal(&lo.datum, &hi.datum) => return Ok(lo),
            (Err(e @ (Error::InsufficientPrecision(_) | Error::IrrationalResidue(_) | Error::IrregularPart(_))), _)
            | (_, Err(e @ (Error::InsufficientPrecision(_) | Error::IrrationalResidue(_) | Error::IrregularPart(_)))) => {
                last_err = Some(e)
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
            _ => {}
        }
        n *= 2;
    }
    match last_err {
        Some(e @ (Error::IrrationalResidue(_) | Error::IrregularPart(_))) => Err(e),
        _ => Err(Error::Unstable(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat};
    use crate::arith::matrix::Matrix;
    use crate::arith::series::MatSeries;

    fn conn(terms: Vec<(i64, Matrix<Rational>)>, dim: usize) -> ConnectionMatrix {
        ConnectionMatrix::new(MatSeries::exact(terms), dim)
    }

    fn part(t0: Rational, rs: &[Rational]) -> PartDatum {
        PartDatum::new(ExponentialPart::rational(t0, rs.len()), rs.iter().cloned())
    }

    #[test]
    fn examples() {
        let x2 = conn(vec![(1, Matrix::diagonal(&[rat(1, 2)]))], 1);
        let e = extract_monodromy(&x2, None, false).unwrap();
        assert!(datum_equal(&e.datum, &MonodromyDatum::new(vec![part(int(0), &[rat(1, 2)])])));
        assert!(e.certificates_ok());

        let cusp = conn(vec![(1, Matrix::diagonal(&[rat(5, 6), rat(7, 6)]))], 2);
        let e = extract_monodromy(&cusp, None, true).unwrap();
        assert!(datum_equal(&e.datum, &MonodromyDatum::new(vec![part(int(0), &[rat(5, 6), rat(1, 6)])])));
        assert!(e.datum.is_valid());

        let m = |a: i64, b: i64, c: i64, d: i64| Matrix::from_rows(vec![vec![int(a), int(b)], vec![int(c), int(d)]]);
        let cubic = conn(vec![(0, m(0, -2, -2, 0)), (1, Matrix::diagonal(&[rat(1, 3), rat(2, 3)]))], 2);
        let e = extract_monodromy(&cubic, None, false).unwrap();
        let want = MonodromyDatum::new(vec![part(int(-2), &[rat(1, 2)]), part(int(2), &[rat(1, 2)])]);
        assert!(datum_equal(&e.datum, &want));
        assert!(e.certificates_ok());
    }

    #[test]
    fn irrational_part() {
        // B(0) = [[0,2],[1,0]] has eigenvalues ±√2
        let b0 = Matrix::from_rows(vec![vec![int(0), int(2)], vec![int(1), int(0)]]);
        let b = conn(vec![(0, b0), (1, Matrix::diagonal(&[rat(1, 2), rat(1, 2)]))], 2);
        let e = extract_monodromy(&b, None, false).unwrap();
        assert_eq!(e.datum.parts.len(), 1);
        assert_eq!(e.datum.parts[0].part.degree(), 2);
        assert_eq!(e.datum.parts[0].part.rank, 1);
        assert_eq!(e.datum.total_rank(), 2);
        assert!(e.certificates_ok());
    }

    #[test]
    fn empty_connection() {
        let b = ConnectionMatrix::new(MatSeries::zero_exact(), 0);
        assert!(extract_monodromy(&b, None, false).unwrap().datum.is_empty());
    }
}
