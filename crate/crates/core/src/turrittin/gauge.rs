use crate::arith::field::Field;
use crate::arith::series::MatSeries;
use crate::error::{Error, Result};

/// A change of basis `G(u)` taking `source` to `target`, claimed modulo
/// `u^order`, for the system `u²∂u = B`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeCertificate<F> {
    pub stage: &'static str,
    pub dim: usize,
    pub gauge: MatSeries<F>,
    pub source: MatSeries<F>,
    pub target: MatSeries<F>,
    pub order: i64,
    /// An exact two-sided inverse of an exact `gauge`, when one is known.
    pub inverse: Option<MatSeries<F>>,
}

/// `G⁻¹BG + u²G⁻¹G′`, known at least modulo `u^n`.
pub fn gauge_transform<F: Field>(b: &MatSeries<F>, g: &MatSeries<F>, dim: usize, n: i64) -> Result<MatSeries<F>> {
    if dim == 0 {
        return Ok(MatSeries::zero_exact());
    }
    let inner = b.mul(g).add(&g.derivative().shift(2));
    let mut extra = dim as i64 + 2;
    for _ in 0..6 {
        let ginv = g.inv_laurent(dim, n + extra)?;
        let out = ginv.mul(&inner);
        if out.order().is_none_or(|o| o >= n) {
            return Ok(out.truncate(n));
        }
        extra *= 2;
    }
    Err(Error::InsufficientPrecision(format!("gauge transform below u^{n}")))
}

impl<F: Field> GaugeCertificate<F> {
    pub fn identity(stage: &'static str, b: &MatSeries<F>, dim: usize, order: i64) -> Self {
        GaugeCertificate {
            stage,
            dim,
            gauge: MatSeries::identity(dim),
            source: b.clone(),
            target: b.truncate(order),
            order,
            inverse: None,
        }
    }
}

/// Replays the certificate exactly. When `G(0)` is invertible the claim is
/// equivalent to `G·target ≡ B·G + u²G′ mod u^N`, which needs no inverse.
pub fn check_gauge<F: Field>(cert: &GaugeCertificate<F>) -> bool {
    if cert.dim == 0 {
        return true;
    }
    let g = &cert.gauge;
    if g.valuation_bound().is_none_or(|v| v >= 0) && g.coeff_or_zero(0, cert.dim).inverse().is_some() {
        let n = cert.order;
        if cert.target.order().is_some_and(|o| o < n) || cert.source.order().is_some_and(|o| o < n) {
            return false;
        }
        let lhs = g.mul(&cert.target.truncate(n));
        let rhs = cert.source.truncate(n).mul(g).add(&g.derivative().shift(2));
        return lhs.agrees_mod(&rhs, n);
    }
    if let Some(h) = &cert.inverse {
        if !g.is_exact() || !h.is_exact() {
            return false;
        }
        let id = MatSeries::identity(cert.dim);
        if !g.mul(h).agrees_mod(&id, i64::MAX) || !h.mul(g).agrees_mod(&id, i64::MAX) {
            return false;
        }
        let out = h.mul(&cert.source.mul(g).add(&g.derivative().shift(2)));
        return out.order().is_none_or(|o| o >= cert.order) && out.agrees_mod(&cert.target, cert.order);
    }
    match gauge_transform(&cert.source, &cert.gauge, cert.dim, cert.order) {
        Ok(t) => t.agrees_mod(&cert.target, cert.order),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, Rational};
    use crate::arith::matrix::Matrix;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn lattice_gauge_by_hand() {
        // [[0,1],[0,u]] under diag(1,u) becomes [[0,u],[0,2u]]
        let b = MatSeries::exact([(0, m(&[&[0, 1], &[0, 0]])), (1, m(&[&[0, 0], &[0, 1]]))]);
        let g = MatSeries::exact([(0, m(&[&[1, 0], &[0, 0]])), (1, m(&[&[0, 0], &[0, 1]]))]);
        let target = MatSeries::exact([(1, m(&[&[0, 1], &[0, 2]]))]);
        let mut cert = GaugeCertificate { stage: "lattice", dim: 2, gauge: g, source: b, target, order: 8, inverse: None };
        assert!(check_gauge(&cert));
        cert.gauge = cert.gauge.add(&MatSeries::exact([(0, m(&[&[1, 0], &[0, 0]]))]));
        assert!(!check_gauge(&cert));
    }

    #[test]
    fn identity_gauge() {
        let b = MatSeries::exact([(0, m(&[&[3, 1], &[0, 3]])), (1, m(&[&[1, 0], &[2, 1]]))]);
        assert!(check_gauge(&GaugeCertificate::identity("split", &b, 2, 10)));
    }
}
