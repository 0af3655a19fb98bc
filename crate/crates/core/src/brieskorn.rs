//! Top twisted de Rham cohomology in the standard-monomial basis and the
//! matrix of `u²∇_∂u`.
//!
//! A top form `g dx` is rewritten with `g = nf + Σ h_i ∂_i f` and
//! `[Σ h_i ∂_i f dx] = u [Σ ∂_i h_i dx]`, until nothing is left.

use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::arith::field::Rational;
use crate::arith::matrix::Matrix;
use crate::arith::poly::{mono_degree, MultiPoly};
use crate::arith::series::MatSeries;
use crate::arith::upoly::UniPoly;
use crate::error::{Error, Result};
use crate::milnor::context::monomials_up_to;
use crate::milnor::JacobianContext;

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep {
    pub g: MultiPoly,
    pub nf: MultiPoly,
    pub cofactors: Vec<MultiPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedClass {
    pub coordinates: Vec<UniPoly<Rational>>,
    pub certificate: Vec<ReductionStep>,
}

/// `Σ_i ∂_i h_i`.
fn divergence(h: &[MultiPoly], nvars: usize) -> MultiPoly {
    h.iter().enumerate().fold(MultiPoly::zero(nvars), |acc, (i, hi)| acc.add(&hi.partial(i)))
}

fn accumulate(coords: &mut [Vec<Rational>], k: usize, values: Vec<Rational>) {
    for (c, v) in coords.iter_mut().zip(values) {
        if c.len() <= k {
            c.resize(k + 1, Rational::zero());
        }
        c[k] += v;
    }
}

pub fn reduce_top_form(g: &MultiPoly, ctx: &JacobianContext) -> Result<ReducedClass> {
    let mu = ctx.milnor_number();
    if mu == 0 {
        return Ok(ReducedClass { coordinates: Vec::new(), certificate: Vec::new() });
    }
    let n = ctx.nvars();
    let mut coords: Vec<Vec<Rational>> = vec![Vec::new(); mu];
    let mut steps = Vec::new();
    let mut cur = g.clone();
    let mut k = 0;
    while !cur.is_zero() {
        let nf = ctx.normal_form(&cur);
        accumulate(&mut coords, k, ctx.coordinates(&nf.nf));
        let next = divergence(&nf.cofactors, n);
        let from = cur.total_degree().unwrap() as usize;
        if let Some(to) = next.total_degree() {
            if to as usize >= from {
                return Err(Error::NonTameReduction { from, to: to as usize });
            }
        }
        steps.push(ReductionStep { g: cur, nf: nf.nf, cofactors: nf.cofactors });
        cur = next;
        k += 1;
    }
    Ok(ReducedClass { coordinates: coords.into_iter().map(UniPoly::new).collect(), certificate: steps })
}

/// Reduces `Σ_k u^k g_k dx`.
pub fn reduce_u_form(gs: &[MultiPoly], ctx: &JacobianContext) -> Result<Vec<UniPoly<Rational>>> {
    let mut out = vec![UniPoly::zero(); ctx.milnor_number()];
    for (k, g) in gs.iter().enumerate() {
        let class = reduce_top_form(g, ctx)?;
        let shift = UniPoly::monomial(Rational::from_integer(1.into()), k);
        for (o, c) in out.iter_mut().zip(class.coordinates) {
            *o = o.clone() + &(c * &shift);
        }
    }
    Ok(out)
}

pub fn verify_reduction_certificate(g: &MultiPoly, class: &ReducedClass, ctx: &JacobianContext) -> bool {
    let mu = ctx.milnor_number();
    if mu == 0 {
        return class.coordinates.is_empty() && class.certificate.is_empty();
    }
    if class.coordinates.len() != mu {
        return false;
    }
    let n = ctx.nvars();
    let mut coords: Vec<Vec<Rational>> = vec![Vec::new(); mu];
    let mut cur = g.clone();
    let mut last_degree: Option<u32> = None;
    for (k, step) in class.certificate.iter().enumerate() {
        if step.g != cur || step.cofactors.len() != n {
            return false;
        }
        let nf = crate::milnor::NormalForm { nf: step.nf.clone(), cofactors: step.cofactors.clone() };
        if !ctx.check_normal_form(&cur, &nf) {
            return false;
        }
        let d = cur.total_degree();
        if last_degree.is_some_and(|l| d.is_none_or(|d| d >= l)) {
            return false;
        }
        last_degree = d;
        accumulate(&mut coords, k, ctx.coordinates(&step.nf));
        cur = divergence(&step.cofactors, n);
    }
    cur.is_zero()
        && coords.into_iter().map(UniPoly::new).zip(&class.coordinates).all(|(a, b)| &a == b)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionMatrix {
    /// Exact `B(u)`, with `u²∇_∂u e_α = Σ_β B_{βα} e_β`.
    pub matrix: MatSeries<Rational>,
    pub dim: usize,
    /// Printed standard monomials.
    pub labels: Vec<String>,
}

impl ConnectionMatrix {
    pub fn new(matrix: MatSeries<Rational>, dim: usize) -> Self {
        ConnectionMatrix { matrix, dim, labels: (0..dim).map(|i| format!("e{}", i + 1)).collect() }
    }

    pub fn coeff(&self, k: i64) -> Matrix<Rational> {
        self.matrix.coeff_or_zero(k, self.dim)
    }

    /// Pole order of `∇_∂u` minus one; always at most one here.
    pub fn poincare_rank(&self) -> usize {
        if self.coeff(0).is_zero() {
            0
        } else {
            1
        }
    }

    /// Highest power of `u` present.
    pub fn degree(&self) -> i64 {
        self.matrix.top_exponent().unwrap_or(0)
    }
}

/// `B` together with the reduction certificate of every column.
pub fn connection_matrix_certified(ctx: &JacobianContext) -> Result<(ConnectionMatrix, Vec<ReducedClass>)> {
    let mu = ctx.milnor_number();
    let columns: Vec<ReducedClass> = (0..mu)
        .into_par_iter()
        .map(|alpha| reduce_top_form(&ctx.f().mul(&ctx.basis_poly(alpha)), ctx))
        .collect::<Result<_>>()?;
    let top = columns.iter().flat_map(|c| c.coordinates.iter()).filter_map(UniPoly::degree).max().unwrap_or(0);
    let coeffs: Vec<Matrix<Rational>> = (0..=top)
        .map(|k| Matrix::from_fn(mu, mu, |beta, alpha| columns[alpha].coordinates[beta].coeff(k)))
        .collect();
    let mut b = ConnectionMatrix::new(MatSeries::from_coeffs(coeffs), mu);
    let names = crate::arith::poly::variable_names(ctx.nvars());
    b.labels = (0..mu).map(|a| ctx.basis_poly(a).to_string_with(&names)).collect();
    Ok((b, columns))
}

pub fn connection_matrix(ctx: &JacobianContext) -> Result<ConnectionMatrix> {
    Ok(connection_matrix_certified(ctx)?.0)
}

/// Random polynomial with support in degree `≤ d` and small rational
/// coefficients, roughly half of the monomials present.
pub fn random_poly(rng: &mut impl Rng, nvars: usize, d: u32) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    for m in monomials_up_to(nvars, d) {
        if rng.gen_bool(0.5) {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=4);
            p.add_term(m, Rational::new(num.into(), den.into()));
        }
    }
    p
}

/// The top coefficient of `(u·d − df∧)η` for `η = Σ (−1)^{i−1} η_i dx_1..dx̂_i..dx_n`
/// reduces to zero. Returns the reduced coordinates for inspection.
pub fn kill_test_coordinates(eta: &[MultiPoly], ctx: &JacobianContext) -> Result<Vec<UniPoly<Rational>>> {
    let n = ctx.nvars();
    let du = divergence(eta, n);
    let df = eta.iter().zip(ctx.partials()).fold(MultiPoly::zero(n), |acc, (e, p)| acc.add(&e.mul(p)));
    reduce_u_form(&[df.neg(), du], ctx)
}

pub fn exactness_kill_test(ctx: &JacobianContext, rng: &mut impl Rng, degree: u32) -> Result<bool> {
    let eta: Vec<MultiPoly> = (0..ctx.nvars()).map(|_| random_poly(rng, ctx.nvars(), degree)).collect();
    Ok(kill_test_coordinates(&eta, ctx)?.iter().all(UniPoly::is_zero))
}

/// Largest total degree among the monomials `f·m_α` that get reduced.
pub fn working_degree(ctx: &JacobianContext) -> u32 {
    let df = ctx.f().total_degree().unwrap_or(0);
    ctx.standard_monomials().iter().map(|m| mono_degree(m) + df).max().unwrap_or(0)
}
