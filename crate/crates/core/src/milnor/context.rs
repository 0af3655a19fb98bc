use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;

use super::groebner::{buchberger, combine, GBasis};
use crate::arith::factor::factor_rational;
use crate::arith::field::Rational;
use crate::arith::matrix::Matrix;
use crate::arith::poly::{mono_degree, mono_divides, Monomial, MonomialOrder, MultiPoly};
use crate::arith::upoly::UniPoly;
use crate::error::{Error, Result};

/// `g = nf + Σ cofactors[i]·∂_{i+1} f`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm {
    pub nf: MultiPoly,
    pub cofactors: Vec<MultiPoly>,
}

#[derive(Clone, Debug)]
pub struct JacobianContext {
    f: MultiPoly,
    partials: Vec<MultiPoly>,
    gb: GBasis,
    standard: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// One irreducible factor of the characteristic polynomial of
/// multiplication by `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPart {
    pub minpoly: UniPoly<Rational>,
    pub multiplicity: usize,
}

impl CriticalPart {
    /// The critical value itself when it is rational.
    pub fn rational_value(&self) -> Option<Rational> {
        (self.minpoly.degree() == Some(1)).then(|| -self.minpoly.coeff(0))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }
}

pub type CriticalParts = Vec<CriticalPart>;

impl JacobianContext {
    pub fn new(f: MultiPoly, order: &MonomialOrder) -> Result<Self> {
        let n = f.nvars();
        if n == 0 {
            return Err(Error::Precondition("polynomial ring has no variables".into()));
        }
        let partials: Vec<MultiPoly> = (0..n).map(|v| f.partial(v)).collect();
        let gb = buchberger(&partials, order);
        if !gb.is_zero_dimensional() {
            let leads: Vec<String> = gb
                .leading_monomials()
                .iter()
                .map(|m| MultiPoly::monomial(n, m.clone(), Rational::from_integer(1.into())).to_string())
                .collect();
            let free: Vec<String> = (0..n)
                .filter(|&i| {
                    !gb.leading_monomials().iter().any(|m| m.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
                })
                .map(|i| crate::arith::poly::variable_names(n)[i].clone())
                .collect();
            return Err(Error::NotZeroDimensional(format!(
                "leading terms [{}] bound no power of {}",
                leads.join(", "),
                free.join(", ")
            )));
        }
        let standard = if gb.is_unit_ideal() { Vec::new() } else { enumerate_standard(gb.leading_monomials(), n, order) };
        let index = standard.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(JacobianContext { f, partials, gb, standard, index })
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn partials(&self) -> &[MultiPoly] {
        &self.partials
    }

    pub fn groebner(&self) -> &GBasis {
        &self.gb
    }

    pub fn order(&self) -> &MonomialOrder {
        self.gb.order()
    }

    /// Standard monomials, ascending in the monomial order.
    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn milnor_number(&self) -> usize {
        self.standard.len()
    }

    pub fn normal_form(&self, g: &MultiPoly) -> NormalForm {
        let d = self.gb.divide(g);
        let mut cofactors = d.cofactors;
        let bound = g.total_degree().unwrap_or(0);
        let too_high = cofactors
            .iter()
            .zip(&self.partials)
            .any(|(h, p)| !h.is_zero() && h.total_degree().unwrap() + p.total_degree().unwrap_or(0) > bound);
        if too_high {
            if let Some(better) = self.bounded_cofactors(&g.sub(&d.remainder), bound) {
                cofactors = better;
            }
        }
        let out = NormalForm { nf: d.remainder, cofactors };
        debug_assert!(self.check_normal_form(g, &out));
        out
    }

    /// `g − nf − Σ h_i ∂_i f = 0` and `nf` is supported on standard monomials.
    pub fn check_normal_form(&self, g: &MultiPoly, nf: &NormalForm) -> bool {
        let back = nf.nf.add(&combine(&nf.cofactors, &self.partials));
        back == *g && nf.nf.terms().all(|(m, _)| self.index.contains_key(m))
    }

    /// Solves `r = Σ h_i ∂_i f` with `deg(h_i ∂_i f) ≤ bound` by linear algebra.
    fn bounded_cofactors(&self, r: &MultiPoly, bound: u32) -> Option<Vec<MultiPoly>> {
        let n = self.nvars();
        let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
        for (i, p) in self.partials.iter().enumerate() {
            let Some(dp) = p.total_degree() else { continue };
            if p.is_zero() || dp > bound {
                continue;
            }
            for m in monomials_up_to(n, bound - dp) {
                unknowns.push((i, m));
            }
        }
        let rows: Vec<Monomial> = monomials_up_to(n, bound);
        let row_of: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut a = Matrix::<Rational>::zeros(rows.len(), unknowns.len());
        for (col, (i, m)) in unknowns.iter().enumerate() {
            for (e, c) in self.partials[*i].terms() {
                let mm: Monomial = e.iter().zip(m).map(|(x, y)| x + y).collect();
                a[(row_of[&mm], col)] = c.clone();
            }
        }
        let mut b = Matrix::<Rational>::zeros(rows.len(), 1);
        for (e, c) in r.terms() {
            b[(*row_of.get(e)?, 0)] = c.clone();
        }
        let x = a.solve(&b)?;
        let mut out = vec![MultiPoly::zero(n); n];
        for (col, (i, m)) in unknowns.iter().enumerate() {
            out[*i].add_term(m.clone(), x[(col, 0)].clone());
        }
        Some(out)
    }

    /// Coordinates of a normal form on the standard monomials.
    pub fn coordinates(&self, nf: &MultiPoly) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.milnor_number()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn standard_index(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn basis_poly(&self, alpha: usize) -> MultiPoly {
        MultiPoly::monomial(self.nvars(), self.standard[alpha].clone(), Rational::from_integer(1.into()))
    }

    /// Matrix of multiplication by `g` on the quotient algebra.
    pub fn mult_matrix(&self, g: &MultiPoly) -> Matrix<Rational> {
        let mu = self.milnor_number();
        let mut out = Matrix::zeros(mu, mu);
        for alpha in 0..mu {
            let prod = g.mul(&self.basis_poly(alpha));
            let coords = self.coordinates(&self.gb.remainder(&prod));
            for (beta, c) in coords.into_iter().enumerate() {
                out[(beta, alpha)] = c;
            }
        }
        out
    }

    pub fn critical_parts(&self) -> CriticalParts {
        if self.milnor_number() == 0 {
            return Vec::new();
        }
        let chi = self.mult_matrix(&self.f).charpoly();
        let mut parts: CriticalParts = factor_rational(&chi)
            .into_iter()
            .map(|(minpoly, multiplicity)| CriticalPart { minpoly, multiplicity })
            .collect();
        parts.sort_by(|a, b| match (a.rational_value(), b.rational_value()) {
            (Some(x), Some(y)) => x.cmp(&y),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => std::cmp::Ordering::Equal,
        });
        parts
    }
}

fn enumerate_standard(leading: &[Monomial], n: usize, order: &MonomialOrder) -> Vec<Monomial> {
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![vec![0u32; n]];
    while let Some(m) = frontier.pop() {
        if seen.contains(&m) || leading.iter().any(|l| mono_divides(l, &m)) {
            continue;
        }
        for i in 0..n {
            let mut next = m.clone();
            next[i] += 1;
            frontier.push(next);
        }
        seen.insert(m);
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| order.cmp(a, b));
    out
}

/// All exponent vectors of total degree at most `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_by_key(|m| mono_degree(m));
    out
}
