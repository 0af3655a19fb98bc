//! Truncated Laurent series in the formal variable `u`.
//!
//! A `USeries` is known modulo `u^N` where `N` is carried in-band; `None`
//! marks an exact value (a Laurent polynomial). Every operation propagates
//! the smallest valid order so precision is never silently overstated.

use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Coefficient ring of a series: scalars or square matrices.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn is_zero_coeff(&self) -> bool;
    fn add_c(&self, other: &Self) -> Self;
    fn neg_c(&self) -> Self;
    fn mul_c(&self, other: &Self) -> Self;
    fn scale_int(&self, k: i64) -> Self;
}

impl<F: Field> Coeff for F {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, other: &Self) -> Self {
        self.clone() + other
    }
    fn neg_c(&self) -> Self {
        -self.clone()
    }
    fn mul_c(&self, other: &Self) -> Self {
        self.clone() * other
    }
    fn scale_int(&self, k: i64) -> Self {
        self.clone() * &F::from_int(k)
    }
}

impl<F: Field> Coeff for Matrix<F> {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn neg_c(&self) -> Self {
        self.neg()
    }
    fn mul_c(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale(&F::from_int(k))
    }
}

/// `min` where `None` stands for +infinity.
pub fn min_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_order(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct USeries<T> {
    terms: BTreeMap<i64, T>,
    order: Option<i64>,
}

pub type MatSeries<F> = USeries<Matrix<F>>;

impl<T: Coeff> USeries<T> {
    pub fn new(terms: impl IntoIterator<Item = (i64, T)>, order: Option<i64>) -> Self {
        let terms = terms
            .into_iter()
            .filter(|(k, c)| !c.is_zero_coeff() && order.is_none_or(|n| *k < n))
            .collect();
        USeries { terms, order }
    }

    pub fn exact(terms: impl IntoIterator<Item = (i64, T)>) -> Self {
        Self::new(terms, None)
    }

    pub fn zero_exact() -> Self {
        USeries { terms: BTreeMap::new(), order: None }
    }

    pub fn constant(c: T) -> Self {
        Self::exact([(0, c)])
    }

    pub fn monomial(c: T, k: i64) -> Self {
        Self::exact([(k, c)])
    }

    /// Exact polynomial from coefficients of `u^0, u^1, ...`.
    pub fn from_coeffs(cs: Vec<T>) -> Self {
        Self::exact(cs.into_iter().enumerate().map(|(k, c)| (k as i64, c)))
    }

    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Option<&T> {
        self.terms.get(&k)
    }

    /// Lowest stored exponent.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Highest stored exponent.
    pub fn top_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lower bound for the valuation: the lowest stored exponent, else the
    /// truncation order (`None` for the exact zero).
    pub fn valuation_bound(&self) -> Option<i64> {
        self.valuation().or(self.order)
    }

    /// No nonzero coefficient is known.
    pub fn is_zero_known(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncate(&self, n: i64) -> Self {
        Self::new(self.terms.clone(), min_order(self.order, Some(n)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = min_order(self.order, other.order);
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            match terms.get_mut(k) {
                Some(x) => *x = x.add_c(c),
                None => {
                    terms.insert(*k, c.clone());
                }
            }
        }
        Self::new(terms, order)
    }

    pub fn neg(&self) -> Self {
        USeries {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_c())).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product truncated at `min(N_a + v_b, N_b + v_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        if (self.is_exact() && self.is_zero_known()) || (other.is_exact() && other.is_zero_known()) {
            return Self::zero_exact();
        }
        let order = min_order(
            add_order(self.order, other.valuation_bound()),
            add_order(other.order, self.valuation_bound()),
        );
        let mut terms: BTreeMap<i64, T> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let k = i + j;
                if order.is_some_and(|n| k >= n) {
                    break;
                }
                let p = a.mul_c(b);
                match terms.get_mut(&k) {
                    Some(x) => *x = x.add_c(&p),
                    None => {
                        terms.insert(k, p);
                    }
                }
            }
        }
        Self::new(terms, order)
    }

    pub fn scale_left(&self, c: &T) -> Self {
        Self::new(self.terms.iter().map(|(k, x)| (*k, c.mul_c(x))), self.order)
    }

    pub fn scale_right(&self, c: &T) -> Self {
        Self::new(self.terms.iter().map(|(k, x)| (*k, x.mul_c(c))), self.order)
    }

    /// Multiplication by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        USeries {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            order: self.order.map(|n| n + k),
        }
    }

    /// `d/du`
    pub fn derivative(&self) -> Self {
        Self::new(
            self.terms.iter().map(|(k, c)| (k - 1, c.scale_int(*k))),
            self.order.map(|n| n - 1),
        )
    }

    pub fn map<S: Coeff>(&self, f: impl Fn(&T) -> S) -> USeries<S> {
        USeries::new(self.terms.iter().map(|(k, c)| (*k, f(c))), self.order)
    }

    /// Agreement on every exponent below `n` (both must be known there).
    pub fn agrees_mod(&self, other: &Self, n: i64) -> bool {
        if self.order.is_some_and(|o| o < n) || other.order.is_some_and(|o| o < n) {
            return false;
        }
        self.sub(other).terms.keys().all(|&k| k >= n)
    }
}

impl<F: Field> USeries<F> {
    /// Inverse modulo `u^n` of a series with invertible constant term.
    pub fn invert(&self, n: i64) -> Result<Self> {
        if self.valuation() != Some(0) {
            return Err(Error::NonUnit);
        }
        let a0_inv = self.terms[&0].try_inv().ok_or(Error::NonUnit)?;
        let n = min_order(Some(n), self.order).unwrap();
        let mut b: Vec<F> = Vec::with_capacity(n.max(0) as usize);
        for k in 0..n {
            let mut acc = if k == 0 { F::one() } else { F::zero() };
            for j in 1..=k {
                if let Some(aj) = self.terms.get(&j) {
                    acc = acc - &(aj.clone() * &b[(k - j) as usize]);
                }
            }
            b.push(acc * &a0_inv);
        }
        Ok(Self::new(b.into_iter().enumerate().map(|(k, c)| (k as i64, c)), Some(n)))
    }

    /// Inverse in the Laurent field, known modulo `u^target` when the input
    /// precision allows.
    pub fn inv_laurent(&self, target: i64) -> Result<Self> {
        let v = self.valuation().ok_or(Error::NonUnit)?;
        if self.is_exact() && self.terms.len() == 1 {
            let c = self.terms[&v].try_inv().ok_or(Error::NonUnit)?;
            return Ok(Self::monomial(c, -v));
        }
        let unit = self.shift(-v);
        let rel = min_order(Some(target + v), unit.order).unwrap();
        Ok(unit.invert(rel)?.shift(-v))
    }
}

impl<F: Field> MatSeries<F> {
    pub fn identity(n: usize) -> Self {
        Self::constant(Matrix::identity(n))
    }

    pub fn constant_matrix(m: Matrix<F>) -> Self {
        Self::constant(m)
    }

    /// Side length, taken from any stored coefficient.
    pub fn dim(&self) -> Option<usize> {
        self.terms.values().next().map(Matrix::rows)
    }

    pub fn coeff_or_zero(&self, k: i64, n: usize) -> Matrix<F> {
        self.coeff(k).cloned().unwrap_or_else(|| Matrix::zeros(n, n))
    }

    /// Entry `(i, j)` as a scalar series.
    pub fn entry(&self, i: usize, j: usize) -> USeries<F> {
        USeries::new(self.terms.iter().map(|(k, m)| (*k, m[(i, j)].clone())), self.order)
    }

    pub fn from_entries(entries: &[Vec<USeries<F>>]) -> Self {
        let n = entries.len();
        let m = entries.first().map_or(0, Vec::len);
        let mut order = None;
        let mut keys = std::collections::BTreeSet::new();
        for row in entries {
            for e in row {
                order = min_order(order, e.order);
                keys.extend(e.terms.keys().copied());
            }
        }
        let terms = keys.into_iter().map(|k| {
            (k, Matrix::from_fn(n, m, |i, j| entries[i][j].coeff(k).cloned().unwrap_or_else(F::zero)))
        });
        Self::new(terms, order)
    }

    pub fn entries(&self, n: usize, m: usize) -> Vec<Vec<USeries<F>>> {
        (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| USeries::new(self.terms.iter().map(|(k, c)| (*k, c[(i, j)].clone())), self.order))
                    .collect()
            })
            .collect()
    }

    /// Inverse modulo `u^n` when the constant term is invertible.
    pub fn invert(&self, n: i64) -> Result<Self> {
        let dim = self.dim().ok_or(Error::NonUnit)?;
        if self.valuation() != Some(0) {
            return Err(Error::NonUnit);
        }
        let a0_inv = self.terms[&0].inverse().ok_or(Error::NonUnit)?;
        let n = min_order(Some(n), self.order).unwrap();
        let mut b: Vec<Matrix<F>> = Vec::new();
        for k in 0..n {
            let mut acc = if k == 0 { Matrix::identity(dim) } else { Matrix::zeros(dim, dim) };
            for j in 1..=k {
                if let Some(aj) = self.terms.get(&j) {
                    acc = acc.sub(&(aj * &b[(k - j) as usize]));
                }
            }
            b.push(&a0_inv * &acc);
        }
        Ok(Self::new(b.into_iter().enumerate().map(|(k, c)| (k as i64, c)), Some(n)))
    }

    /// Inverse over the Laurent field by Gauss–Jordan elimination with
    /// minimal-valuation pivots. Exact pivots are expanded up to `target`.
    pub fn inv_laurent(&self, n: usize, target: i64) -> Result<Self> {
        let mut a = self.entries(n, n);
        let mut inv: Vec<Vec<USeries<F>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { USeries::constant(F::one()) } else { USeries::zero_exact() })
                    .collect()
            })
            .collect();
        for c in 0..n {
            let pivot = (c..n)
                .filter(|&r| !a[r][c].is_zero_known())
                .min_by_key(|&r| a[r][c].valuation().unwrap())
                .ok_or_else(|| Error::InsufficientPrecision("singular gauge matrix".into()))?;
            a.swap(c, pivot);
            inv.swap(c, pivot);
            let p_inv = a[c][c].inv_laurent(target)?;
            for j in 0..n {
                a[c][j] = a[c][j].mul(&p_inv);
                inv[c][j] = inv[c][j].mul(&p_inv);
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero_known() {
                    continue;
                }
                let factor = a[r][c].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].sub(&factor.mul(&a[c][j]));
                    inv[r][j] = inv[r][j].sub(&factor.mul(&inv[c][j]));
                }
            }
        }
        Ok(Self::from_entries(&inv))
    }
}

impl<F: Field> fmt::Display for USeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(n) = self.order {
            write!(f, " + O(u^{n})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat, Rational};

    fn s(cs: &[i64], order: Option<i64>) -> USeries<Rational> {
        USeries::new(cs.iter().enumerate().map(|(k, &c)| (k as i64, int(c))), order)
    }

    #[test]
    fn exact_product() {
        let p = s(&[1, 1], None).mul(&s(&[1, -1], None));
        assert_eq!(p, s(&[1, 0, -1], None));
        assert!(p.is_exact());
    }

    #[test]
    fn truncation_bookkeeping() {
        let p = s(&[1], Some(2)).mul(&USeries::monomial(int(1), 1));
        assert_eq!(p.order(), Some(3));
        assert_eq!(p, USeries::new([(1, int(1))], Some(3)));
    }

    #[test]
    fn telescoping() {
        let geo = s(&[1; 6], Some(6));
        let p = geo.mul(&s(&[1, -1], None));
        assert_eq!(p, s(&[1], Some(6)));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(s(&[1, -1], None).invert(4).unwrap(), s(&[1, 1, 1, 1], Some(4)));
        let two_u = USeries::new([(0, int(2)), (1, int(1))], None);
        assert_eq!(
            two_u.invert(2).unwrap(),
            USeries::new([(0, rat(1, 2)), (1, rat(-1, 4))], Some(2))
        );
        assert_eq!(USeries::monomial(int(1), 1).invert(3), Err(Error::NonUnit));
    }

    #[test]
    fn laurent_inverse_of_monomial_is_exact() {
        let x = USeries::monomial(int(2), 3);
        assert_eq!(x.inv_laurent(10).unwrap(), USeries::monomial(rat(1, 2), -3));
    }

    #[test]
    fn matrix_laurent_inverse() {
        // diag(1, u) with an off-diagonal unit entry.
        let g = MatSeries::exact([
            (0, Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(0)]])),
            (1, Matrix::from_rows(vec![vec![int(0), int(0)], vec![int(0), int(1)]])),
        ]);
        let inv = g.inv_laurent(2, 8).unwrap();
        let prod = g.mul(&inv);
        assert!(prod.agrees_mod(&MatSeries::identity(2), 6));
    }
}
