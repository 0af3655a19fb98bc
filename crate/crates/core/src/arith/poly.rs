use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::field::{Field, Rational};
use crate::error::{Error, Result};

pub type Monomial = Vec<u32>;

pub fn mono_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

pub fn mono_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `b / a`, assuming `a | b`.
pub fn mono_quot(b: &[u32], a: &[u32]) -> Monomial {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    DegRevLex,
    DegLex,
}

/// A degree-compatible monomial order with a tie-break ranking of the
/// variables (`perm[0]` is the largest variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn degrevlex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::DegRevLex, perm: (0..n).collect() }
    }

    pub fn deglex(n: usize) -> Self {
        MonomialOrder { kind: OrderKind::DegLex, perm: (0..n).collect() }
    }

    pub fn with_perm(kind: OrderKind, perm: Vec<usize>) -> Result<Self> {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..perm.len()).collect::<Vec<_>>() {
            return Err(Error::Syntax { pos: 0, msg: "variable ranking is not a permutation".into() });
        }
        Ok(MonomialOrder { kind, perm })
    }

    pub fn from_name(name: &str, n: usize) -> Option<Self> {
        match name {
            "degrevlex" | "grevlex" | "drl" => Some(Self::degrevlex(n)),
            "deglex" | "grlex" => Some(Self::deglex(n)),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            OrderKind::DegRevLex => "degrevlex",
            OrderKind::DegLex => "deglex",
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let by_degree = mono_degree(a).cmp(&mono_degree(b));
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        match self.kind {
            OrderKind::DegRevLex => {
                for &v in self.perm.iter().rev() {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegLex => {
                for &v in &self.perm {
                    match a[v].cmp(&b[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Sparse multivariate polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<F = Rational> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> MultiPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: F) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    /// The variable `x_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, F::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u32]) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| mono_degree(m)).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = x.clone() + &c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c)).collect(),
        }
    }

    /// `c * x^m * self`
    pub fn mul_term(&self, m: &[u32], c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (mono_mul(e, m), x.clone() * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &other.terms {
            for (e, x) in &self.terms {
                out.add_term(mono_mul(e, m), x.clone() * c);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Partial derivative with respect to the variable of 1-based index `i`.
    pub fn differentiate(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars: self.nvars });
        }
        Ok(self.partial(i - 1))
    }

    /// Partial derivative, 0-based index.
    pub fn partial(&self, v: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[v] > 0 {
                let mut e = m.clone();
                e[v] -= 1;
                out.add_term(e, c.clone() * &F::from_int(m[v] as i64));
            }
        }
        out
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms in descending order.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &F)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| order.cmp(b.0, a.0));
        ts
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn eval(&self, point: &[F]) -> F {
        self.terms.iter().fold(F::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                for _ in 0..e {
                    t = t * x;
                }
            }
            acc + &t
        })
    }

    /// Coefficients in the single variable of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Vec<F> {
        assert_eq!(self.nvars, 1);
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![F::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m[0] as usize] = c.clone();
        }
        out
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let order = MonomialOrder::degrevlex(self.nvars);
        let mut out = String::new();
        for (m, c) in self.sorted_terms(&order) {
            let mut s = c.to_string();
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if s.contains(['+', '-', ' ']) {
                s = format!("({s})");
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { "-" } else { "+" });
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            if vars.is_empty() {
                out.push_str(&s);
            } else {
                if !c.is_one() && !(-c.clone()).is_one() {
                    out.push_str(&s);
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Default printed names: `x, y, z, w` up to four variables, else `x1..xn`.
pub fn variable_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&variable_names(self.nvars)))
    }
}

impl MultiPoly<Rational> {
    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(Rational::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::int;

    #[test]
    fn orders_are_degree_compatible() {
        let o = MonomialOrder::degrevlex(3);
        assert_eq!(o.cmp(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
        // x*z < y^2 in degrevlex, x*z > y^2 in deglex
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(MonomialOrder::deglex(3).cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Greater);
    }

    #[test]
    fn derivatives() {
        let x = MultiPoly::<Rational>::var(2, 0);
        let y = MultiPoly::<Rational>::var(2, 1);
        let f = x.pow(2).add(&y.pow(3));
        assert_eq!(f.differentiate(1).unwrap(), x.scale(&int(2)));
        assert_eq!(f.differentiate(2).unwrap(), y.pow(2).scale(&int(3)));
        assert!(MultiPoly::constant(2, int(7)).differentiate(1).unwrap().is_zero());
        assert!(f.differentiate(3).is_err());
    }
}
