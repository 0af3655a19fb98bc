use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::field::Field;
use super::matrix::Matrix;

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![F::zero(), F::one()])
    }

    /// `x - root`
    pub fn linear(root: F) -> Self {
        Self::new(vec![-root, F::one()])
    }

    pub fn monomial(c: F, deg: usize) -> Self {
        let mut coeffs = vec![F::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn lc(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn monic(&self) -> Option<Self> {
        let inv = self.lc()?.try_inv()?;
        Some(self.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * &F::from_int(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            acc = acc.add_scalar_identity(c);
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(F::one());
        for _ in 0..e {
            acc = acc * self;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().unwrap().try_inv().expect("field element not invertible");
        let mut r = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![F::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = r[k + dd].clone() * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].clone() - &(c.clone() * dj);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd (zero when both inputs vanish).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic().unwrap_or_else(Self::zero)
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` not normalized.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(F::one()), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::constant(F::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0 - &(q.clone() * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0 - &(q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        (r0, s0, t0)
    }

    /// Squarefree part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic().unwrap_or_else(Self::zero)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> UniPoly<G> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            let compound = s.contains(['+', '-', ' ']);
            if compound {
                s = format!("({s})");
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { "-" } else { "+" });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&s);
            } else if s == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{s}*{mono}"));
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl<F: Field> Add<&UniPoly<F>> for UniPoly<F> {
    type Output = UniPoly<F>;
    fn add(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl<F: Field> Sub<&UniPoly<F>> for UniPoly<F> {
    type Output = UniPoly<F>;
    fn sub(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl<F: Field> Neg for UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<F: Field> Mul<&UniPoly<F>> for UniPoly<F> {
    type Output = UniPoly<F>;
    fn mul(self, rhs: &UniPoly<F>) -> UniPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        UniPoly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, Rational};

    fn p(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn division_identity() {
        let a = p(&[1, 0, -3, 0, 1]);
        let d = p(&[-1, 0, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q * &d + &r, a);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p(&[-1, 0, 1]) * &p(&[-1, 0, 1]) * &p(&[2, 1]);
        assert_eq!(a.squarefree_part(), p(&[-1, 0, 1]) * &p(&[2, 1]));
        assert_eq!(a.gcd(&p(&[1, 1])), p(&[1, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-3, 0, 1]).to_string(), "t^2-3");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }
}
