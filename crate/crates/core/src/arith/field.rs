use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::factor_rational;
use super::upoly::UniPoly;
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// Exact coefficient field.
///
/// Arithmetic goes through the std operator traits (owned left operand,
/// borrowed right operand), so generic code reads `a.clone() * &b`.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn try_inv(&self) -> Option<Self>;
    fn from_rational(q: Rational) -> Self;
    /// `Some` when the element lies in the prime field.
    fn to_rational(&self) -> Option<Rational>;

    fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    fn div_by(&self, other: &Self) -> Option<Self> {
        other.try_inv().map(|inv| self.clone() * &inv)
    }
}

impl Field for Rational {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: Rational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// Representative of `q mod 1` in `[0, 1)`.
pub fn frac01(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// A simple algebraic extension `Q[a]/(p)` with `p` monic irreducible.
#[derive(Debug, PartialEq)]
pub struct NumberField {
    modulus: UniPoly<Rational>,
}

impl NumberField {
    pub fn new(p: &UniPoly<Rational>) -> Result<Arc<Self>> {
        let p = p
            .monic()
            .ok_or_else(|| Error::Reducible("zero polynomial".into()))?;
        if p.degree() == Some(0) {
            return Err(Error::Reducible(p.to_string()));
        }
        let factors = factor_rational(&p);
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::Reducible(p.to_string()));
        }
        Ok(Arc::new(NumberField { modulus: p }))
    }

    pub fn modulus(&self) -> &UniPoly<Rational> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn generator(self: &Arc<Self>) -> FieldElem {
        FieldElem::from_poly(UniPoly::x(), self)
    }
}

/// Element of the rationals or of a single simple extension.
///
/// `field == None` marks an element of the prime field; such elements mix
/// freely with elements of any extension.
#[derive(Clone, Debug)]
pub struct FieldElem {
    coeffs: Vec<Rational>,
    field: Option<Arc<NumberField>>,
}

impl FieldElem {
    pub fn rational(q: Rational) -> Self {
        let coeffs = if q.is_zero() { vec![] } else { vec![q] };
        FieldElem { coeffs, field: None }
    }

    pub fn from_poly(p: UniPoly<Rational>, field: &Arc<NumberField>) -> Self {
        let r = p.rem(field.modulus());
        FieldElem {
            coeffs: r.into_coeffs(),
            field: Some(field.clone()),
        }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    /// Canonical coordinates on `1, a, a^2, ...` (trailing zeros trimmed).
    pub fn coords(&self) -> &[Rational] {
        &self.coeffs
    }

    fn join(a: &Option<Arc<NumberField>>, b: &Option<Arc<NumberField>>) -> Option<Arc<NumberField>> {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert!(
                    Arc::ptr_eq(x, y) || x == y,
                    "mixing elements of different number fields"
                );
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn trimmed(mut coeffs: Vec<Rational>, field: Option<Arc<NumberField>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FieldElem { coeffs, field }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Zero for FieldElem {
    fn zero() -> Self {
        FieldElem { coeffs: vec![], field: None }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for FieldElem {
    fn one() -> Self {
        FieldElem::rational(Rational::one())
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        self + &rhs
    }
}

impl<'a> Add<&'a FieldElem> for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        let field = Self::join(&self.field, &rhs.field);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let z = Rational::zero();
                self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z)
            })
            .collect();
        Self::trimmed(coeffs, field)
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            field: self.field,
        }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl<'a> Sub<&'a FieldElem> for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs.clone())
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        self * &rhs
    }
}

impl<'a> Mul<&'a FieldElem> for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        let field = Self::join(&self.field, &rhs.field);
        if self.is_zero() || rhs.is_zero() {
            return FieldElem { coeffs: vec![], field };
        }
        let prod = UniPoly::new(self.coeffs) * &UniPoly::new(rhs.coeffs.clone());
        match &field {
            Some(k) => FieldElem {
                coeffs: prod.rem(k.modulus()).into_coeffs(),
                field,
            },
            None => FieldElem { coeffs: prod.into_coeffs(), field },
        }
    }
}

impl Field for FieldElem {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.coeffs.len() == 1 {
            return Some(FieldElem {
                coeffs: vec![self.coeffs[0].recip()],
                field: self.field.clone(),
            });
        }
        let k = self.field.as_ref()?;
        let (g, s, _) = UniPoly::new(self.coeffs.clone()).ext_gcd(k.modulus());
        // g is a nonzero constant because the modulus is irreducible.
        let c = g.coeff(0).recip();
        Some(FieldElem::from_poly(s.scale(&c), k))
    }

    fn from_rational(q: Rational) -> Self {
        FieldElem::rational(q)
    }

    fn to_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() <= 1 {
            return write!(f, "{}", self.to_rational().unwrap());
        }
        write!(f, "{}", UniPoly::new(self.coeffs.clone()).display_with("a"))
    }
}
