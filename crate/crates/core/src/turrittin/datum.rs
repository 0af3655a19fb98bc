use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::field::{frac01, Rational};
use crate::arith::upoly::UniPoly;

/// A critical value `t₀`, given by its minimal polynomial over the
/// rationals, and the rank of the part attached to one root.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentialPart {
    pub minpoly: UniPoly<Rational>,
    pub rank: usize,
}

impl ExponentialPart {
    pub fn new(minpoly: UniPoly<Rational>, rank: usize) -> Self {
        ExponentialPart { minpoly: minpoly.monic().expect("nonzero minimal polynomial"), rank }
    }

    pub fn rational(t0: Rational, rank: usize) -> Self {
        ExponentialPart { minpoly: UniPoly::linear(t0), rank }
    }

    pub fn rational_value(&self) -> Option<Rational> {
        (self.minpoly.degree() == Some(1)).then(|| -self.minpoly.coeff(0))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    /// Rational values first (ascending), then by degree and coefficients.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self.rational_value(), other.rational_value()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self
                .degree()
                .cmp(&other.degree())
                .then_with(|| self.minpoly.coeffs().iter().rev().cmp(other.minpoly.coeffs().iter().rev())),
        }
    }

    /// `τ − t₀` or the minimal polynomial, printed in `τ` as `t`.
    pub fn describe(&self) -> String {
        match self.rational_value() {
            Some(v) => v.to_string(),
            None => self.minpoly.display_with("t"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartDatum {
    pub part: ExponentialPart,
    /// Residues in `[0,1)` with multiplicities.
    pub residues: BTreeMap<Rational, usize>,
    /// Jordan block sizes per residue, descending.
    pub jordan: Option<BTreeMap<Rational, Vec<usize>>>,
}

impl PartDatum {
    pub fn new(part: ExponentialPart, residues: impl IntoIterator<Item = Rational>) -> Self {
        let mut map = BTreeMap::new();
        for q in residues {
            *map.entry(frac01(&q)).or_insert(0) += 1;
        }
        PartDatum { part, residues: map, jordan: None }
    }

    pub fn residue_list(&self) -> Vec<Rational> {
        self.residues.iter().flat_map(|(q, &m)| std::iter::repeat_n(q.clone(), m)).collect()
    }

    fn normalized(&self) -> Self {
        let mut residues = BTreeMap::new();
        for (q, &m) in &self.residues {
            *residues.entry(frac01(q)).or_insert(0) += m;
        }
        let jordan = self.jordan.as_ref().map(|j| {
            let mut out: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
            for (q, sizes) in j {
                out.entry(frac01(q)).or_default().extend(sizes.iter().copied());
            }
            for v in out.values_mut() {
                v.sort_unstable_by(|a, b| b.cmp(a));
            }
            out
        });
        PartDatum { part: self.part.clone(), residues, jordan }
    }
}

/// Exponential parts with their residue multisets: the finite form of the
/// decomposition of the formal connection.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MonodromyDatum {
    pub parts: Vec<PartDatum>,
}

impl MonodromyDatum {
    pub fn new(mut parts: Vec<PartDatum>) -> Self {
        parts.sort_by(|a, b| a.part.cmp_value(&b.part));
        MonodromyDatum { parts }
    }

    pub fn empty() -> Self {
        MonodromyDatum { parts: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `Σ rank · deg p`, the dimension of the connection it describes.
    pub fn total_rank(&self) -> usize {
        self.parts.iter().map(|p| p.part.rank * p.part.degree()).sum()
    }

    pub fn is_valid(&self) -> bool {
        let zero = Rational::zero();
        let one = Rational::one();
        self.parts.iter().all(|p| {
            p.part.rank >= 1
                && p.part.degree() >= 1
                && p.residues.values().sum::<usize>() == p.part.rank
                && p.residues.iter().all(|(q, &m)| m > 0 && q >= &zero && q < &one)
                && p.jordan.as_ref().is_none_or(|j| {
                    j.len() == p.residues.len()
                        && j.iter().all(|(q, sizes)| p.residues.get(q) == Some(&sizes.iter().sum()))
                })
        })
    }

    pub fn strip_jordan(&self) -> Self {
        MonodromyDatum {
            parts: self.parts.iter().map(|p| PartDatum { jordan: None, ..p.clone() }).collect(),
        }
    }
}

/// Equality up to part order and residue normalization; Jordan data is
/// compared only where both sides carry it.
pub fn datum_equal(a: &MonodromyDatum, b: &MonodromyDatum) -> bool {
    if a.parts.len() != b.parts.len() {
        return false;
    }
    let sorted = |d: &MonodromyDatum| {
        let mut ps: Vec<PartDatum> = d.parts.iter().map(PartDatum::normalized).collect();
        ps.sort_by(|x, y| x.part.cmp_value(&y.part).then_with(|| x.part.rank.cmp(&y.part.rank)).then_with(|| x.residues.cmp(&y.residues)));
        ps
    };
    sorted(a).iter().zip(sorted(b).iter()).all(|(x, y)| {
        x.part == y.part
            && x.residues == y.residues
            && match (&x.jordan, &y.jordan) {
                (Some(j), Some(k)) => j == k,
                _ => true,
            }
    })
}
