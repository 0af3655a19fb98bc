//! Buchberger's algorithm with Gebauer–Möller pair pruning, the normal
//! selection strategy, and cofactors carried back to the input generators.

use num_traits::One;

use crate::arith::field::Rational;
use crate::arith::poly::{mono_divides, mono_lcm, mono_mul, mono_quot, Monomial, MonomialOrder, MultiPoly};
use crate::arith::Field;

/// A polynomial together with its expression `poly = Σ cof[i]·gens[i]`.
#[derive(Clone, Debug)]
struct Tracked {
    poly: MultiPoly,
    cof: Vec<MultiPoly>,
    lm: Monomial,
}

#[derive(Clone, Debug)]
pub struct GBasis {
    nvars: usize,
    order: MonomialOrder,
    gens: Vec<MultiPoly>,
    basis: Vec<MultiPoly>,
    cofactors: Vec<Vec<MultiPoly>>,
    leading: Vec<Monomial>,
}

/// Result of dividing by a Gröbner basis, with quotients expressed in the
/// original generators: `g = remainder + Σ cofactors[i]·gens[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Division {
    pub remainder: MultiPoly,
    pub cofactors: Vec<MultiPoly>,
}

fn lm_of(p: &MultiPoly, order: &MonomialOrder) -> Monomial {
    p.leading_term(order).map(|(m, _)| m.clone()).expect("nonzero polynomial")
}

fn sub_scaled(target: &mut MultiPoly, src: &MultiPoly, m: &[u32], c: &Rational) {
    for (e, a) in src.terms() {
        target.add_term(mono_mul(e, m), -(a.clone() * c));
    }
}

/// Full reduction of `p` by `basis`; cofactors of `p` are updated in place.
fn reduce_tracked(mut p: Tracked, basis: &[&Tracked], order: &MonomialOrder, nvars: usize) -> Tracked {
    let mut rest = MultiPoly::zero(nvars);
    while let Some((m, c)) = p.poly.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        match basis.iter().find(|b| mono_divides(&b.lm, &m)) {
            Some(b) => {
                let q = mono_quot(&m, &b.lm);
                let k = c / b.poly.coeff(&b.lm);
                sub_scaled(&mut p.poly, &b.poly, &q, &k);
                for (ci, bi) in p.cof.iter_mut().zip(&b.cof) {
                    sub_scaled(ci, bi, &q, &k);
                }
            }
            None => {
                p.poly.add_term(m.clone(), -c.clone());
                rest.add_term(m, c);
            }
        }
    }
    p.lm = rest.leading_term(order).map(|(m, _)| m.clone()).unwrap_or_default();
    p.poly = rest;
    p
}

fn s_poly(a: &Tracked, b: &Tracked, order: &MonomialOrder) -> Tracked {
    let l = mono_lcm(&a.lm, &b.lm);
    let qa = mono_quot(&l, &a.lm);
    let qb = mono_quot(&l, &b.lm);
    let ca = a.poly.coeff(&a.lm).try_inv().unwrap();
    let cb = b.poly.coeff(&b.lm).try_inv().unwrap();
    let n = a.poly.nvars();
    let mut poly = a.poly.mul_term(&qa, &ca);
    sub_scaled(&mut poly, &b.poly, &qb, &cb);
    let cof = a
        .cof
        .iter()
        .zip(&b.cof)
        .map(|(x, y)| {
            let mut c = x.mul_term(&qa, &ca);
            sub_scaled(&mut c, y, &qb, &cb);
            c
        })
        .collect();
    let lm = poly.leading_term(order).map(|(m, _)| m.clone()).unwrap_or_else(|| vec![0; n]);
    Tracked { poly, cof, lm }
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer–Möller update after adding `elems[h]`.
fn update(elems: &[Tracked], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lm_h = &elems[h].lm;
    let mut cands: Vec<Pair> = active
        .iter()
        .map(|&g| Pair { i: g, j: h, lcm: mono_lcm(&elems[g].lm, lm_h) })
        .collect();
    cands.reverse();

    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = cands.pop() {
        let is_coprime = coprime(&elems[p.i].lm, lm_h);
        if is_coprime
            || (!cands.iter().any(|q| mono_divides(&q.lcm, &p.lcm))
                && !kept.iter().any(|q| mono_divides(&q.lcm, &p.lcm)))
        {
            kept.push(p);
        }
    }
    kept.retain(|p| !coprime(&elems[p.i].lm, lm_h));

    pairs.retain(|p| {
        !(mono_divides(lm_h, &p.lcm)
            && mono_lcm(&elems[p.i].lm, lm_h) != p.lcm
            && mono_lcm(&elems[p.j].lm, lm_h) != p.lcm)
    });
    pairs.extend(kept);

    active.retain(|&g| !mono_divides(lm_h, &elems[g].lm));
    active.push(h);
}

pub fn buchberger(gens: &[MultiPoly], order: &MonomialOrder) -> GBasis {
    assert!(!gens.is_empty(), "no generators");
    let nvars = gens[0].nvars();
    let k = gens.len();
    let mut elems: Vec<Tracked> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<Tracked> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| {
            let mut cof = vec![MultiPoly::zero(nvars); k];
            cof[i] = MultiPoly::one(nvars);
            Tracked { poly: g.clone(), cof, lm: lm_of(g, order) }
        })
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
    for t in inputs {
        let basis: Vec<&Tracked> = active.iter().map(|&i| &elems[i]).collect();
        let t = reduce_tracked(t, &basis, order, nvars);
        if t.poly.is_zero() {
            continue;
        }
        elems.push(t);
        let h = elems.len() - 1;
        update(&elems, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| order.cmp(&pairs[a].lcm, &pairs[b].lcm).then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j))))
            .unwrap();
        let p = pairs.swap_remove(best);
        let s = s_poly(&elems[p.i], &elems[p.j], order);
        if s.poly.is_zero() {
            continue;
        }
        let basis: Vec<&Tracked> = active.iter().map(|&i| &elems[i]).collect();
        let r = reduce_tracked(s, &basis, order, nvars);
        if r.poly.is_zero() {
            continue;
        }
        elems.push(r);
        let h = elems.len() - 1;
        update(&elems, &mut active, &mut pairs, h);
    }

    // minimal, then reduced and monic
    let mut min: Vec<Tracked> = Vec::new();
    let mut cands: Vec<Tracked> = active.iter().map(|&i| elems[i].clone()).collect();
    cands.sort_by(|a, b| order.cmp(&a.lm, &b.lm));
    for t in cands {
        if !min.iter().any(|m| mono_divides(&m.lm, &t.lm)) {
            min.push(t);
        }
    }
    let mut reduced: Vec<Tracked> = Vec::new();
    for i in 0..min.len() {
        let lead = min[i].clone();
        let (m, c) = lead.poly.leading_term(order).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut tail = lead.clone();
        tail.poly.add_term(m.clone(), -c.clone());
        let others: Vec<&Tracked> = min.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, t)| t).collect();
        let mut tail = reduce_tracked(tail, &others, order, nvars);
        tail.poly.add_term(m.clone(), c.clone());
        let inv = c.try_inv().unwrap();
        let out = Tracked {
            poly: tail.poly.scale(&inv),
            cof: tail.cof.iter().map(|x| x.scale(&inv)).collect(),
            lm: m,
        };
        reduced.push(out);
    }
    reduced.sort_by(|a, b| order.cmp(&a.lm, &b.lm));

    GBasis {
        nvars,
        order: order.clone(),
        gens: gens.to_vec(),
        leading: reduced.iter().map(|t| t.lm.clone()).collect(),
        basis: reduced.iter().map(|t| t.poly.clone()).collect(),
        cofactors: reduced.into_iter().map(|t| t.cof).collect(),
    }
}

impl GBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    /// Reduced basis, monic, ascending by leading monomial.
    pub fn elements(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn cofactors(&self) -> &[Vec<MultiPoly>] {
        &self.cofactors
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(|m| m.iter().all(|&e| e == 0))
    }

    /// Finitely many standard monomials: every variable has a pure power
    /// among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        (0..self.nvars).all(|i| {
            self.leading.iter().any(|m| m.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
        }) || self.is_unit_ideal()
    }

    /// Division by the basis with cofactors in the original generators.
    pub fn divide(&self, g: &MultiPoly) -> Division {
        let k = self.gens.len();
        let tracked: Vec<Tracked> = self
            .basis
            .iter()
            .zip(&self.cofactors)
            .zip(&self.leading)
            .map(|((p, c), m)| Tracked { poly: p.clone(), cof: c.clone(), lm: m.clone() })
            .collect();
        let refs: Vec<&Tracked> = tracked.iter().collect();
        let start = Tracked { poly: g.clone(), cof: vec![MultiPoly::zero(self.nvars); k], lm: vec![] };
        let r = reduce_tracked(start, &refs, &self.order, self.nvars);
        // r.cof holds -Σ quotients, since reduction subtracted them
        Division { remainder: r.poly, cofactors: r.cof.iter().map(|c| c.neg()).collect() }
    }

    pub fn remainder(&self, g: &MultiPoly) -> MultiPoly {
        self.divide(g).remainder
    }

    /// Replays every cofactor certificate and checks that each generator
    /// lies in the ideal of the basis.
    pub fn verify(&self) -> bool {
        let certs = self.basis.iter().zip(&self.cofactors).all(|(b, cof)| combine(cof, &self.gens) == *b);
        let members = self.gens.iter().all(|g| self.remainder(g).is_zero());
        let monic = self.basis.iter().all(|b| b.leading_term(&self.order).is_some_and(|(_, c)| c.is_one()));
        certs && members && monic
    }
}

/// `Σ a_i b_i`.
pub fn combine(a: &[MultiPoly], b: &[MultiPoly]) -> MultiPoly {
    let n = b.first().map(|p| p.nvars()).unwrap_or(0);
    a.iter().zip(b).fold(MultiPoly::zero(n), |acc, (x, y)| acc.add(&x.mul(y)))
}
