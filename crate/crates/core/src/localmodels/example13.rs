//! One-variable twisted complexes `u∂_t − f′` on `Q[t, 1/f′]`, formally in
//! `u` and over Laurent polynomials in `u`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::field::{rat, Rational};
use crate::arith::matrix::Matrix;
use crate::arith::upoly::UniPoly;
use crate::error::{Error, Result};

/// `num / f′^pole`.
#[derive(Clone, Debug)]
pub struct LocalizedElem {
    pub num: UniPoly<Rational>,
    pub pole: u32,
}

/// `Q[t, 1/f′]` for a fixed nonzero `f′`.
#[derive(Clone, Debug)]
pub struct LocalizedRing {
    fprime: UniPoly<Rational>,
}

impl LocalizedRing {
    pub fn new(fprime: UniPoly<Rational>) -> Result<Self> {
        if fprime.is_zero() {
            return Err(Error::Precondition("f′ is zero".into()));
        }
        Ok(LocalizedRing { fprime })
    }

    pub fn fprime(&self) -> &UniPoly<Rational> {
        &self.fprime
    }

    pub fn zero(&self) -> LocalizedElem {
        LocalizedElem { num: UniPoly::zero(), pole: 0 }
    }

    pub fn from_poly(&self, p: UniPoly<Rational>) -> LocalizedElem {
        LocalizedElem { num: p, pole: 0 }
    }

    /// Cancels common factors of `f′` between numerator and denominator.
    pub fn reduce(&self, a: &LocalizedElem) -> LocalizedElem {
        let mut out = a.clone();
        if out.num.is_zero() {
            out.pole = 0;
        }
        while out.pole > 0 {
            let (q, r) = out.num.div_rem(&self.fprime);
            if !r.is_zero() {
                break;
            }
            out.num = q;
            out.pole -= 1;
        }
        out
    }

    fn raise(&self, a: &LocalizedElem, pole: u32) -> UniPoly<Rational> {
        a.num.clone() * &self.fprime.pow((pole - a.pole) as usize)
    }

    pub fn add(&self, a: &LocalizedElem, b: &LocalizedElem) -> LocalizedElem {
        let pole = a.pole.max(b.pole);
        self.reduce(&LocalizedElem { num: self.raise(a, pole) + &self.raise(b, pole), pole })
    }

    pub fn neg(&self, a: &LocalizedElem) -> LocalizedElem {
        LocalizedElem { num: -a.num.clone(), pole: a.pole }
    }

    pub fn sub(&self, a: &LocalizedElem, b: &LocalizedElem) -> LocalizedElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &LocalizedElem, b: &LocalizedElem) -> LocalizedElem {
        self.reduce(&LocalizedElem { num: a.num.clone() * &b.num, pole: a.pole + b.pole })
    }

    pub fn mul_fprime(&self, a: &LocalizedElem) -> LocalizedElem {
        self.mul(a, &self.from_poly(self.fprime.clone()))
    }

    pub fn div_fprime(&self, a: &LocalizedElem) -> LocalizedElem {
        self.reduce(&LocalizedElem { num: a.num.clone(), pole: a.pole + 1 })
    }

    /// `(p′f′ − k·p·f″)/f′^{k+1}`.
    pub fn derivative(&self, a: &LocalizedElem) -> LocalizedElem {
        let k = Rational::from_integer(a.pole.into());
        let num = a.num.derivative() * &self.fprime - &(a.num.clone() * &self.fprime.derivative()).scale(&k);
        self.reduce(&LocalizedElem { num, pole: a.pole + 1 })
    }

    pub fn eq(&self, a: &LocalizedElem, b: &LocalizedElem) -> bool {
        self.sub(a, b).num.is_zero()
    }

    pub fn is_zero(&self, a: &LocalizedElem) -> bool {
        a.num.is_zero()
    }

    /// Coefficients `(ψ_k)` of `(u∂_t − f′)·Σ φ_k u^k` below `u^{len}`.
    pub fn apply(&self, phi: &[LocalizedElem]) -> Vec<LocalizedElem> {
        (0..phi.len())
            .map(|k| {
                let lower = if k == 0 { self.zero() } else { self.derivative(&phi[k - 1]) };
                self.sub(&lower, &self.mul_fprime(&phi[k]))
            })
            .collect()
    }
}

/// Solves `(u∂_t − f′)Σφ_k u^k = Σψ_k u^k` term by term:
/// `φ₀ = −ψ₀/f′`, `φ_{k+1} = (∂_tφ_k − ψ_{k+1})/f′`.
pub fn formal_solve_1var(ring: &LocalizedRing, psi: &[LocalizedElem]) -> Vec<LocalizedElem> {
    let mut phi: Vec<LocalizedElem> = Vec::with_capacity(psi.len());
    for (k, p) in psi.iter().enumerate() {
        let next = if k == 0 {
            ring.div_fprime(&ring.neg(p))
        } else {
            ring.div_fprime(&ring.sub(&ring.derivative(&phi[k - 1]), p))
        };
        phi.push(next);
    }
    phi
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_elem(ring: &LocalizedRing, rng: &mut ChaCha8Rng) -> LocalizedElem {
    let deg = rng.gen_range(0..=4);
    let num = UniPoly::new((0..=deg).map(|_| random_rational(rng)).collect());
    ring.reduce(&LocalizedElem { num, pole: rng.gen_range(0..=2) })
}

fn univariate_check(f: &UniPoly<Rational>) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::Precondition("f must be nonconstant".into()));
    }
    Ok(())
}

/// Surjectivity by solving random right-hand sides to order `n` and
/// replaying them; injectivity by the lowest-order coefficient `−f′φ_low`.
pub fn formal_cohomology_vanishes_1var(f: &UniPoly<Rational>, n: usize, trials: usize, seed: u64) -> Result<bool> {
    univariate_check(f)?;
    let ring = LocalizedRing::new(f.derivative())?;
    let ok = (0..trials).into_par_iter().all(|trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let psi: Vec<LocalizedElem> = (0..n).map(|_| random_elem(&ring, &mut rng)).collect();
        let phi = formal_solve_1var(&ring, &psi);
        let surjective = ring.apply(&phi).iter().zip(&psi).all(|(a, b)| ring.eq(a, b));

        let low = rng.gen_range(0..n.max(1));
        let mut probe: Vec<LocalizedElem> = (0..n).map(|_| ring.zero()).collect();
        let mut lead = random_elem(&ring, &mut rng);
        if ring.is_zero(&lead) {
            lead = ring.from_poly(UniPoly::constant(Rational::one()));
        }
        if n > 0 {
            probe[low] = lead.clone();
            for slot in probe.iter_mut().skip(low + 1) {
                *slot = random_elem(&ring, &mut rng);
            }
        }
        let image = ring.apply(&probe);
        let injective = n == 0 || {
            let first = image.iter().position(|x| !ring.is_zero(x));
            first == Some(low) && ring.eq(&image[low], &ring.neg(&ring.mul_fprime(&lead)))
        };
        surjective && injective
    });
    Ok(ok)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentRank {
    pub rank: usize,
    /// `deg f` times the number of distinct critical values.
    pub formula_rank: usize,
    /// `deg f + #{distinct roots of f′} − 1`.
    pub index_count: usize,
    pub agree: bool,
    pub samples: Vec<Rational>,
    /// Filtration level at which the rank settled, per sample.
    pub levels: Vec<usize>,
}

/// Number of distinct values of `f` on the roots of `s`.
fn distinct_critical_values(f: &UniPoly<Rational>, s: &UniPoly<Rational>) -> usize {
    let e = s.degree().unwrap_or(0);
    if e == 0 {
        return 0;
    }
    let m = Matrix::from_fn(e, e, |i, j| (f.clone() * &UniPoly::monomial(Rational::one(), j)).rem(s).coeff(i));
    let chi = m.charpoly();
    chi.gcd(&chi.derivative()).degree().map_or(0, |g| e - g)
}

/// Columns of `p/s^k` in the basis `t^i/s^big`, `i ≤ width`.
fn column(p: &UniPoly<Rational>, k: u32, s: &UniPoly<Rational>, big: u32, width: usize) -> Vec<Rational> {
    let full = p.clone() * &s.pow((big - k) as usize);
    (0..width).map(|i| full.coeff(i)).collect()
}

struct Filtration<'a> {
    s: &'a UniPoly<Rational>,
    e: usize,
    m: usize,
}

impl Filtration<'_> {
    /// Spanning set of `{p/s^K : deg p ≤ D + eK}` at level `j` (`D = K = j`).
    fn level(&self, j: usize) -> (usize, u32) {
        (j + self.e * j, j as u32)
    }

    /// Dimension of `V_T / (V_T ∩ L(V_S))` with `L = c∂_t − f′`.
    fn cokernel_at(&self, fprime: &UniPoly<Rational>, c: &Rational, target: usize, source: usize) -> usize {
        let (dt, kt) = self.level(target);
        let (ds, ks) = self.level(source);
        let big = ks + 1;
        let width = (ds + self.m + self.e).max(dt + self.e * (big - kt) as usize) + 1;
        let image: Vec<Vec<Rational>> = (0..=ds)
            .map(|i| {
                let p = UniPoly::monomial(Rational::one(), i);
                let k = Rational::from_integer(ks.into());
                // L(p/s^K) = [c(p′s − K p s′) − f′ s p] / s^{K+1}
                let num = (p.derivative() * self.s - &(p.clone() * &self.s.derivative()).scale(&k)).scale(c)
                    - &(fprime.clone() * self.s * &p);
                column(&num, ks + 1, self.s, big, width)
            })
            .collect();
        let target_cols: Vec<Vec<Rational>> = (0..=dt)
            .map(|i| column(&UniPoly::monomial(Rational::one(), i), kt, self.s, big, width))
            .collect();
        let img = Matrix::from_columns(&image, width);
        let both: Vec<Vec<Rational>> = image.iter().chain(&target_cols).cloned().collect();
        Matrix::from_columns(&both, width).rank() - img.rank()
    }
}

/// Rank of the cokernel of `c∂_t − f′` on `Q[t, 1/f′]` at random `u = c`,
/// read off nested truncations until it repeats twice.
pub fn laurent_rank_1var(f: &UniPoly<Rational>, max_level: usize, samples: usize, seed: u64) -> Result<LaurentRank> {
    univariate_check(f)?;
    let fprime = f.derivative();
    let s = fprime.squarefree_part().monic().unwrap_or_else(|| UniPoly::constant(Rational::one()));
    let e = s.degree().unwrap_or(0);
    let m = fprime.degree().unwrap_or(0);
    let filt = Filtration { s: &s, e, m };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cs = BTreeSet::new();
    while cs.len() < samples.max(1) {
        let c = random_rational(&mut rng);
        if !c.is_zero() {
            cs.insert(c);
        }
    }
    let cs: Vec<Rational> = cs.into_iter().collect();
    let runs: Vec<Result<(usize, usize)>> = cs
        .par_iter()
        .map(|c| {
            let mut history: Vec<usize> = Vec::new();
            for j in 1..=max_level {
                history.push(filt.cokernel_at(&fprime, c, j, j + 1));
                if history.len() >= 3 && history[history.len() - 3..].iter().all(|&x| x == history[history.len() - 1]) {
                    return Ok((history[history.len() - 1], j));
                }
            }
            Err(Error::NonStabilization)
        })
        .collect();
    let mut ranks = Vec::new();
    let mut levels = Vec::new();
    for r in runs {
        let (rank, level) = r?;
        ranks.push(rank);
        levels.push(level);
    }
    if ranks.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::NonStabilization);
    }
    let deg = f.degree().unwrap_or(0);
    let formula_rank = deg * distinct_critical_values(f, &s);
    let rank = ranks[0];
    Ok(LaurentRank {
        rank,
        formula_rank,
        index_count: deg + e - 1,
        agree: rank == formula_rank,
        samples: cs,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::int;

    fn poly(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn hand_recursion() {
        let ring = LocalizedRing::new(poly(&[0, 2])).unwrap();
        let one = ring.from_poly(poly(&[1]));
        let phi = formal_solve_1var(&ring, &[one, ring.zero(), ring.zero()]);
        // −1/(2t) and 1/(4t³)
        assert!(ring.eq(&phi[0], &ring.reduce(&LocalizedElem { num: poly(&[-1]), pole: 1 })));
        let want = LocalizedElem { num: poly(&[2]), pole: 3 };
        assert!(ring.eq(&phi[1], &want));

        let phi = formal_solve_1var(&ring, &[ring.from_poly(poly(&[0, -2])), ring.from_poly(poly(&[1]))]);
        assert!(ring.eq(&phi[0], &ring.from_poly(poly(&[1]))));
        assert!(ring.eq(&phi[1], &LocalizedElem { num: poly(&[-1]), pole: 1 }));

        let zero = formal_solve_1var(&ring, &[ring.zero(), ring.zero()]);
        assert!(zero.iter().all(|z| ring.is_zero(z)));
    }

    #[test]
    fn formal_vanishing() {
        for f in [poly(&[0, 0, 1]), poly(&[0, -3, 0, 1]), poly(&[0, 1])] {
            assert!(formal_cohomology_vanishes_1var(&f, 6, 20, 7).unwrap());
        }
        assert!(formal_cohomology_vanishes_1var(&poly(&[5]), 6, 1, 7).is_err());
    }

    #[test]
    fn laurent_ranks() {
        let r = laurent_rank_1var(&poly(&[0, 0, 1]), 12, 2, 1).unwrap();
        assert_eq!((r.rank, r.formula_rank, r.index_count, r.agree), (2, 2, 2, true));
        let r = laurent_rank_1var(&poly(&[0, 0, 0, 1]), 12, 2, 1).unwrap();
        assert_eq!((r.rank, r.formula_rank, r.agree), (3, 3, true));
        let r = laurent_rank_1var(&poly(&[0, -3, 0, 1]), 12, 2, 1).unwrap();
        assert_eq!((r.rank, r.formula_rank, r.index_count, r.agree), (4, 6, 4, false));
    }
}
