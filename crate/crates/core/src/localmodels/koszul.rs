//! Nearby cycles of `t = x^μ` on the normal crossing model.
//!
//! The arrows `x_i∂_i − (μ_i/μ_1)x_1∂_1` act diagonally on monomials, so
//! cohomology lives on the monomials where every eigenvalue vanishes.
//! Multiplication by `t` identifies survivors `x^{cμ′}` and `x^{(c+d)μ′}`.

use num_integer::Integer;

use crate::arith::field::{frac01, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulModel {
    pub mu: Vec<u64>,
    /// Largest exponent enumerated in each variable.
    pub bound: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KoszulResult {
    pub d: u64,
    pub rank: usize,
    /// `t∂_t`-eigenvalues of the generators, in `[0,1)`, ascending.
    pub residues: Vec<Rational>,
    /// Surviving monomials within the bound.
    pub survivors: usize,
}

impl KoszulModel {
    /// Model with the smallest admissible bound `d·max μ′`.
    pub fn new(mu: Vec<u64>) -> Result<Self> {
        if mu.is_empty() || mu.contains(&0) {
            return Err(Error::Precondition("exponents must be positive and nonempty".into()));
        }
        let mut m = KoszulModel { mu, bound: 0 };
        m.bound = m.d() * m.mu_prime().into_iter().max().unwrap_or(1);
        Ok(m)
    }

    pub fn with_bound(mu: Vec<u64>, bound: u64) -> Result<Self> {
        let mut m = Self::new(mu)?;
        m.bound = bound;
        Ok(m)
    }

    pub fn d(&self) -> u64 {
        self.mu.iter().fold(0, |g, &m| g.gcd(&m))
    }

    pub fn mu_prime(&self) -> Vec<u64> {
        let d = self.d();
        self.mu.iter().map(|m| m / d).collect()
    }
}

struct Count {
    survivors: Vec<Vec<u64>>,
    generators: Vec<Vec<u64>>,
}

fn enumerate(mu: &[u64], bound: u64) -> Count {
    let r = mu.len();
    let mut survivors = Vec::new();
    let mut a = vec![0u64; r];
    loop {
        if (1..r).all(|i| a[i] * mu[0] == a[0] * mu[i]) {
            survivors.push(a.clone());
        }
        let mut i = 0;
        while i < r && a[i] == bound {
            a[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
        a[i] += 1;
    }
    let generators = survivors
        .iter()
        .filter(|a| {
            let below: Option<Vec<u64>> = a.iter().zip(mu).map(|(&x, &m)| x.checked_sub(m)).collect();
            below.is_none_or(|b| !survivors.contains(&b))
        })
        .cloned()
        .collect();
    Count { survivors, generators }
}

pub fn monomial_koszul(model: &KoszulModel) -> Result<KoszulResult> {
    let d = model.d();
    let step = d * model.mu_prime().into_iter().max().unwrap_or(1);
    if model.bound < step {
        return Err(Error::BoundTooSmall(format!("bound {} below d·max μ′ = {step}", model.bound)));
    }
    let here = enumerate(&model.mu, model.bound);
    let further = enumerate(&model.mu, model.bound + step);
    if here.generators != further.generators {
        return Err(Error::BoundTooSmall(format!("generator count moved past bound {}", model.bound)));
    }
    // t∂_t = (1/μ_1)·x_1∂_1 on functions of t
    let mut residues: Vec<Rational> = here
        .generators
        .iter()
        .map(|a| frac01(&Rational::new((a[0] as i64).into(), (model.mu[0] as i64).into())))
        .collect();
    residues.sort();
    Ok(KoszulResult { d, rank: here.generators.len(), residues, survivors: here.survivors.len() })
}
