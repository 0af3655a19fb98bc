use num_traits::{One, Zero};

use crate::arith::field::{frac01, Rational};
use crate::arith::matrix::Matrix;
use crate::arith::poly::{Monomial, MultiPoly};

/// Weights with `Σ a_i w_i = 1` on the support of `f` and `0 < w_i < 1`.
///
/// When the support does not pin the weights down, the barycenter of the
/// vertices of `{Aw = 1, 0 ≤ w ≤ 1}` is returned; it lies in the open box
/// exactly when some admissible weight does.
pub fn quasihomogeneous_weights(f: &MultiPoly) -> Option<Vec<Rational>> {
    let n = f.nvars();
    if f.is_zero() || n == 0 {
        return None;
    }
    let rows: Vec<Vec<Rational>> = f
        .terms()
        .map(|(m, _)| m.iter().map(|&e| Rational::from_integer(e.into())).collect())
        .collect();
    let a = Matrix::from_rows(rows);
    let ones = Matrix::from_fn(a.rows(), 1, |_, _| Rational::one());
    let w0 = a.solve(&ones)?;
    let kernel = a.nullspace();
    let inside = |w: &[Rational]| w.iter().all(|x| x > &Rational::zero() && x < &Rational::one());
    let w0: Vec<Rational> = (0..n).map(|i| w0[(i, 0)].clone()).collect();
    if kernel.cols() == 0 {
        return inside(&w0).then_some(w0);
    }
    let verts = box_vertices(&w0, &kernel);
    if verts.is_empty() {
        return None;
    }
    let k = Rational::from_integer((verts.len() as i64).into());
    let mean: Vec<Rational> =
        (0..n).map(|i| verts.iter().fold(Rational::zero(), |s, v| s + &v[i]) / k.clone()).collect();
    inside(&mean).then_some(mean)
}

/// Vertices of `{w0 + K t} ∩ [0,1]^n`, found by making `dim K` box
/// constraints tight in every possible way.
fn box_vertices(w0: &[Rational], kernel: &Matrix<Rational>) -> Vec<Vec<Rational>> {
    let n = w0.len();
    let d = kernel.cols();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    let mut choice = Vec::new();
    fn rec(
        start: usize,
        n: usize,
        d: usize,
        choice: &mut Vec<(usize, bool)>,
        w0: &[Rational],
        kernel: &Matrix<Rational>,
        out: &mut Vec<Vec<Rational>>,
    ) {
        if choice.len() == d {
            let sys = Matrix::from_fn(d, d, |r, c| kernel[(choice[r].0, c)].clone());
            let Some(inv) = sys.inverse() else { return };
            let rhs = Matrix::from_fn(d, 1, |r, _| {
                let (i, upper) = choice[r];
                let target = if upper { Rational::one() } else { Rational::zero() };
                target - &w0[i]
            });
            let t = &inv * &rhs;
            let w: Vec<Rational> = (0..n)
                .map(|i| (0..d).fold(w0[i].clone(), |s, c| s + &(kernel[(i, c)].clone() * &t[(c, 0)])))
                .collect();
            if w.iter().all(|x| x >= &Rational::zero() && x <= &Rational::one()) && !out.contains(&w) {
                out.push(w);
            }
            return;
        }
        for i in start..n {
            for upper in [false, true] {
                choice.push((i, upper));
                rec(i + 1, n, d, choice, w0, kernel, out);
                choice.pop();
            }
        }
    }
    rec(0, n, d, &mut choice, w0, kernel, &mut out);
    out
}

/// `ℓ(α) = Σ (α_i + 1) w_i`, before reduction mod 1.
pub fn milnor_orlik_exponents(weights: &[Rational], standard: &[Monomial]) -> Vec<Rational> {
    standard
        .iter()
        .map(|m| m.iter().zip(weights).fold(Rational::zero(), |s, (&a, w)| s + &(w.clone() * Rational::from_integer((a + 1).into()))))
        .collect()
}

/// The exponents reduced into `[0,1)`, sorted.
pub fn milnor_orlik_residues(weights: &[Rational], standard: &[Monomial]) -> Vec<Rational> {
    let mut out: Vec<Rational> = milnor_orlik_exponents(weights, standard).iter().map(frac01).collect();
    out.sort();
    out
}

/// `Π (1/w_i − 1)`, the Milnor number of a quasi-homogeneous isolated singularity.
pub fn weighted_milnor_number(weights: &[Rational]) -> Rational {
    weights.iter().fold(Rational::one(), |acc, w| acc * (w.recip() - Rational::one()))
}
