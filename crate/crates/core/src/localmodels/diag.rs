//! Koszul complexes of `x_i∂_{x_i} + b_i` on formal power series, with
//! poles allowed along some axes.

use crate::arith::field::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq)]
pub struct DiagKoszulSpec {
    pub b: Vec<FieldElem>,
    /// `true` where Laurent tails along that axis are allowed.
    pub pole: Vec<bool>,
}

impl DiagKoszulSpec {
    pub fn new(b: Vec<FieldElem>, pole: Vec<bool>) -> Self {
        assert_eq!(b.len(), pole.len(), "one pole flag per constant");
        DiagKoszulSpec { b, pole }
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        DiagKoszulSpec {
            b: self.b.iter().chain(&other.b).cloned().collect(),
            pole: self.pole.iter().chain(&other.pole).copied().collect(),
        }
    }
}

/// Whether `x∂x + b` has a kernel (equivalently a cokernel): some
/// exponent `k` in range has `k + b = 0`.
fn one_variable_resonant(b: &FieldElem, pole: bool) -> bool {
    match b.to_rational() {
        Some(q) if q.is_integer() => pole || q <= num_traits::Zero::zero(),
        _ => false,
    }
}

/// Betti numbers `h⁰..h^r` of the tensor product of the one-variable
/// complexes.
pub fn diag_log_koszul(spec: &DiagKoszulSpec) -> Vec<u64> {
    let mut betti = vec![1u64];
    for (b, &pole) in spec.b.iter().zip(&spec.pole) {
        let h = if one_variable_resonant(b, pole) { 1 } else { 0 };
        let mut next = vec![0u64; betti.len() + 1];
        for (i, &x) in betti.iter().enumerate() {
            next[i] += x * h;
            next[i + 1] += x * h;
        }
        betti = next;
    }
    betti
}
