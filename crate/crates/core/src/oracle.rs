//! Independent predictions of the monodromy datum from the Milnor algebra.

use crate::arith::field::{rat, Rational};
use crate::milnor::{milnor_orlik_residues, quasihomogeneous_weights, JacobianContext};
use crate::turrittin::{ExponentialPart, MonodromyDatum, PartDatum};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    /// No critical points.
    Empty,
    MilnorOrlik,
    Morse,
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Empty => "empty",
            OracleKind::MilnorOrlik => "milnor-orlik",
            OracleKind::Morse => "morse",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Oracle {
    pub kind: OracleKind,
    pub datum: MonodromyDatum,
}

/// Single part at `0` with residues `Σ(a_i+1)w_i mod 1`.
pub fn milnor_orlik_datum(ctx: &JacobianContext) -> Option<MonodromyDatum> {
    let w = quasihomogeneous_weights(ctx.f())?;
    if ctx.milnor_number() == 0 {
        return Some(MonodromyDatum::empty());
    }
    let residues = milnor_orlik_residues(&w, ctx.standard_monomials());
    Some(MonodromyDatum::new(vec![PartDatum::new(
        ExponentialPart::rational(Rational::from_integer(0.into()), residues.len()),
        residues,
    )]))
}

/// One rank-one part per critical value with residue `n/2 mod 1`, when
/// the characteristic polynomial of multiplication by `f` is squarefree.
pub fn morse_datum(ctx: &JacobianContext) -> Option<MonodromyDatum> {
    let parts = ctx.critical_parts();
    if parts.iter().any(|p| p.multiplicity != 1) {
        return None;
    }
    let half = rat(ctx.nvars() as i64, 2);
    Some(MonodromyDatum::new(
        parts
            .iter()
            .map(|p| PartDatum::new(ExponentialPart::new(p.minpoly.clone(), 1), [half.clone()]))
            .collect(),
    ))
}

/// Milnor–Orlik when `f` is quasi-homogeneous, else Morse data when every
/// critical point is nondegenerate; otherwise the reason none applies.
pub fn select_oracle(ctx: &JacobianContext) -> Result<Oracle, String> {
    if ctx.milnor_number() == 0 {
        return Ok(Oracle { kind: OracleKind::Empty, datum: MonodromyDatum::empty() });
    }
    if let Some(datum) = milnor_orlik_datum(ctx) {
        return Ok(Oracle { kind: OracleKind::MilnorOrlik, datum });
    }
    if let Some(datum) = morse_datum(ctx) {
        return Ok(Oracle { kind: OracleKind::Morse, datum });
    }
    Err("not quasi-homogeneous and some critical point is degenerate".into())
}
