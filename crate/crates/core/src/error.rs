use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("leading coefficient is not a unit")]
    NonUnit,
    #[error("modulus is not irreducible over the rationals: {0}")]
    Reducible(String),
    #[error("critical locus is not isolated: Jacobian ideal is not zero-dimensional ({0})")]
    NotZeroDimensional(String),
    #[error("reduction did not lower the degree ({from} -> {to}); f is not tame at infinity")]
    NonTameReduction { from: usize, to: usize },
    #[error("Sylvester equation is singular")]
    SingularSylvester,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("irregular part detected after {0} lattice steps")]
    IrregularPart(usize),
    #[error("irrational residue eigenvalue (characteristic polynomial {0})")]
    IrrationalResidue(String),
    #[error("insufficient truncation order: {0}")]
    InsufficientPrecision(String),
    #[error("monodromy datum unstable up to truncation order {0}")]
    Unstable(i64),
    #[error("truncation bound too small: {0}")]
    BoundTooSmall(String),
    #[error("dimension did not stabilize within the bound schedule")]
    NonStabilization,
    #[error("manifest error: {0}")]
    Manifest(String),
}

impl Error {
    /// Problems with what was asked for, as opposed to a computation that
    /// went wrong.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::NegativeExponent { .. }
                | Error::UnknownVariable(_)
                | Error::IndexOutOfRange { .. }
                | Error::NotZeroDimensional(_)
                | Error::NonTameReduction { .. }
                | Error::Precondition(_)
                | Error::BoundTooSmall(_)
                | Error::Manifest(_)
        )
    }
}
