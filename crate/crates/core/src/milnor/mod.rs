//! Jacobian ideal of `f`: Gröbner basis, Milnor algebra and critical values.

pub mod context;
pub mod groebner;
pub mod weights;

pub use context::{monomials_up_to, CriticalPart, CriticalParts, JacobianContext, NormalForm};
pub use groebner::{buchberger, GBasis};
pub use weights::{milnor_orlik_exponents, milnor_orlik_residues, quasihomogeneous_weights, weighted_milnor_number};
