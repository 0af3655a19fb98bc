//! Germ-level models computed by direct enumeration, used as oracles.

pub mod diag;
pub mod example13;
pub mod koszul;

pub use diag::{diag_log_koszul, DiagKoszulSpec};
pub use example13::{
    formal_cohomology_vanishes_1var, formal_solve_1var, laurent_rank_1var, LaurentRank, LocalizedElem, LocalizedRing,
};
pub use koszul::{monomial_koszul, KoszulModel, KoszulResult};
