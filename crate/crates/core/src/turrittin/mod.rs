//! Formal normal form of `u²∂u = B(u)`: splitting by exponential parts,
//! untwisting, reduction to logarithmic form and residue normalization.

pub mod datum;
pub mod gauge;
pub mod moser;
pub mod pipeline;
pub mod residues;
pub mod rh;
pub mod split;

pub use datum::{datum_equal, ExponentialPart, MonodromyDatum, PartDatum};
pub use gauge::{check_gauge, gauge_transform, GaugeCertificate};
pub use moser::{moser_rank_reduce, MoserResult};
pub use pipeline::{default_truncation, extract_at, extract_monodromy, truncation_cap, Certificate, Extraction};
pub use residues::{jordan_partition, normalize_residues, rational_eigenvalues, Normalized};
pub use rh::rh_inverse;
pub use split::{remove_exponential_twist, split_by_exponential_parts, split_root, RationalBlock};
