//! Exact arithmetic: rationals, number fields, polynomials, matrices and
//! truncated Laurent series.

pub mod factor;
pub mod field;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod series;
pub mod upoly;

pub use factor::{factor_rational, rational_roots, squarefree_decomposition};
pub use field::{int, rat, Field, FieldElem, NumberField, Rational};
pub use matrix::{Matrix, Sylvester};
pub use parse::{infer_nvars, parse_polynomial};
pub use poly::{variable_names, Monomial, MonomialOrder, MultiPoly, OrderKind};
pub use series::{MatSeries, USeries};
pub use upoly::UniPoly;
