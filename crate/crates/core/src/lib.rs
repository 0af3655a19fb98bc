pub mod arith;
pub mod brieskorn;
pub mod cli;
pub mod localmodels;
pub mod error;
pub mod milnor;
pub mod oracle;
pub mod turrittin;

pub use error::{Error, Result};
