// Negated float comparisons below are deliberate: they send NaN down the error path.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod linalg;
pub mod metric;
pub mod optimize;
pub mod ptqubit;
pub mod rate;

pub use error::{Error, Result};
