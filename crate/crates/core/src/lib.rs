//! Exact and numerical tools for degenerations of type IV Hodge structures.
// Matrix code reads better with explicit indices; negated float comparisons
// are deliberate so that NaN falls on the rejecting side.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod field;
pub mod geomclass;
pub mod json;
pub mod linalg;
pub mod monodromy;
pub mod arrangement;
pub mod cli;
pub mod period;
pub mod qspace;

pub use error::{Error, Result};
