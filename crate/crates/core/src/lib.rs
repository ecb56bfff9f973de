// `!(x > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod carleman;
pub mod doubling;
pub mod error;
pub mod field;
pub mod lab;
pub mod nodal;
pub mod solution;

pub use error::{LabError, Result};
