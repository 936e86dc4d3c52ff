//! Generating polynomials of integer compositions with parts in a finite set,
//! and the distribution of the largest part's multiplicity modulo `q`.

// `!(x < tol)` is deliberate throughout: NaN must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod balance;
pub mod cli;
pub mod composition;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod parts;
pub mod properties;
pub mod spectral;

pub use composition::{CompositionPoly, ResidueDistribution};
pub use error::{Error, Result};
pub use parts::{validate_part_set, PartSet};
