//! Exact computer algebra for invariant rings of algebraic groups over prime
//! fields: group presentations, rational representations, first cohomology,
//! graded invariant slices and Cohen–Macaulay defect certificates.

pub mod certify;
pub mod cohom;
pub mod error;
pub mod group;
pub mod invariants;
pub mod json;
pub mod polycore;
pub mod rep;

pub use error::{Error, Result};
