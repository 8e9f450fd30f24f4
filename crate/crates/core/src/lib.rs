//! Character-table invariants of p-blocks, in exact arithmetic.
//!
//! The pipeline reads a character table ([`chartable`]), distributes its
//! irreducible characters into p-blocks ([`blocks`]), analyzes the p-section
//! Gram matrices of each block ([`sections`]) and assembles the defect-group
//! invariants visible from the table ([`invariants`]). Everything is computed
//! over [`cyclotomic::Cyclotomic`] numbers; no floating point is involved.

pub mod blocks;
pub mod chartable;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod numtheory;
pub mod report;
pub mod sections;

pub use cyclotomic::{Cyclotomic, FiniteFieldElem, LocalContext};
pub use error::{Error, Result};
