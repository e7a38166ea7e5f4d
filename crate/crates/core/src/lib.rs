//! Exact-arithmetic toolkit for graded module decompositions, nilpotent orbit
//! invariants, symmetric-space coset data, and truncated character series.
//!
//! Everything computes over one of three scalar domains — the rationals, a
//! prime field, or a cyclotomic field — with no floating point anywhere, so
//! every reported number is exact and every check is a hard equality.

pub mod error;
pub mod exact;
pub mod gradedsl2;
pub mod io;
pub mod lseries;
pub mod orbits;
pub mod par;
pub mod symspace;

pub use error::{Error, Result};
