//! Finite combinatorial models of diagram spectra.
//!
//! Spaces are finite (or lazily enumerated) simplicial sets, weak
//! equivalences are replaced by π₀ plus integral homology in a stated range,
//! and every truncated answer carries the range in which it is valid.

pub mod barcat;
pub mod cli;
pub mod dkspec;
pub mod error;
pub mod gammaunits;
pub mod ispace;
pub mod linalg;
pub mod sset;
pub mod util;

pub use error::{Error, Result};
