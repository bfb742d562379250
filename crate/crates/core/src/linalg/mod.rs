//! Exact integer linear algebra: Smith normal form, sparse chain complexes
//! and finitely generated abelian groups.

pub mod abgroup;
pub mod chain;
pub mod finite;
pub mod matrix;

pub use abgroup::AbGroup;
pub use chain::{homology_iso, mapping_cone, ChainComplex, ChainMap, IsoVerdict, SparseMatrix, SparseVec};
pub use finite::{group_from_table, FiniteAbelian};
pub use matrix::IntMatrix;
