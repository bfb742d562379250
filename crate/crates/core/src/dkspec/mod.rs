//! Finite commutative rings, Dold–Kan models, Eilenberg–MacLane ring
//! spectra and the `Σ•₊ ⊣ Ω•` adjunction.

pub mod chains;
pub mod dk;
pub mod lattice;
pub mod omega;
pub mod ring;
pub mod sigma;
pub mod spectrum;

pub use dk::{DkModel, DkModelTables, DkRealization, DkSimplex};
pub use lattice::{Scalars, Submodule};
pub use ring::{FinCommRing, RingSpec};
