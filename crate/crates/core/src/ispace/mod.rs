//! 𝕀-spaces over the truncated injection category, the box product, FCP
//! structures and the stable-equivalence and fibrancy predicates.

pub mod boxprod;
pub mod fcp;
pub mod injcat;
pub mod quotient;
pub mod random;
pub mod space;
pub mod surrogate;

pub use boxprod::{box_many, box_oracle, box_product, compare_with_oracle, BoxElem, BoxProduct};
pub use fcp::{check_fcp, subset_fcp, FcpReport, FcpStruct, FcpTables, ProductMap};
pub use injcat::{Inj, InjCat};
pub use random::random_ispace;
pub use space::{copies_ispace, free_adjunction_check, free_ispace, AdjunctionCount, ISpace, ISpaceMap, ISpaceTables};
pub use surrogate::{fibrant_surrogate, stable_equiv_surrogate, SurrogateReport, Verdict};
