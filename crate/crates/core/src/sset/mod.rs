//! Finite simplicial sets: explicit tables, lazily enumerated models,
//! products, smash products, spheres, components and homology.

pub mod deg;
pub mod finsset;
pub mod homology;
pub mod json;
pub mod materialize;
pub mod pi0;
pub mod product;
pub mod smash;
pub mod sphere;
pub mod traits;

pub use deg::{Deg, DegFace};
pub use finsset::{from_ordered_complex, FinSSet, FinSSetBuilder, FinSimplex, PointedFinSSet, SMap};
pub use homology::{homology, integral_homology, Coefficients, HomologyReport};
pub use materialize::{materialize, Materialized};
pub use pi0::{pi0, Pi0};
pub use product::{product, FinProduct, ProductSet};
pub use smash::{smash, Quotient, SmashSet};
pub use sphere::{standard_sphere, SphereModel};
pub use traits::{check_identities, normalized_chains, Extent, SimplicialSet};
