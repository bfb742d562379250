//! Units of ring spectra: π₀-monoids of FCPs, `GL₁•`, the Γ-space built
//! from a commutative FCP, its Segal maps, a first delooping and group
//! completion.

pub mod gamma;
pub mod icat;
pub mod monoid;
pub mod pipeline;
pub mod segal;

pub use gamma::{gamma_construct, FunctorialityReport, GammaProvenance, GammaSpace};
pub use icat::{BasedMap, ICatN};
pub use monoid::{
    gl1_bullet, pi0_monoid, ring_unit_group, units_fcp, FinMonoid, Gl1Bullet, GroupCompletion, Pi0Monoid, UnitsFcp,
};
pub use segal::{
    group_completion_pi0, segal_check, segal_machine_delooping, DeloopingReport, GroupCompletionPi0, SegalLevel,
    SegalReport,
};
pub use pipeline::{gl1_pipeline, gl1_pipeline_staged, group_bar_h1, Gl1Config, Gl1Report, StageError};
