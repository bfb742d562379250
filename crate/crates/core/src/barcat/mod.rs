//! Finite categories, diagrams of simplicial sets over them, nerves, bar
//! constructions and homotopy colimits.

pub mod bar;
pub mod cat;
pub mod diagram;
pub mod interchange;

pub use bar::{
    bar, bar_homology, colimit_of_components, hocolim, induced_hocolim_map, nerve, BarComplex, BarProvenance,
    BarSimplex, EquivalenceVerdict, HocolimMap,
};
pub use cat::{comma_category, CommaCategory, FinCat, FinCatTables, FinFunctor};
pub use diagram::{CoDiagramF, DiagramF, DiagramTables};
pub use interchange::{interchange_homotopy_check, InterchangeReport};

#[cfg(test)]
mod tests;
