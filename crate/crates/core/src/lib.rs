//! Simplicial homotopy on finite complexes: contiguity, strong collapses,
//! Moore path complexes, simplicial fibrations with constructive lifts, and
//! exact small-scale computation of scat, discrete TC and Švarc genus.

pub mod budget;
pub mod complexes;
pub mod contiguity;
pub mod error;
pub mod fibrations;
pub mod format;
pub mod invariants;
pub mod moore;
mod search;

pub use budget::Budget;
pub use complexes::{build_complex, Complex, SimplicialMap};
pub use error::{Error, Result};

/// Vertex ids are non-negative integers.
pub type Vertex = u32;
