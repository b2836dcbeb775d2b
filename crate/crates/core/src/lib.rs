//! Exact local invariants of curve singularities and the degeneration of the
//! derived Hodge-to-de Rham and Hochschild-to-cyclic spectral sequences of
//! integral projective lci curves.

pub mod series;
pub mod linalg;
mod echelon;
pub mod jets;
pub mod branch;
pub mod plane;
pub mod lci;
pub mod spectral;
pub mod report;
