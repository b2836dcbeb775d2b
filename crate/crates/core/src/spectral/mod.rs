//! Hodge-to-de Rham and Hochschild-to-cyclic pages of a projective curve.
//!
//! Global cohomology of the actual curve is out of reach, so the entries that
//! depend on it are affine expressions in the unknowns `kappa`, `c`, `k_v`,
//! `cok_v`, together with the identities the degeneration argument forces.

mod entry;
mod hc;
mod model;
mod pages;
mod render;

pub use entry::{Affine, Constraint, Entry, Unknown};
pub use hc::{hc_pages, HcPage, HcPages, DEFAULT_HC_WINDOW};
pub use model::{
    global_invariants, BranchData, CurveModel, GlobalInvariants, NonPlanarRecord, PlaneRecord, Provenance,
    SingularityRecord, UnsupportedRecord,
};
pub use pages::{
    degeneration_verdict, e1_page, e2_page, Cell, Ledger, Pos, SSPage, Verdict, VerdictReport, DEFAULT_TAIL_WINDOW,
};
pub use render::{page_json, page_text, render_page, Format};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("singularity {label} has no delta/r data")]
    MissingBranchData { label: String },
    #[error("the E1 page is only assembled for curves with planar singularities")]
    NonPlanarInput,
    #[error("empty window {lo}..{hi}")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("unknown format `{0}` (expected text or json)")]
    UnknownFormat(String),
}

#[cfg(test)]
mod tests;
