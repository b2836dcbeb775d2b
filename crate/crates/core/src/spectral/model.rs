use serde::Serialize;

use crate::lci::ObstructionReport;
use crate::plane::LocalInvariants;

use super::SpectralError;

/// Where a number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Computed,
    AssertedInput,
    Symbolic,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::AssertedInput => "asserted-input",
            Provenance::Symbolic => "symbolic",
        }
    }
}

/// Delta invariant and branch count of a germ with their source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchData {
    pub delta: usize,
    pub r: usize,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneRecord {
    pub label: String,
    pub invariants: LocalInvariants,
    pub tail_rank: usize,
    pub branch_data: Option<BranchData>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonPlanarRecord {
    pub label: String,
    pub obstruction: ObstructionReport,
    pub branch_data: Option<BranchData>,
}

/// A germ outside the lci hypothesis; it blocks any verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsupportedRecord {
    pub label: String,
    pub reason: String,
    pub branch_data: Option<BranchData>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularityRecord {
    Plane(PlaneRecord),
    NonPlanar(NonPlanarRecord),
    Unsupported(UnsupportedRecord),
}

impl SingularityRecord {
    pub fn label(&self) -> &str {
        match self {
            SingularityRecord::Plane(p) => &p.label,
            SingularityRecord::NonPlanar(n) => &n.label,
            SingularityRecord::Unsupported(u) => &u.label,
        }
    }

    pub fn branch_data(&self) -> Option<BranchData> {
        match self {
            SingularityRecord::Plane(p) => p.branch_data,
            SingularityRecord::NonPlanar(n) => n.branch_data,
            SingularityRecord::Unsupported(u) => u.branch_data,
        }
    }

    pub fn as_plane(&self) -> Option<&PlaneRecord> {
        match self {
            SingularityRecord::Plane(p) => Some(p),
            _ => None,
        }
    }
}

/// An integral projective curve: normalization genus plus analyzed singularities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveModel {
    pub label: String,
    pub genus: u32,
    pub singularities: Vec<SingularityRecord>,
}

impl CurveModel {
    pub fn is_smooth(&self) -> bool {
        self.singularities.is_empty()
    }

    pub fn all_planar(&self) -> bool {
        self.singularities.iter().all(|s| s.as_plane().is_some())
    }

    pub fn planar(&self) -> impl Iterator<Item = &PlaneRecord> {
        self.singularities.iter().filter_map(SingularityRecord::as_plane)
    }

    /// Sum of Tjurina numbers over planar germs.
    pub fn tau_total(&self) -> usize {
        self.planar().map(|p| p.invariants.tau).sum()
    }

    /// Sum of local tail ranks over planar germs.
    pub fn tail_rank_total(&self) -> usize {
        self.planar().map(|p| p.tail_rank).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalInvariants {
    pub delta_total: usize,
    pub tau_total: usize,
    pub mu_total: usize,
    #[serde(rename = "R")]
    pub r_total: usize,
    pub p_a: usize,
    pub betti: (usize, usize, usize),
    /// Weakest provenance among the summed branch data.
    pub provenance: Provenance,
}

impl GlobalInvariants {
    /// `2*delta - R`.
    pub fn two_delta_minus_r(&self) -> i64 {
        2 * self.delta_total as i64 - self.r_total as i64
    }
}

pub fn global_invariants(c: &CurveModel) -> Result<GlobalInvariants, SpectralError> {
    let mut delta = 0;
    let mut r_total = 0;
    let mut provenance = Provenance::Computed;
    for s in &c.singularities {
        let b = s.branch_data().ok_or_else(|| SpectralError::MissingBranchData {
            label: s.label().to_string(),
        })?;
        delta += b.delta;
        r_total += b.r - 1;
        provenance = provenance.max(b.provenance);
    }
    let g = c.genus as usize;
    Ok(GlobalInvariants {
        delta_total: delta,
        tau_total: c.tau_total(),
        mu_total: c.planar().map(|p| p.invariants.mu).sum(),
        r_total,
        p_a: g + delta,
        betti: (1, 2 * g + r_total, 1),
        provenance,
    })
}
