use std::collections::BTreeMap;

use serde::Serialize;

use super::entry::{Affine, Constraint, Entry, Unknown};
use super::model::{global_invariants, CurveModel, Provenance, SingularityRecord};
use super::SpectralError;

/// Tail rows shown by default; the pattern repeats for every larger `p`.
pub const DEFAULT_TAIL_WINDOW: i64 = 4;

pub type Pos = (i64, i64);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub entry: Entry,
    pub provenance: Provenance,
}

impl Cell {
    pub fn new(entry: Entry, provenance: Provenance) -> Self {
        let provenance = if matches!(entry, Entry::Symbolic(_)) {
            Provenance::Symbolic
        } else {
            provenance
        };
        Cell { entry, provenance }
    }

    fn exact(n: usize, provenance: Provenance) -> Self {
        Cell::new(Entry::Exact(n as u64), provenance)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Degenerates,
    FailsViaTau {
        witness: String,
        tau: usize,
        mu: usize,
    },
    FailsViaNonPlanar {
        witness: String,
        position: Pos,
        total_degree: i64,
    },
    Undetermined {
        reason: String,
    },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Degenerates => "Degenerates",
            Verdict::FailsViaTau { .. } => "FailsViaTau",
            Verdict::FailsViaNonPlanar { .. } => "FailsViaNonPlanar",
            Verdict::Undetermined { .. } => "Undetermined",
        }
    }
}

/// The global identity `tau = 2*delta - R` and whether it matches the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ledger {
    pub tau_total: usize,
    pub two_delta_minus_r: i64,
    pub identity_holds: bool,
    pub consistent_with_verdict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub verdict: Verdict,
    pub ledger: Option<Ledger>,
}

/// A page of a spectral sequence. Positions absent from `entries` are zero
/// unless the page is `partial`, in which case they are undetermined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSPage {
    pub title: String,
    /// Name of the filtration axis, `p` for Hodge pages and `a` for cyclic ones.
    pub axis: &'static str,
    pub entries: BTreeMap<Pos, Cell>,
    /// Rank of `d_1` leaving each position.
    pub d1_ranks: BTreeMap<Pos, Cell>,
    pub verdict: Option<Verdict>,
    pub constraints: Vec<Constraint>,
    pub notes: Vec<String>,
    pub partial: bool,
}

impl SSPage {
    fn new(title: impl Into<String>, axis: &'static str) -> Self {
        SSPage {
            title: title.into(),
            axis,
            entries: BTreeMap::new(),
            d1_ranks: BTreeMap::new(),
            verdict: None,
            constraints: Vec::new(),
            notes: Vec::new(),
            partial: false,
        }
    }

    /// Entry at `pos`; `None` only for undetermined cells of partial pages.
    pub fn entry(&self, pos: Pos) -> Option<Entry> {
        match self.entries.get(&pos) {
            Some(c) => Some(c.entry.clone()),
            None if self.partial => None,
            None => Some(Entry::Exact(0)),
        }
    }

    /// Positions whose entry is not known to vanish.
    pub fn support(&self) -> Vec<Pos> {
        self.entries
            .iter()
            .filter(|(_, c)| !c.entry.is_zero())
            .map(|(p, _)| *p)
            .collect()
    }

    /// No pair of support positions is joined by a `d_r`, `r >= 2`, of
    /// bidegree `(r, 1 - r)`.
    pub fn rules_out_higher_differentials(&self) -> bool {
        let s = self.support();
        !s.iter().any(|a| {
            s.iter()
                .any(|b| b.0 - a.0 >= 2 && b.1 - a.1 == 1 - (b.0 - a.0))
        })
    }
}

/// A `d_1` arrow leaving `from` with its rank, kernel and cokernel dimensions.
#[derive(Clone, Debug)]
pub(crate) struct Arrow {
    pub from: Pos,
    pub rank: Cell,
    pub ker: Cell,
    pub coker: Cell,
}

/// The `E_1` page of a curve whose singularities are all planar.
#[derive(Clone, Debug)]
pub(crate) struct HodgeData {
    pub e1: BTreeMap<Pos, Cell>,
    pub arrows: Vec<Arrow>,
    pub smooth: bool,
}

fn sym(a: Affine) -> Cell {
    Cell::new(Entry::from_affine(a), Provenance::Symbolic)
}

fn k(n: usize) -> Affine {
    Affine::constant(n as i64)
}

fn x(u: Unknown) -> Affine {
    Affine::unknown(u)
}

pub(crate) fn hodge_data(c: &CurveModel, tail_window: i64) -> Result<HodgeData, SpectralError> {
    if !c.all_planar() {
        return Err(SpectralError::NonPlanarInput);
    }
    let g = c.genus as usize;
    let mut e1 = BTreeMap::new();
    let mut arrows = Vec::new();
    let computed = Provenance::Computed;
    if c.is_smooth() {
        e1.insert((0, 0), Cell::exact(1, computed));
        e1.insert((0, 1), Cell::exact(g, computed));
        e1.insert((1, 0), Cell::exact(g, computed));
        e1.insert((1, 1), Cell::exact(1, computed));
        return Ok(HodgeData {
            e1,
            arrows,
            smooth: true,
        });
    }
    let gi = global_invariants(c)?;
    let (delta, tau, rho) = (gi.delta_total, gi.tau_total, c.tail_rank_total());
    let dprov = gi.provenance;
    e1.insert((0, 0), Cell::exact(1, computed));
    e1.insert((0, 1), Cell::exact(g + delta, dprov));
    e1.insert((1, 0), sym(x(Unknown::Kappa).plus(&k(tau)).minus(&x(Unknown::C))));
    e1.insert(
        (1, 1),
        sym(k(tau + 1)
            .minus(&k(g + delta))
            .plus(&x(Unknown::Kappa))
            .minus(&x(Unknown::C))),
    );
    e1.insert((2, 0), Cell::exact(tau, computed));
    arrows.push(Arrow {
        from: (0, 1),
        rank: sym(k(g + delta).minus(&x(Unknown::KerV))),
        ker: sym(x(Unknown::KerV)),
        coker: sym(x(Unknown::CokerV)),
    });
    arrows.push(Arrow {
        from: (1, 0),
        rank: sym(k(tau).minus(&x(Unknown::C))),
        ker: sym(x(Unknown::Kappa)),
        coker: sym(x(Unknown::C)),
    });
    for p in 1..=tail_window {
        e1.insert((p + 1, -p), Cell::exact(tau, computed));
        e1.insert((p + 2, -p), Cell::exact(tau, computed));
        arrows.push(Arrow {
            from: (p + 1, -p),
            rank: Cell::exact(rho, computed),
            ker: Cell::exact(tau - rho, computed),
            coker: Cell::exact(tau - rho, computed),
        });
    }
    Ok(HodgeData {
        e1,
        arrows,
        smooth: false,
    })
}

impl HodgeData {
    /// `E_2` of the subcomplex made of the columns `p >= first_column`.
    pub fn e2(&self, first_column: i64) -> BTreeMap<Pos, Cell> {
        let out_of = |pos: Pos| self.arrows.iter().find(|a| a.from == pos);
        let mut out = BTreeMap::new();
        for (&pos, cell) in self.e1.iter().filter(|(p, _)| p.0 >= first_column) {
            let leaving = out_of(pos);
            let arriving = (pos.0 > first_column)
                .then(|| out_of((pos.0 - 1, pos.1)))
                .flatten();
            let value = match (leaving, arriving) {
                (None, None) => cell.clone(),
                (Some(a), None) => a.ker.clone(),
                (None, Some(a)) => a.coker.clone(),
                (Some(o), Some(i)) => {
                    let e = cell
                        .entry
                        .affine()
                        .zip(o.rank.entry.affine())
                        .zip(i.rank.entry.affine())
                        .map(|((e, ro), ri)| e.minus(&ro).minus(&ri))
                        .expect("planar E_1 entries are affine");
                    Cell::new(Entry::from_affine(e), cell.provenance.max(o.rank.provenance))
                }
            };
            out.insert(pos, value);
        }
        out
    }
}

/// Degeneration verdict with the global dimension ledger when available.
pub fn degeneration_verdict(c: &CurveModel) -> VerdictReport {
    let verdict = if let Some(u) = c.singularities.iter().find_map(|s| match s {
        SingularityRecord::Unsupported(u) => Some(u),
        _ => None,
    }) {
        Verdict::Undetermined {
            reason: format!("{}: {}", u.label, u.reason),
        }
    } else if let Some(n) = c.singularities.iter().find_map(|s| match s {
        SingularityRecord::NonPlanar(n) => Some(n),
        _ => None,
    }) {
        Verdict::FailsViaNonPlanar {
            witness: n.label.clone(),
            position: n.obstruction.obstruction_position,
            total_degree: n.obstruction.total_degree,
        }
    } else if let Some(p) = c.planar().find(|p| !p.invariants.qh_by_saito) {
        Verdict::FailsViaTau {
            witness: p.label.clone(),
            tau: p.invariants.tau,
            mu: p.invariants.mu,
        }
    } else {
        Verdict::Degenerates
    };
    let ledger = if c.all_planar() {
        global_invariants(c).ok().map(|gi| {
            let identity_holds = gi.tau_total as i64 == gi.two_delta_minus_r();
            Ledger {
                tau_total: gi.tau_total,
                two_delta_minus_r: gi.two_delta_minus_r(),
                identity_holds,
                consistent_with_verdict: identity_holds == (verdict == Verdict::Degenerates),
            }
        })
    } else {
        None
    };
    VerdictReport { verdict, ledger }
}

fn tail_note() -> String {
    "tail rows are identical for every p; only the display window is shown".into()
}

pub fn e1_page(c: &CurveModel, tail_window: i64) -> Result<SSPage, SpectralError> {
    let data = hodge_data(c, tail_window)?;
    let mut page = SSPage::new("E1", "p");
    page.entries = data.e1.clone();
    page.d1_ranks = data.arrows.iter().map(|a| (a.from, a.rank.clone())).collect();
    page.verdict = Some(degeneration_verdict(c).verdict);
    if !data.smooth {
        page.notes.push(tail_note());
    }
    Ok(page)
}

fn degeneration_constraints(c: &CurveModel) -> Result<Vec<Constraint>, SpectralError> {
    let gi = global_invariants(c)?;
    Ok(vec![
        Constraint {
            lhs: x(Unknown::KerV).plus(&x(Unknown::Kappa)),
            rhs: gi.betti.1 as i64,
        },
        Constraint {
            lhs: x(Unknown::CokerV).plus(&x(Unknown::C)),
            rhs: 1,
        },
        Constraint {
            lhs: x(Unknown::C),
            rhs: 0,
        },
    ])
}

fn substitute_all(cells: BTreeMap<Pos, Cell>, u: Unknown, value: i64) -> BTreeMap<Pos, Cell> {
    cells
        .into_iter()
        .map(|(p, c)| {
            // Cell::new re-tags entries that stay symbolic
            let prov = match c.provenance {
                Provenance::Symbolic => Provenance::Computed,
                other => other,
            };
            (p, Cell::new(c.entry.substitute(u, value), prov))
        })
        .collect()
}

/// `E_2` of a planar curve under its verdict; `first_column` truncates the
/// filtration for the cyclic pages.
pub(crate) fn planar_e2(data: &HodgeData, verdict: &Verdict, first_column: i64) -> BTreeMap<Pos, Cell> {
    let cells = data.e2(first_column);
    if *verdict == Verdict::Degenerates && !data.smooth {
        // quasihomogeneous germs make u surjective
        substitute_all(cells, Unknown::C, 0)
    } else {
        cells
    }
}

pub fn e2_page(c: &CurveModel, tail_window: i64) -> Result<SSPage, SpectralError> {
    let report = degeneration_verdict(c);
    let mut page = SSPage::new("E2", "p");
    match &report.verdict {
        Verdict::Degenerates | Verdict::FailsViaTau { .. } => {
            let data = hodge_data(c, tail_window)?;
            page.entries = planar_e2(&data, &report.verdict, 0);
            if report.verdict == Verdict::Degenerates && !data.smooth {
                page.constraints = degeneration_constraints(c)?;
            }
            if !data.smooth {
                page.notes.push(tail_note());
            }
        }
        Verdict::FailsViaNonPlanar { .. } => {
            page.partial = true;
            page.entries.insert((0, 0), Cell::exact(1, Provenance::Computed));
            for s in &c.singularities {
                if let SingularityRecord::NonPlanar(n) = s {
                    page.entries.insert(
                        n.obstruction.obstruction_position,
                        Cell::new(Entry::Positive, Provenance::Computed),
                    );
                }
            }
            let deficit: usize = c.planar().map(|p| p.invariants.tau - p.tail_rank).sum();
            if deficit > 0 {
                for p in 1..=tail_window {
                    for pos in [(p + 1, -p), (p + 2, -p)] {
                        page.entries
                            .entry(pos)
                            .or_insert(Cell::new(Entry::AtLeast(deficit as u64), Provenance::Computed));
                    }
                }
            }
            page.notes
                .push("positions not shown are undetermined by the local data".into());
        }
        Verdict::Undetermined { .. } => {
            page.partial = true;
            page.entries.insert((0, 0), Cell::exact(1, Provenance::Computed));
            page.notes
                .push("a germ outside the lci hypothesis leaves the page undetermined".into());
        }
    }
    page.verdict = Some(report.verdict);
    Ok(page)
}
