//! The full pipeline: local analysis of every germ, global invariants, pages and checks.

use serde::Serialize;

use crate::branch::{self, BranchError, DeltaReport, WORKING_ORDER_CAP};
use crate::jets::JetError;
use crate::lci::{obstruction, parametrization_order, verify_parametrization, LciError, LciPresentation, ObstructionReport};
use crate::plane::{LocalInvariants, MultByF, PlaneAnalysis, PlaneError, PlaneSingularity, TailMap};
use crate::series::{substitute, BranchParam, Monomial, Poly, Rational, Vars};
use crate::spectral::{
    degeneration_verdict, e1_page, e2_page, global_invariants, hc_pages, BranchData, CurveModel, GlobalInvariants,
    HcPages, NonPlanarRecord, PlaneRecord, Provenance, SSPage, SingularityRecord, SpectralError, UnsupportedRecord,
    VerdictReport, DEFAULT_HC_WINDOW, DEFAULT_TAIL_WINDOW,
};

use super::schema::{Asserted, CurveInput, NonLciGerm, SingularityInput};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AnalyzeOptions {
    /// Fixed jet truncation; `None` picks and doubles it automatically.
    pub truncation: Option<u32>,
    pub hc_window: (i64, i64),
    /// Last tail column `p` displayed on Hodge pages.
    pub tail_window: i64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            truncation: None,
            hc_window: DEFAULT_HC_WINDOW,
            tail_window: DEFAULT_TAIL_WINDOW,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("{label}: {error}")]
    Plane { label: String, error: PlaneError },
    #[error("{label}: {error}")]
    Lci { label: String, error: LciError },
}

impl AnalysisError {
    /// 3 when a truncation or working-order cap was hit, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::Plane {
                error:
                    PlaneError::NonIsolated { .. }
                    | PlaneError::WitnessOrderInsufficient { .. }
                    | PlaneError::Jet(JetError::NotMPrimary { .. }),
                ..
            } => 3,
            _ => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneReport {
    pub label: String,
    pub f: Poly,
    pub weights: Option<(Rational, Rational)>,
    pub truncation: u32,
    pub milnor_basis: Vec<Monomial>,
    pub tjurina_basis: Vec<Monomial>,
    pub invariants: LocalInvariants,
    pub mult: MultByF,
    pub tail: TailMap,
    pub tail_scalar: Option<TailMap>,
    pub delta: Option<DeltaReport>,
    pub branch_data: Option<BranchData>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LciReport {
    pub label: String,
    pub variables: Vars,
    pub equations: Vec<Poly>,
    pub obstruction: ObstructionReport,
    pub branch_data: Option<BranchData>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsupportedReport {
    pub label: String,
    pub variables: Vars,
    pub equations: Vec<Poly>,
    pub reason: String,
    pub branch_data: Option<BranchData>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum SingularityReport {
    Plane(PlaneReport),
    Lci(LciReport),
    Unsupported(UnsupportedReport),
}

impl SingularityReport {
    pub fn label(&self) -> &str {
        match self {
            SingularityReport::Plane(p) => &p.label,
            SingularityReport::Lci(l) => &l.label,
            SingularityReport::Unsupported(u) => &u.label,
        }
    }

    pub fn checks(&self) -> &[Check] {
        match self {
            SingularityReport::Plane(p) => &p.checks,
            SingularityReport::Lci(l) => &l.checks,
            SingularityReport::Unsupported(u) => &u.checks,
        }
    }

    pub fn as_plane(&self) -> Option<&PlaneReport> {
        match self {
            SingularityReport::Plane(p) => Some(p),
            _ => None,
        }
    }

    fn record(&self) -> SingularityRecord {
        match self {
            SingularityReport::Plane(p) => {
                let mut invariants = p.invariants.clone();
                invariants.delta = p.branch_data.map(|b| b.delta);
                invariants.r = p.branch_data.map(|b| b.r);
                SingularityRecord::Plane(PlaneRecord {
                    label: p.label.clone(),
                    invariants,
                    tail_rank: p.tail.rank,
                    branch_data: p.branch_data,
                })
            }
            SingularityReport::Lci(l) => SingularityRecord::NonPlanar(NonPlanarRecord {
                label: l.label.clone(),
                obstruction: l.obstruction.clone(),
                branch_data: l.branch_data,
            }),
            SingularityReport::Unsupported(u) => SingularityRecord::Unsupported(UnsupportedRecord {
                label: u.label.clone(),
                reason: u.reason.clone(),
                branch_data: u.branch_data,
            }),
        }
    }
}

/// Everything computed for one curve document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub label: String,
    pub genus: u32,
    pub notes: String,
    pub options: AnalyzeOptions,
    pub singularities: Vec<SingularityReport>,
    pub model: CurveModel,
    pub global: Result<GlobalInvariants, SpectralError>,
    pub verdict: VerdictReport,
    pub e1: Result<SSPage, SpectralError>,
    pub e2: Result<SSPage, SpectralError>,
    pub hc: Result<HcPages, SpectralError>,
    pub checks: Vec<Check>,
}

impl Report {
    /// Per-singularity checks (prefixed by label) followed by global ones.
    pub fn all_checks(&self) -> Vec<(Option<&str>, &Check)> {
        self.singularities
            .iter()
            .flat_map(|s| s.checks().iter().map(move |c| (Some(s.label()), c)))
            .chain(self.checks.iter().map(|c| (None, c)))
            .collect()
    }

    pub fn count(&self, status: Status) -> usize {
        self.all_checks().iter().filter(|(_, c)| c.status == status).count()
    }

    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

fn tag(p: Provenance) -> &'static str {
    p.tag()
}

fn branch_checks(checks: &mut Vec<Check>, mu: Option<usize>, data: Option<BranchData>, asserted: Option<&Asserted>) {
    if let (Some(a), Some(d)) = (asserted, data) {
        if d.provenance == Provenance::Computed {
            checks.push(Check::new(
                "asserted branch data",
                a.delta == d.delta && a.r == d.r,
                format!("asserted delta={} r={}, computed delta={} r={}", a.delta, a.r, d.delta, d.r),
            ));
        }
    }
    let Some(mu) = mu else { return };
    match data {
        Some(d) => {
            let predicted = 2 * d.delta as i64 - d.r as i64 + 1;
            checks.push(Check::new(
                "milnor formula",
                predicted == mu as i64,
                format!("mu={mu}, 2*delta-r+1={predicted} [{}]", tag(d.provenance)),
            ));
        }
        None => checks.push(Check::skipped("milnor formula", "no branch data")),
    }
}

fn analyze_plane(
    sing: &PlaneSingularity,
    asserted: Option<&Asserted>,
    opts: &AnalyzeOptions,
) -> Result<PlaneReport, PlaneError> {
    let a = PlaneAnalysis::new(sing, opts.truncation)?;
    let (mu, tau) = (a.mu(), a.tau());
    let mult = a.mult_by_f()?;
    let tail = a.tail_map_general()?;
    let tail_scalar = match sing.weights() {
        Some(_) => Some(a.tail_map_wh_scalar()?),
        None => None,
    };
    let truncation = a.milnor_algebra().truncation();
    let raised = PlaneAnalysis::new(sing, Some(truncation + 2))?;
    let raised_tail = raised.tail_map_general()?;

    let mut checks = Vec::new();
    let mut delta = None;
    let mut branch_data = asserted.map(|x| BranchData {
        delta: x.delta,
        r: x.r,
        provenance: Provenance::AssertedInput,
    });
    if let Some(bs) = sing.branches() {
        match branch::branch_delta(sing.f(), bs, None) {
            Ok(d) => {
                let again = branch::branch_delta(sing.f(), bs, Some(d.working_order + 2));
                checks.push(Check::new(
                    "delta order-stable",
                    again.as_ref().is_ok_and(|x| (x.delta, x.r) == (d.delta, d.r)),
                    format!("working order {} and {}", d.working_order, d.working_order + 2),
                ));
                branch_data = Some(BranchData {
                    delta: d.delta,
                    r: d.r,
                    provenance: Provenance::Computed,
                });
                delta = Some(d);
            }
            Err(e) => checks.push(Check::new("branch data", false, e.to_string())),
        }
    }
    branch_checks(&mut checks, Some(mu), branch_data, asserted);

    let invariants = a.invariants(delta.as_ref());
    checks.push(Check::new("tau <= mu", tau <= mu, format!("tau={tau}, mu={mu}")));
    checks.push(if invariants.wh_in_coords {
        Check::new(
            "weighted homogeneous implies quasihomogeneous",
            invariants.qh_by_saito,
            format!("tau={tau}, mu={mu}"),
        )
    } else {
        let detail = if invariants.qh_by_saito {
            "flagged: tau = mu but no rational weights exist in these coordinates"
        } else {
            "no weights in these coordinates"
        };
        Check::skipped("weighted homogeneous implies quasihomogeneous", detail)
    });
    checks.push(Check::new(
        "tail dimensions",
        mult.kernel_dim() == tau && mult.cokernel_dim() == tau,
        format!(
            "dim ker(f)={}, dim coker(f)={}, tau={tau}",
            mult.kernel_dim(),
            mult.cokernel_dim()
        ),
    ));
    checks.push(if sing.weights().is_some() {
        Check::new(
            "euler relation kills f",
            mult.is_zero_map(),
            "multiplication by f on the Milnor algebra",
        )
    } else {
        Check::skipped("euler relation kills f", "no weights")
    });
    checks.push(Check::new(
        "witness independence",
        tail.witness_independent == Some(true),
        format!(
            "witness order {}, second pivot order seeded",
            tail.witness_order.unwrap_or_default()
        ),
    ));
    checks.push(match &tail_scalar {
        Some(s) => Check::new(
            "scalar tail formula",
            s.matrix == tail.matrix,
            "weighted scalar matrix against the witness matrix",
        ),
        None => Check::skipped("scalar tail formula", "no weights"),
    });
    checks.push(if invariants.qh_by_saito {
        Check::new(
            "quasihomogeneous tail is an isomorphism",
            tail.rank == tau,
            format!("rank={}, tau={tau}", tail.rank),
        )
    } else {
        Check::skipped(
            "quasihomogeneous tail is an isomorphism",
            format!("not quasihomogeneous; tail rank {} recorded", tail.rank),
        )
    });
    let stable = raised.mu() == mu
        && raised.tau() == tau
        && raised.milnor_algebra().basis() == a.milnor_algebra().basis()
        && raised.tjurina_algebra().basis() == a.tjurina_algebra().basis()
        && raised_tail.matrix == tail.matrix;
    checks.push(Check::new(
        "stabilization",
        stable,
        format!("colengths and tail matrix at truncation {} and {}", truncation, truncation + 2),
    ));

    Ok(PlaneReport {
        label: sing.label().to_string(),
        f: sing.f().clone(),
        weights: sing.weights().cloned(),
        truncation,
        milnor_basis: a.milnor_algebra().basis(),
        tjurina_basis: a.tjurina_algebra().basis(),
        invariants,
        mult,
        tail,
        tail_scalar,
        delta,
        branch_data,
        checks,
    })
}

/// Delta of a single parametrized branch, doubling the order until the conductor appears.
fn parametrization_delta(b: &BranchParam) -> Result<(usize, u32), BranchError> {
    let cap = b.precision().unwrap_or(WORKING_ORDER_CAP);
    let mut order = parametrization_order(b).min(cap);
    loop {
        match branch::delta_one_branch(b, order) {
            Err(BranchError::NoConductor { .. }) if order < cap => order = (2 * order).min(cap),
            other => return other.map(|d| (d, order)),
        }
    }
}

/// Branch data of an irreducible parametrized germ, falling back to asserted values.
fn space_branch_data(
    param: Option<&BranchParam>,
    on_curve: Option<bool>,
    asserted: Option<&Asserted>,
    checks: &mut Vec<Check>,
) -> Option<BranchData> {
    let mut data = asserted.map(|a| BranchData {
        delta: a.delta,
        r: a.r,
        provenance: Provenance::AssertedInput,
    });
    match (param, on_curve) {
        (Some(b), Some(true)) => match parametrization_delta(b) {
            Ok((delta, order)) => {
                checks.push(Check::new(
                    "delta from parametrization",
                    true,
                    format!("semigroup conductor found at order {order}"),
                ));
                data = Some(BranchData {
                    delta,
                    r: 1,
                    provenance: Provenance::Computed,
                });
            }
            Err(e) => checks.push(Check::new("delta from parametrization", false, e.to_string())),
        },
        (Some(_), _) => {}
        (None, _) => checks.push(Check::skipped("parametrization", "none supplied")),
    }
    if let Some(ok) = on_curve {
        checks.push(Check::new(
            "parametrization",
            ok,
            "every equation vanishes on the parametrization",
        ));
    }
    branch_checks(checks, None, data, asserted);
    data
}

fn analyze_lci(pres: &LciPresentation, asserted: Option<&Asserted>) -> Result<LciReport, LciError> {
    let obs = obstruction(pres)?;
    let mut checks = Vec::new();
    let on_curve = match pres.parametrization() {
        Some(_) => Some(verify_parametrization(pres)?),
        None => None,
    };
    let branch_data = space_branch_data(pres.parametrization(), on_curve, asserted, &mut checks);
    checks.push(Check::new(
        "jacobian in maximal ideal",
        obs.jacobian_in_m,
        "minimal presentation",
    ));
    checks.push(Check::new(
        "cokernel modulo m",
        obs.coker_mod_m_dim == obs.e - 1 && obs.nonzero_h_minus1,
        format!(
            "dim = {} with phi of rank {} at the origin",
            obs.coker_mod_m_dim, obs.phi_rank_at_origin
        ),
    ));
    Ok(LciReport {
        label: pres.label().to_string(),
        variables: pres.variables().clone(),
        equations: pres.equations().to_vec(),
        obstruction: obs,
        branch_data,
        checks,
    })
}

fn analyze_non_lci(germ: &NonLciGerm, asserted: Option<&Asserted>) -> Result<UnsupportedReport, LciError> {
    let mut checks = Vec::new();
    let on_curve = match &germ.parametrization {
        Some(b) => {
            let order = parametrization_order(b);
            let mut ok = true;
            for f in &germ.equations {
                ok &= substitute(f, b, Some(order))?.is_zero();
            }
            Some(ok)
        }
        None => None,
    };
    let branch_data = space_branch_data(germ.parametrization.as_ref(), on_curve, asserted, &mut checks);
    Ok(UnsupportedReport {
        label: germ.label.clone(),
        variables: germ.variables.clone(),
        equations: germ.equations.clone(),
        reason: format!(
            "{} equations in {} variables, declared not a complete intersection",
            germ.equations.len(),
            germ.variables.len()
        ),
        branch_data,
        checks,
    })
}

fn analyze_one(s: &SingularityInput, opts: &AnalyzeOptions) -> Result<SingularityReport, AnalysisError> {
    let label = s.label().to_string();
    match s {
        SingularityInput::Plane { sing, asserted } => analyze_plane(sing, asserted.as_ref(), opts)
            .map(SingularityReport::Plane)
            .map_err(|error| AnalysisError::Plane { label, error }),
        SingularityInput::Lci { pres, asserted } => analyze_lci(pres, asserted.as_ref())
            .map(SingularityReport::Lci)
            .map_err(|error| AnalysisError::Lci { label, error }),
        SingularityInput::NonLci { germ, asserted } => analyze_non_lci(germ, asserted.as_ref())
            .map(SingularityReport::Unsupported)
            .map_err(|error| AnalysisError::Lci { label, error }),
    }
}

fn global_checks(verdict: &VerdictReport, hc: &Result<HcPages, SpectralError>) -> Vec<Check> {
    let mut checks = Vec::new();
    checks.push(match &verdict.ledger {
        Some(l) => Check::new(
            "ledger",
            l.consistent_with_verdict,
            format!(
                "tau_total={}, 2*delta-R={}, verdict {}",
                l.tau_total,
                l.two_delta_minus_r,
                verdict.verdict.name()
            ),
        ),
        None => Check::skipped("ledger", "needs branch data for every planar germ"),
    });
    checks.push(match hc {
        Ok(h) => Check::new(
            "cyclic verdict matches Hodge verdict",
            h.verdict == verdict.verdict,
            format!("{} / {}", h.verdict.name(), verdict.verdict.name()),
        ),
        Err(e) => Check::skipped("cyclic verdict matches Hodge verdict", e.to_string()),
    });
    checks
}

/// Runs every local and global computation. Germs are analyzed concurrently;
/// the report is assembled in document order, so output is deterministic.
pub fn analyze(c: &CurveInput, opts: &AnalyzeOptions) -> Result<Report, AnalysisError> {
    let results: Vec<Result<SingularityReport, AnalysisError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = c
            .singularities
            .iter()
            .map(|s| scope.spawn(move || analyze_one(s, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("singularity analysis panicked"))
            .collect()
    });
    let singularities = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let model = CurveModel {
        label: c.label.clone(),
        genus: c.genus,
        singularities: singularities.iter().map(SingularityReport::record).collect(),
    };
    let verdict = degeneration_verdict(&model);
    let global = global_invariants(&model);
    let e1 = e1_page(&model, opts.tail_window);
    let e2 = e2_page(&model, opts.tail_window);
    let hc = hc_pages(&model, opts.hc_window, opts.tail_window);
    let checks = global_checks(&verdict, &hc);
    Ok(Report {
        label: c.label.clone(),
        genus: c.genus,
        notes: c.notes.clone(),
        options: *opts,
        singularities,
        model,
        global,
        verdict,
        e1,
        e2,
        hc,
        checks,
    })
}
