use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::linalg::Matrix;
use crate::plane::TailMap;
use crate::series::{format_monomial, Monomial, Poly, Vars};
use crate::spectral::{page_json, page_text, BranchData, Format, HcPages, SSPage, SpectralError};

use super::analyze::{Check, LciReport, PlaneReport, Report, SingularityReport, Status, UnsupportedReport};

const COMPUTED: &str = "computed";

fn tagged(value: impl Serialize, provenance: &str) -> Value {
    json!({ "value": value, "provenance": provenance })
}

fn computed(value: impl Serialize) -> Value {
    tagged(value, COMPUTED)
}

fn monomials(vars: &Vars, ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(|m| format_monomial(vars, m)).collect()
}

fn polys(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
    }
}

fn checks_json(cs: &[Check]) -> Value {
    serde_json::to_value(cs).expect("checks serialize")
}

fn tail_json(t: &TailMap) -> Value {
    json!({
        "matrix": computed(t.matrix.to_strings()),
        "rank": computed(t.rank),
        "witness_order": t.witness_order.map(computed),
        "witness_independent": t.witness_independent,
    })
}

fn branch_json(b: Option<BranchData>) -> Value {
    match b {
        Some(b) => json!({
            "delta": tagged(b.delta, b.provenance.tag()),
            "r": tagged(b.r, b.provenance.tag()),
        }),
        None => Value::Null,
    }
}

fn plane_json(p: &PlaneReport) -> Value {
    let vars = p.f.vars();
    let inv = &p.invariants;
    json!({
        "kind": "plane",
        "label": p.label,
        "f": p.f.to_string(),
        "variables": vars.to_vec(),
        "weights": p.weights.as_ref().map(|(a, b)| vec![a.to_string(), b.to_string()]),
        "truncation": computed(p.truncation),
        "mu": computed(inv.mu),
        "tau": computed(inv.tau),
        "quasihomogeneous": inv.qh_by_saito,
        "weighted_homogeneous_in_coordinates": inv.wh_in_coords,
        "milnor_basis": monomials(vars, &p.milnor_basis),
        "tjurina_basis": monomials(vars, &p.tjurina_basis),
        "mult_by_f": {
            "kernel_dim": computed(p.mult.kernel_dim()),
            "cokernel_dim": computed(p.mult.cokernel_dim()),
        },
        "tail": tail_json(&p.tail),
        "tail_scalar": p.tail_scalar.as_ref().map(tail_json),
        "branch_data": branch_json(p.branch_data),
        "branches": p.delta.as_ref().map(|d| json!({
            "per_branch_delta": computed(&d.per_branch_delta),
            "pairwise_intersections": computed(&d.pairwise_intersections),
            "working_order": computed(d.working_order),
        })),
        "checks": checks_json(&p.checks),
    })
}

fn lci_json(l: &LciReport) -> Value {
    let o = &l.obstruction;
    json!({
        "kind": "lci",
        "label": l.label,
        "variables": l.variables.to_vec(),
        "equations": polys(&l.equations),
        "embedding_dimension": computed(o.e),
        "term_ranks": computed(&o.term_ranks),
        "coker_mod_m_dim": computed(o.coker_mod_m_dim),
        "phi_rank_at_origin": computed(o.phi_rank_at_origin),
        "jacobian_in_m": o.jacobian_in_m,
        "obstruction_position": computed(o.obstruction_position),
        "total_degree": computed(o.total_degree),
        "branch_data": branch_json(l.branch_data),
        "checks": checks_json(&l.checks),
    })
}

fn unsupported_json(u: &UnsupportedReport) -> Value {
    json!({
        "kind": "unsupported",
        "label": u.label,
        "variables": u.variables.to_vec(),
        "equations": polys(&u.equations),
        "reason": u.reason,
        "branch_data": branch_json(u.branch_data),
        "checks": checks_json(&u.checks),
    })
}

fn page_or_error(p: &Result<SSPage, SpectralError>) -> Value {
    match p {
        Ok(p) => page_json(p),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn hc_json(hc: &Result<HcPages, SpectralError>) -> Value {
    match hc {
        Ok(h) => json!({
            "window": [h.window.0, h.window.1],
            "verdict": h.verdict,
            "pieces": h.pages.values().map(|p| json!({
                "m": p.m,
                "certified_at_e2": p.certified_at_e2,
                "e1": page_json(&p.e1),
                "e2": page_json(&p.e2),
            })).collect::<Vec<_>>(),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// Structured report; keys are sorted, so equal reports serialize identically.
pub fn report_json(r: &Report) -> Value {
    let global = match &r.global {
        Ok(g) => {
            let p = g.provenance.tag();
            json!({
                "delta": tagged(g.delta_total, p),
                "R": tagged(g.r_total, p),
                "tau": computed(g.tau_total),
                "mu": computed(g.mu_total),
                "p_a": tagged(g.p_a, p),
                "betti": tagged([g.betti.0, g.betti.1, g.betti.2], p),
                "two_delta_minus_r": tagged(g.two_delta_minus_r(), p),
            })
        }
        Err(e) => json!({ "error": e.to_string() }),
    };
    json!({
        "label": r.label,
        "genus": tagged(r.genus, "asserted-input"),
        "notes": r.notes,
        "options": r.options,
        "singularities": r.singularities.iter().map(|s| match s {
            SingularityReport::Plane(p) => plane_json(p),
            SingularityReport::Lci(l) => lci_json(l),
            SingularityReport::Unsupported(u) => unsupported_json(u),
        }).collect::<Vec<_>>(),
        "global": global,
        "verdict": r.verdict.verdict,
        "ledger": r.verdict.ledger,
        "pages": {
            "e1": page_or_error(&r.e1),
            "e2": page_or_error(&r.e2),
            "hc": hc_json(&r.hc),
        },
        "checks": checks_json(&r.checks),
        "summary": {
            "pass": r.count(Status::Pass),
            "fail": r.count(Status::Fail),
            "skipped": r.count(Status::Skipped),
        },
    })
}

fn matrix_text(out: &mut String, m: &Matrix, indent: &str) {
    let cells = m.to_strings();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    for row in &cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(out, "{indent}[ {} ]", line.join(" ")).unwrap();
    }
}

fn checks_text(out: &mut String, cs: &[Check]) {
    for c in cs {
        writeln!(out, "    {:<8} {}: {}", status(c.status), c.name, c.detail).unwrap();
    }
}

fn branch_text(b: Option<BranchData>) -> String {
    match b {
        Some(b) => format!("delta={} r={} [{}]", b.delta, b.r, b.provenance.tag()),
        None => "delta, r unknown".into(),
    }
}

fn plane_text(out: &mut String, p: &PlaneReport) {
    let vars = p.f.vars();
    let inv = &p.invariants;
    writeln!(out, "  {} (plane): f = {}", p.label, p.f).unwrap();
    if let Some((a, b)) = &p.weights {
        writeln!(out, "    weights ({a}, {b})").unwrap();
    }
    writeln!(
        out,
        "    mu={} tau={} [computed] at truncation {}; quasihomogeneous: {}",
        inv.mu, inv.tau, p.truncation, inv.qh_by_saito
    )
    .unwrap();
    writeln!(out, "    Tjurina basis: {}", monomials(vars, &p.tjurina_basis).join(", ")).unwrap();
    writeln!(out, "    {}", branch_text(p.branch_data)).unwrap();
    writeln!(
        out,
        "    tail differential: rank {} of {} [computed], witness order {}",
        p.tail.rank,
        inv.tau,
        p.tail.witness_order.unwrap_or_default()
    )
    .unwrap();
    matrix_text(out, &p.tail.matrix, "      ");
    checks_text(out, &p.checks);
}

fn lci_text(out: &mut String, l: &LciReport) {
    let o = &l.obstruction;
    writeln!(
        out,
        "  {} (complete intersection in {}): {}",
        l.label,
        l.variables.join(","),
        polys(&l.equations).join(", ")
    )
    .unwrap();
    let ranks: Vec<String> = o.term_ranks.iter().map(|(d, r)| format!("{d}:{r}")).collect();
    writeln!(out, "    embedding dimension {} [computed]; complex ranks {}", o.e, ranks.join(" ")).unwrap();
    writeln!(
        out,
        "    obstruction at ({},{}) of dimension {} in total degree {} [computed]",
        o.obstruction_position.0, o.obstruction_position.1, o.coker_mod_m_dim, o.total_degree
    )
    .unwrap();
    writeln!(out, "    {}", branch_text(l.branch_data)).unwrap();
    checks_text(out, &l.checks);
}

fn unsupported_text(out: &mut String, u: &UnsupportedReport) {
    writeln!(out, "  {} (unsupported): {}", u.label, u.reason).unwrap();
    writeln!(out, "    equations: {}", polys(&u.equations).join(", ")).unwrap();
    writeln!(out, "    {}", branch_text(u.branch_data)).unwrap();
    checks_text(out, &u.checks);
}

pub fn report_text(r: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "curve: {}", r.label).unwrap();
    writeln!(out, "genus of normalization: {} [asserted-input]", r.genus).unwrap();
    if !r.notes.is_empty() {
        writeln!(out, "notes: {}", r.notes).unwrap();
    }
    writeln!(out, "\nsingularities:").unwrap();
    if r.singularities.is_empty() {
        writeln!(out, "  none").unwrap();
    }
    for s in &r.singularities {
        match s {
            SingularityReport::Plane(p) => plane_text(&mut out, p),
            SingularityReport::Lci(l) => lci_text(&mut out, l),
            SingularityReport::Unsupported(u) => unsupported_text(&mut out, u),
        }
    }
    writeln!(out, "\nglobal invariants:").unwrap();
    match &r.global {
        Ok(g) => {
            let p = g.provenance.tag();
            writeln!(out, "  delta={} R={} p_a={} [{p}]", g.delta_total, g.r_total, g.p_a).unwrap();
            writeln!(out, "  tau={} mu={} [computed]", g.tau_total, g.mu_total).unwrap();
            writeln!(out, "  betti numbers {:?} [{p}]", g.betti).unwrap();
        }
        Err(e) => writeln!(out, "  unavailable: {e}").unwrap(),
    }
    writeln!(out, "\nverdict: {}", r.verdict.verdict.name()).unwrap();
    writeln!(
        out,
        "  {}",
        serde_json::to_string(&r.verdict.verdict).expect("verdict serializes")
    )
    .unwrap();
    if let Some(l) = &r.verdict.ledger {
        writeln!(
            out,
            "  ledger: tau_total={} 2*delta-R={} identity {} consistent {}",
            l.tau_total, l.two_delta_minus_r, l.identity_holds, l.consistent_with_verdict
        )
        .unwrap();
    }
    for page in [&r.e1, &r.e2] {
        out.push('\n');
        match page {
            Ok(p) => out.push_str(&page_text(p)),
            Err(e) => writeln!(out, "page unavailable: {e}").unwrap(),
        }
    }
    out.push('\n');
    match &r.hc {
        Ok(h) => {
            writeln!(
                out,
                "cyclic pieces F_m, m in {}..{}: verdict {}",
                h.window.0,
                h.window.1,
                h.verdict.name()
            )
            .unwrap();
            for p in h.pages.values() {
                let support: Vec<String> = p
                    .e2
                    .support()
                    .iter()
                    .map(|&pos| format!("({},{})={}", pos.0, pos.1, p.e2.entry(pos).expect("supported")))
                    .collect();
                let cert = match p.certified_at_e2 {
                    Some(true) => "certified",
                    Some(false) => "not certified",
                    None => "undetermined",
                };
                let partial = if p.e2.partial { " partial" } else { "" };
                writeln!(
                    out,
                    "  m={:>2}: E2{partial} support {} ({cert})",
                    p.m,
                    if support.is_empty() { "empty".to_string() } else { support.join(" ") }
                )
                .unwrap();
            }
        }
        Err(e) => writeln!(out, "cyclic pages unavailable: {e}").unwrap(),
    }
    writeln!(out, "\nglobal checks:").unwrap();
    checks_text(&mut out, &r.checks);
    writeln!(
        out,
        "\nsummary: {} pass, {} fail, {} skipped",
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::Skipped)
    )
    .unwrap();
    out
}

pub fn render_report(r: &Report, format: Format) -> String {
    match format {
        Format::Text => report_text(r),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report_json(r)).expect("json renders");
            s.push('\n');
            s
        }
    }
}
