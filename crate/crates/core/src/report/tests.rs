use super::*;
use crate::spectral::{Entry, Format, Provenance, Verdict};

fn run(name: &str) -> Report {
    let c = load_str(corpus_document(name).unwrap()).unwrap();
    analyze(&c, &AnalyzeOptions::default()).unwrap()
}

#[test]
fn nodal_rational_pipeline() {
    let r = run("nodal-rational");
    assert_eq!(r.verdict.verdict, Verdict::Degenerates);
    assert!(r.passed(), "{}", report_text(&r));
    let p = r.singularities[0].as_plane().unwrap();
    let milnor = p.checks.iter().find(|c| c.name == "milnor formula").unwrap();
    assert_eq!(milnor.status, Status::Pass);
    let ledger = r.checks.iter().find(|c| c.name == "ledger").unwrap();
    assert_eq!(ledger.status, Status::Pass);
    assert_eq!(r.global.as_ref().unwrap().betti, (1, 1, 1));
}

#[test]
fn non_quasihomogeneous_pipeline() {
    let r = run("non-qh-rational");
    assert!(matches!(r.verdict.verdict, Verdict::FailsViaTau { tau: 15, mu: 16, .. }));
    assert!(r.passed(), "{}", report_text(&r));
    let p = r.singularities[0].as_plane().unwrap();
    assert_eq!(p.branch_data.unwrap().provenance, Provenance::AssertedInput);
    assert_eq!(r.global.as_ref().unwrap().provenance, Provenance::AssertedInput);
}

#[test]
fn nonplanar_pipeline() {
    let r = run("nonplanar-t469");
    assert_eq!(
        r.verdict.verdict,
        Verdict::FailsViaNonPlanar {
            witness: "(t^4, t^6, t^9)".into(),
            position: (4, -1),
            total_degree: 3
        }
    );
    assert!(r.passed(), "{}", report_text(&r));
    // the semigroup <4, 6, 9> has gaps 1, 2, 3, 5, 7, 11
    assert_eq!(r.global.as_ref().unwrap().delta_total, 6);
    assert_eq!(r.e2.as_ref().unwrap().entry((4, -1)), Some(Entry::Positive));
}

#[test]
fn non_lci_is_undetermined() {
    let r = run("monomial-t345");
    assert!(matches!(r.verdict.verdict, Verdict::Undetermined { .. }));
    assert!(r.passed(), "{}", report_text(&r));
    assert_eq!(r.global.as_ref().unwrap().delta_total, 2);
}

#[test]
fn power_series_branch() {
    let r = run("w12-rational");
    let p = r.singularities[0].as_plane().unwrap();
    assert_eq!((p.invariants.mu, p.invariants.tau), (12, 11));
    assert_eq!(p.delta.as_ref().map(|d| (d.delta, d.r)), Some((6, 1)));
    assert!(r.passed(), "{}", report_text(&r));
}

#[test]
fn rendering_is_deterministic_and_tagged() {
    let a = run("cuspidal-cubic");
    let b = run("cuspidal-cubic");
    assert_eq!(render_report(&a, Format::Json), render_report(&b, Format::Json));
    assert_eq!(render_report(&a, Format::Text), render_report(&b, Format::Text));
    let j = report_json(&a);
    assert_eq!(j["singularities"][0]["mu"]["provenance"], "computed");
    assert_eq!(j["global"]["delta"]["value"], 1);
    let text = report_text(&a);
    assert!(text.contains("verdict: Degenerates"));
    assert!(text.contains("[symbolic]"));
}

#[test]
fn fatal_errors_map_to_exit_codes() {
    let doc = r#"{"label": "c", "genus": 0, "singularities": [
        {"kind": "plane", "label": "line pair squared", "f": "u^2*v^2", "variables": ["u", "v"]}]}"#;
    let c = load_str(doc).unwrap();
    let err = analyze(&c, &AnalyzeOptions::default()).unwrap_err();
    assert_eq!(err.exit_code(), 3, "{err}");
}

#[test]
fn failed_checks_fail_the_report() {
    // a wrong assertion contradicts Milnor's formula
    let doc = r#"{"label": "c", "genus": 0, "singularities": [
        {"kind": "plane", "label": "cusp", "f": "u^2 - v^3", "variables": ["u", "v"],
         "asserted": {"delta": 2, "r": 1, "note": "wrong on purpose"}}]}"#;
    let r = analyze(&load_str(doc).unwrap(), &AnalyzeOptions::default()).unwrap();
    assert!(!r.passed());
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn corpus_documents_round_trip() {
    for (name, doc) in CORPUS {
        let c = load_str(doc).unwrap_or_else(|e| panic!("{name}: {e}"));
        let text = serde_json::to_string_pretty(&to_document(&c)).unwrap();
        assert_eq!(load_str(&text).unwrap(), c, "{name}");
    }
}
