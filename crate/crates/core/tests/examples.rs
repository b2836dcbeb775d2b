//! Worked examples through the public API, from equations to verdicts.

use curvesing::jets::JetAlgebra;
use curvesing::lci::{complex_term_ranks, obstruction, LciPresentation};
use curvesing::plane::{milnor_tjurina, saito_test, tail_map_general, PlaneSingularity};
use curvesing::report::{analyze, corpus_document, load_curve, load_str, AnalyzeOptions, Status};
use curvesing::series::{parse_poly, rat, vars};
use curvesing::spectral::{e2_page, hc_pages, Entry, Verdict, DEFAULT_HC_WINDOW, DEFAULT_TAIL_WINDOW};

fn plane(f: &str) -> PlaneSingularity {
    PlaneSingularity::new(f, parse_poly(f, &vars(&["u", "v"])).unwrap(), None, None).unwrap()
}

#[test]
fn jets_of_a_monomial_ideal() {
    let uv = vars(&["u", "v"]);
    let gens = vec![parse_poly("u^2", &uv).unwrap(), parse_poly("v^3", &uv).unwrap()];
    let j = JetAlgebra::build_auto(&gens, 64).unwrap();
    assert_eq!(j.colength(), 6);
    assert!(j.contains(&parse_poly("u^2*v + v^4", &uv).unwrap()).unwrap());
}

#[test]
fn local_invariants() {
    assert_eq!(milnor_tjurina(&plane("u^3 + v^5")).unwrap(), (8, 8));
    assert_eq!(milnor_tjurina(&plane("u^5 + v^5 + u^3*v^3")).unwrap(), (16, 15));
    assert!(!saito_test(&plane("u^4 + v^5 + u^2*v^3")).unwrap());
    let t = tail_map_general(&plane("u^2 + v^3")).unwrap();
    assert_eq!(t.diagonal_entries(), Some(vec![rat(5, 6), rat(7, 6)]));
}

#[test]
fn space_curve_obstruction() {
    let xyz = vars(&["x", "y", "z"]);
    let eqs = ["y^2 - x^3", "z^2 - y^3"].map(|s| parse_poly(s, &xyz).unwrap()).to_vec();
    let o = obstruction(&LciPresentation::new("g", xyz, eqs, None).unwrap()).unwrap();
    assert_eq!((o.obstruction_position, o.total_degree, o.coker_mod_m_dim), ((4, -1), 3, 2));
    assert_eq!(complex_term_ranks(3, 4).iter().map(|r| r.1).collect::<Vec<_>>(), vec![5, 12, 9, 2]);
}

#[test]
fn cuspidal_cubic_from_file() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/cuspidal-cubic.json");
    let r = analyze(&load_curve(path).unwrap(), &AnalyzeOptions::default()).unwrap();
    assert_eq!(r.verdict.verdict, Verdict::Degenerates);
    let e2 = e2_page(&r.model, DEFAULT_TAIL_WINDOW).unwrap();
    assert_eq!(e2.entry((0, 0)), Some(Entry::Exact(1)));
    assert_eq!(e2.entry((3, -1)), Some(Entry::Exact(0)));
    let hc = hc_pages(&r.model, DEFAULT_HC_WINDOW, DEFAULT_TAIL_WINDOW).unwrap();
    assert_eq!(hc.verdict, Verdict::Degenerates);
    assert_eq!(r.count(Status::Fail), 0);
}

#[test]
fn four_space_germ() {
    let c = load_str(corpus_document("nonplanar-four-space").unwrap()).unwrap();
    let r = analyze(&c, &AnalyzeOptions::default()).unwrap();
    assert!(matches!(
        r.verdict.verdict,
        Verdict::FailsViaNonPlanar { position: (5, -1), total_degree: 4, .. }
    ));
    assert!(r.passed());
}

#[test]
fn truncation_override_is_respected() {
    let c = load_str(corpus_document("e8-rational").unwrap()).unwrap();
    let opts = AnalyzeOptions {
        truncation: Some(20),
        ..AnalyzeOptions::default()
    };
    let r = analyze(&c, &opts).unwrap();
    assert_eq!(r.singularities[0].as_plane().unwrap().truncation, 20);
    assert!(r.passed());
}
