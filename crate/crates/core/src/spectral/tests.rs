use super::*;
use crate::lci::{obstruction, LciPresentation};
use crate::plane::LocalInvariants;
use crate::series::{parse_poly, vars};

fn plane(label: &str, mu: usize, tau: usize, tail_rank: usize, delta: usize, r: usize) -> SingularityRecord {
    SingularityRecord::Plane(PlaneRecord {
        label: label.into(),
        invariants: LocalInvariants {
            mu,
            tau,
            qh_by_saito: mu == tau,
            wh_in_coords: mu == tau,
            delta: Some(delta),
            r: Some(r),
        },
        tail_rank,
        branch_data: Some(BranchData {
            delta,
            r,
            provenance: Provenance::Computed,
        }),
    })
}

fn curve(genus: u32, singularities: Vec<SingularityRecord>) -> CurveModel {
    CurveModel {
        label: "test".into(),
        genus,
        singularities,
    }
}

fn node() -> SingularityRecord {
    plane("node", 1, 1, 1, 1, 2)
}

fn cusp() -> SingularityRecord {
    plane("cusp", 2, 2, 2, 1, 1)
}

fn non_planar() -> SingularityRecord {
    let v = vars(&["x", "y", "z"]);
    let eqs = ["y^2 - x^3", "z^2 - y^3"]
        .iter()
        .map(|s| parse_poly(s, &v).unwrap())
        .collect();
    let p = LciPresentation::new("t469", v, eqs, None).unwrap();
    SingularityRecord::NonPlanar(NonPlanarRecord {
        label: "t469".into(),
        obstruction: obstruction(&p).unwrap(),
        branch_data: None,
    })
}

fn text(e: Option<Entry>) -> String {
    e.map(|e| e.to_string()).unwrap_or_else(|| "?".into())
}

#[test]
fn global_invariant_examples() {
    let gi = global_invariants(&curve(2, vec![])).unwrap();
    assert_eq!((gi.delta_total, gi.r_total, gi.p_a, gi.betti), (0, 0, 2, (1, 4, 1)));
    let gi = global_invariants(&curve(0, vec![node()])).unwrap();
    assert_eq!((gi.delta_total, gi.r_total, gi.tau_total, gi.p_a, gi.betti), (1, 1, 1, 1, (1, 1, 1)));
    let gi = global_invariants(&curve(0, vec![cusp()])).unwrap();
    assert_eq!((gi.delta_total, gi.r_total, gi.tau_total, gi.p_a, gi.betti), (1, 0, 2, 1, (1, 0, 1)));
    assert_eq!(gi.mu_total as i64, gi.two_delta_minus_r());
    assert!(matches!(
        global_invariants(&curve(0, vec![non_planar()])),
        Err(SpectralError::MissingBranchData { .. })
    ));
}

#[test]
fn e1_examples() {
    let e1 = e1_page(&curve(0, vec![node()]), DEFAULT_TAIL_WINDOW).unwrap();
    assert_eq!(text(e1.entry((0, 0))), "1");
    assert_eq!(text(e1.entry((0, 1))), "1");
    assert_eq!(text(e1.entry((2, 0))), "1");
    assert_eq!(text(e1.entry((1, 0))), "kappa - c + 1");
    assert_eq!(text(e1.entry((1, 1))), "kappa - c + 1");
    for p in 1..=4 {
        assert_eq!(e1.entry((p + 1, -p)), Some(Entry::Exact(1)));
        assert_eq!(e1.entry((p + 2, -p)), Some(Entry::Exact(1)));
    }

    let e1 = e1_page(&curve(1, vec![]), DEFAULT_TAIL_WINDOW).unwrap();
    for pos in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        assert_eq!(e1.entry(pos), Some(Entry::Exact(1)));
    }
    assert_eq!(e1.entry((2, -1)), Some(Entry::Exact(0)));

    let e1 = e1_page(&curve(0, vec![cusp()]), DEFAULT_TAIL_WINDOW).unwrap();
    assert_eq!(e1.entry((2, 0)), Some(Entry::Exact(2)));
    assert_eq!(e1.entry((0, 1)), Some(Entry::Exact(1)));
    assert_eq!(e1.entry((4, -2)), Some(Entry::Exact(2)));

    assert_eq!(
        e1_page(&curve(0, vec![non_planar()]), 4).unwrap_err(),
        SpectralError::NonPlanarInput
    );
}

#[test]
fn verdicts() {
    let r = degeneration_verdict(&curve(0, vec![node()]));
    assert_eq!(r.verdict, Verdict::Degenerates);
    assert!(r.ledger.unwrap().consistent_with_verdict);
    assert_eq!(degeneration_verdict(&curve(0, vec![cusp()])).verdict, Verdict::Degenerates);

    let bad = plane("x5", 16, 15, 14, 10, 5);
    let r = degeneration_verdict(&curve(0, vec![bad]));
    assert!(matches!(r.verdict, Verdict::FailsViaTau { tau: 15, mu: 16, .. }));
    let ledger = r.ledger.unwrap();
    assert!(!ledger.identity_holds && ledger.consistent_with_verdict);
    assert!((ledger.tau_total as i64) < ledger.two_delta_minus_r);

    let r = degeneration_verdict(&curve(0, vec![node(), non_planar()]));
    assert_eq!(
        r.verdict,
        Verdict::FailsViaNonPlanar {
            witness: "t469".into(),
            position: (4, -1),
            total_degree: 3
        }
    );
}

#[test]
fn e2_examples() {
    let e2 = e2_page(&curve(0, vec![node()]), DEFAULT_TAIL_WINDOW).unwrap();
    for p in 1..=4 {
        assert_eq!(e2.entry((p + 1, -p)), Some(Entry::Exact(0)));
        assert_eq!(e2.entry((p + 2, -p)), Some(Entry::Exact(0)));
    }
    assert_eq!(e2.entry((2, 0)), Some(Entry::Exact(0)));
    assert_eq!(text(e2.entry((1, 0))), "kappa");
    assert_eq!(text(e2.entry((0, 1))), "k_v");
    assert_eq!(text(e2.entry((1, 1))), "cok_v");
    let cs: Vec<String> = e2.constraints.iter().map(ToString::to_string).collect();
    assert_eq!(cs, vec!["kappa + k_v = 1", "c + cok_v = 1", "c = 0"]);
    assert_eq!(e2.support().len(), 4);

    let smooth = curve(3, vec![]);
    assert_eq!(e2_page(&smooth, 4).unwrap().entries, e1_page(&smooth, 4).unwrap().entries);

    let e2 = e2_page(&curve(0, vec![plane("x5", 16, 15, 14, 10, 5)]), 4).unwrap();
    assert_eq!(e2.entry((2, -1)), Some(Entry::Exact(1)));
    assert_eq!(e2.entry((3, -1)), Some(Entry::Exact(1)));

    let e2 = e2_page(&curve(0, vec![non_planar()]), 4).unwrap();
    assert!(e2.partial);
    assert_eq!(e2.entry((4, -1)), Some(Entry::Positive));
    assert_eq!(e2.entry((1, 0)), None);
}

#[test]
fn hc_case_analysis() {
    let c = curve(0, vec![cusp()]);
    let hc = hc_pages(&c, DEFAULT_HC_WINDOW, DEFAULT_TAIL_WINDOW).unwrap();
    assert_eq!(hc.verdict, Verdict::Degenerates);
    for m in -2..=0 {
        assert_eq!(hc.pages[&m].e2.support().len(), 4, "m = {m}");
    }
    assert_eq!(hc.pages[&1].e2.support().len(), 2);
    assert_eq!(hc.pages[&2].e2.support(), vec![(0, 0)]);
    assert_eq!(hc.pages[&2].e2.entry((0, 0)), Some(Entry::Exact(2)));
    // the first column keeps the target of the truncated tail map
    for m in 3..=4 {
        let e2 = &hc.pages[&m].e2;
        assert_eq!(e2.support(), vec![(0, -(m - 2))]);
        assert_eq!(e2.entry((0, -(m - 2))), Some(Entry::Exact(2)));
    }
    let e0 = e2_page(&c, DEFAULT_TAIL_WINDOW).unwrap();
    assert_eq!(hc.pages[&0].e2.entries, e0.entries);

    let smooth = hc_pages(&curve(2, vec![]), DEFAULT_HC_WINDOW, 4).unwrap();
    assert!(smooth.pages.range(3..).all(|(_, p)| p.e2.support().is_empty()));

    let bad = hc_pages(&curve(0, vec![plane("x5", 16, 15, 15, 10, 5)]), DEFAULT_HC_WINDOW, 4).unwrap();
    assert!(matches!(bad.verdict, Verdict::FailsViaTau { .. }));
    let np = hc_pages(&curve(0, vec![non_planar()]), DEFAULT_HC_WINDOW, 4).unwrap();
    assert!(matches!(np.verdict, Verdict::FailsViaNonPlanar { .. }));
    assert!(hc_pages(&c, (3, 1), 4).is_err());
}

#[test]
fn rendering() {
    let e2 = e2_page(&curve(0, vec![node()]), 4).unwrap();
    let t = render_page(&e2, Format::Text);
    assert!(t.contains("verdict: Degenerates"));
    assert!(t.contains("[symbolic]"));
    assert!(t.contains("constraint: c = 0"));
    let j = page_json(&e2);
    assert_eq!(j["axis"], "p");
    assert!(j["entries"].as_array().unwrap().iter().all(|e| e["provenance"].is_string()));
    let smooth = render_page(&e1_page(&curve(0, vec![]), 4).unwrap(), Format::Text);
    let header = smooth.lines().nth(1).unwrap();
    assert_eq!(header.split_whitespace().count(), 4, "{header}");
    assert!("yaml".parse::<Format>().is_err());
}
