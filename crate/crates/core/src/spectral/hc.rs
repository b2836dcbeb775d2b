//! Pages of the Hochschild-to-cyclic spectral sequence.
//!
//! The filtered complex splits by `m = p - a` into pieces `F_m` whose `E_1`
//! is the Hodge `E_1` restricted to columns `p >= max(0, m)`, with column `p`
//! placed in filtration degree `a = p - m`.

use std::collections::BTreeMap;

use super::pages::{degeneration_verdict, hodge_data, planar_e2, Cell, Pos, SSPage, Verdict};
use super::{CurveModel, SpectralError};

pub const DEFAULT_HC_WINDOW: (i64, i64) = (-2, 4);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcPage {
    pub m: i64,
    pub e1: SSPage,
    pub e2: SSPage,
    /// Whether the support of `E_2` rules out every higher differential;
    /// `None` when the page is not determined.
    pub certified_at_e2: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcPages {
    pub window: (i64, i64),
    pub pages: BTreeMap<i64, HcPage>,
    pub verdict: Verdict,
}

fn reindex(cells: &BTreeMap<Pos, Cell>, m: i64) -> BTreeMap<Pos, Cell> {
    cells.iter().map(|(&(p, q), c)| ((p - m, q), c.clone())).collect()
}

fn page(title: String, entries: BTreeMap<Pos, Cell>, partial: bool) -> SSPage {
    SSPage {
        title,
        axis: "a",
        entries,
        d1_ranks: BTreeMap::new(),
        verdict: None,
        constraints: Vec::new(),
        notes: Vec::new(),
        partial,
    }
}

pub fn hc_pages(c: &CurveModel, window: (i64, i64), tail_window: i64) -> Result<HcPages, SpectralError> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(SpectralError::EmptyWindow { lo, hi });
    }
    let hodge = degeneration_verdict(c).verdict;
    let planar = matches!(hodge, Verdict::Degenerates | Verdict::FailsViaTau { .. });
    // every F_m in the window needs its first two columns in full
    let data = if planar {
        Some(hodge_data(c, tail_window.max(hi).max(1))?)
    } else {
        None
    };
    let hodge_e2 = super::e2_page(c, tail_window)?;
    let mut pages = BTreeMap::new();
    for m in lo..=hi {
        let first = m.max(0);
        let p = match &data {
            Some(d) => {
                let e1: BTreeMap<Pos, Cell> = d
                    .e1
                    .iter()
                    .filter(|((p, _), _)| *p >= first)
                    .map(|(k, v)| (*k, v.clone()))
                    .collect();
                let mut e1 = page(format!("E1(F_{m})"), reindex(&e1, m), false);
                e1.d1_ranks = d
                    .arrows
                    .iter()
                    .filter(|a| a.from.0 >= first)
                    .map(|a| ((a.from.0 - m, a.from.1), a.rank.clone()))
                    .collect();
                let e2 = page(
                    format!("E2(F_{m})"),
                    reindex(&planar_e2(d, &hodge, first), m),
                    false,
                );
                let ok = e2.rules_out_higher_differentials();
                HcPage {
                    m,
                    e1,
                    e2,
                    certified_at_e2: Some(ok),
                }
            }
            None => {
                // only F_0 is known: it is the Hodge spectral sequence itself
                let e2 = if m == 0 {
                    page(format!("E2(F_{m})"), hodge_e2.entries.clone(), true)
                } else {
                    page(format!("E2(F_{m})"), BTreeMap::new(), true)
                };
                HcPage {
                    m,
                    e1: page(format!("E1(F_{m})"), BTreeMap::new(), true),
                    e2,
                    // a positive entry in total degree above 2 cannot survive
                    certified_at_e2: (m == 0 && matches!(hodge, Verdict::FailsViaNonPlanar { .. }))
                        .then_some(false),
                }
            }
        };
        pages.insert(m, p);
    }
    let verdict = hc_verdict(&hodge, &pages);
    Ok(HcPages {
        window,
        pages,
        verdict,
    })
}

/// `F_0` is a filtered summand equal to the Hodge filtration, so a Hodge
/// failure is an HC failure. Otherwise every `F_m` must certify degeneration.
fn hc_verdict(hodge: &Verdict, pages: &BTreeMap<i64, HcPage>) -> Verdict {
    match hodge {
        Verdict::Degenerates => match pages.values().find(|p| p.certified_at_e2 != Some(true)) {
            Some(p) => Verdict::Undetermined {
                reason: format!("support of E2(F_{}) admits a higher differential", p.m),
            },
            None => Verdict::Degenerates,
        },
        other => other.clone(),
    }
}
