//! The builtin corpus of curve documents and the summary table over it.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::spectral::Verdict;

use super::analyze::{analyze, AnalyzeOptions, Report, SingularityReport, Status};
use super::schema::load_str;

macro_rules! entry {
    ($name:literal) => {
        ($name, include_str!(concat!("../../corpus/", $name, ".json")))
    };
}

/// `(name, document)` for every builtin curve, in a fixed order.
pub const CORPUS: &[(&str, &str)] = &[
    entry!("nodal-rational"),
    entry!("cuspidal-cubic"),
    entry!("binodal-elliptic"),
    entry!("smooth-genus-2"),
    entry!("ade-zoo"),
    entry!("a1-rational"),
    entry!("a2-rational"),
    entry!("a3-rational"),
    entry!("a4-rational"),
    entry!("a5-rational"),
    entry!("a6-rational"),
    entry!("a7-rational"),
    entry!("a8-rational"),
    entry!("a9-rational"),
    entry!("a10-rational"),
    entry!("d4-rational"),
    entry!("d5-rational"),
    entry!("d6-rational"),
    entry!("d7-rational"),
    entry!("d8-rational"),
    entry!("d9-rational"),
    entry!("d10-rational"),
    entry!("e6-rational"),
    entry!("e7-rational"),
    entry!("e8-rational"),
    entry!("non-qh-rational"),
    entry!("w12-rational"),
    entry!("nonplanar-t469"),
    entry!("nonplanar-four-space"),
    entry!("nodal-and-nonplanar"),
    entry!("monomial-t345"),
];

pub fn corpus_document(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, d)| *d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub outcome: Result<Report, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusRun {
    pub entries: Vec<CorpusEntry>,
}

/// One line of the summary table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusRow {
    pub curve: String,
    pub singularity: String,
    pub mu: Option<usize>,
    pub tau: Option<usize>,
    pub qh: Option<bool>,
    pub verdict: String,
    pub checks: String,
    pub marker: String,
}

fn marker(s: &SingularityReport) -> String {
    match s {
        SingularityReport::Plane(p) if p.invariants.tau < p.invariants.mu => "tau < mu".into(),
        SingularityReport::Plane(_) => String::new(),
        SingularityReport::Lci(l) => {
            let (p, q) = l.obstruction.obstruction_position;
            format!("obstruction at ({p},{q})")
        }
        SingularityReport::Unsupported(_) => "not lci".into(),
    }
}

fn verdict_text(v: &Verdict) -> String {
    v.name().to_string()
}

impl CorpusRun {
    pub fn failures(&self) -> usize {
        self.entries
            .iter()
            .map(|e| match &e.outcome {
                Ok(r) => r.count(Status::Fail),
                Err(_) => 1,
            })
            .sum()
    }

    pub fn exit_code(&self) -> i32 {
        if self.failures() == 0 {
            0
        } else {
            1
        }
    }

    pub fn report(&self, name: &str) -> Option<&Report> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .and_then(|e| e.outcome.as_ref().ok())
    }

    pub fn rows(&self) -> Vec<CorpusRow> {
        let mut rows = Vec::new();
        for e in &self.entries {
            let r = match &e.outcome {
                Ok(r) => r,
                Err(msg) => {
                    rows.push(CorpusRow {
                        curve: e.name.into(),
                        singularity: "-".into(),
                        mu: None,
                        tau: None,
                        qh: None,
                        verdict: "error".into(),
                        checks: "-".into(),
                        marker: msg.clone(),
                    });
                    continue;
                }
            };
            let checks = format!("{}/{}", r.count(Status::Pass), r.count(Status::Pass) + r.count(Status::Fail));
            let verdict = verdict_text(&r.verdict.verdict);
            if r.singularities.is_empty() {
                rows.push(CorpusRow {
                    curve: e.name.into(),
                    singularity: "-".into(),
                    mu: None,
                    tau: None,
                    qh: None,
                    verdict: verdict.clone(),
                    checks: checks.clone(),
                    marker: "smooth".into(),
                });
            }
            for s in &r.singularities {
                let inv = s.as_plane().map(|p| &p.invariants);
                rows.push(CorpusRow {
                    curve: e.name.into(),
                    singularity: s.label().into(),
                    mu: inv.map(|i| i.mu),
                    tau: inv.map(|i| i.tau),
                    qh: inv.map(|i| i.qh_by_saito),
                    verdict: verdict.clone(),
                    checks: checks.clone(),
                    marker: marker(s),
                });
            }
        }
        rows
    }

    pub fn table_text(&self) -> String {
        let header = ["curve", "singularity", "mu", "tau", "QH", "verdict", "checks", ""];
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let cells: Vec<[String; 8]> = self
            .rows()
            .into_iter()
            .map(|r| {
                [
                    r.curve,
                    r.singularity,
                    opt(r.mu.map(|x| x.to_string())),
                    opt(r.tau.map(|x| x.to_string())),
                    opt(r.qh.map(|x| x.to_string())),
                    r.verdict,
                    r.checks,
                    r.marker,
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |row: &[String]| {
            let mut s = String::new();
            for (i, c) in row.iter().enumerate() {
                if i + 1 == row.len() {
                    s.push_str(c);
                } else {
                    write!(s, "{c:<w$}  ", w = widths[i]).unwrap();
                }
            }
            s.trim_end().to_string()
        };
        let mut out = String::new();
        writeln!(out, "{}", line(&header.map(String::from))).unwrap();
        writeln!(out, "{}", "-".repeat(widths.iter().sum::<usize>() + 2 * (widths.len() - 1))).unwrap();
        for row in &cells {
            writeln!(out, "{}", line(row)).unwrap();
        }
        writeln!(out, "failed checks: {}", self.failures()).unwrap();
        out
    }

    pub fn table_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows()
            .into_iter()
            .map(|r| {
                json!({
                    "curve": r.curve,
                    "singularity": r.singularity,
                    "mu": r.mu.map(|x| json!({"value": x, "provenance": "computed"})),
                    "tau": r.tau.map(|x| json!({"value": x, "provenance": "computed"})),
                    "qh": r.qh,
                    "verdict": r.verdict,
                    "checks": r.checks,
                    "marker": r.marker,
                })
            })
            .collect();
        json!({ "rows": rows, "failed_checks": self.failures() })
    }
}

/// Loads and analyzes every builtin document; errors are kept per entry.
pub fn run_corpus(opts: &AnalyzeOptions) -> CorpusRun {
    let entries = CORPUS
        .iter()
        .map(|&(name, doc)| CorpusEntry {
            name,
            outcome: load_str(doc)
                .map_err(|e| e.to_string())
                .and_then(|c| analyze(&c, opts).map_err(|e| e.to_string())),
        })
        .collect();
    CorpusRun { entries }
}
