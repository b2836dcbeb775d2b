use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use super::entry::Entry;
use super::pages::{Cell, Pos, SSPage};
use super::SpectralError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = SpectralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(SpectralError::UnknownFormat(other.to_string())),
        }
    }
}

fn kind(e: &Entry) -> &'static str {
    match e {
        Entry::Exact(_) => "exact",
        Entry::Symbolic(_) => "symbolic",
        Entry::Positive => "positive",
        Entry::AtLeast(_) => "at_least",
    }
}

fn cell_json(axis: &str, (p, q): Pos, c: &Cell) -> Value {
    let mut m = Map::new();
    m.insert(axis.into(), json!(p));
    m.insert("q".into(), json!(q));
    m.insert("value".into(), json!(c.entry.to_string()));
    m.insert("kind".into(), json!(kind(&c.entry)));
    m.insert("provenance".into(), json!(c.provenance.tag()));
    Value::Object(m)
}

/// Structured form of a page with a provenance tag on every entry.
pub fn page_json(page: &SSPage) -> Value {
    json!({
        "title": page.title,
        "axis": page.axis,
        "partial": page.partial,
        "verdict": page.verdict.as_ref().map(|v| serde_json::to_value(v).expect("verdict serializes")),
        "entries": page.entries.iter().map(|(&k, c)| cell_json(page.axis, k, c)).collect::<Vec<_>>(),
        "d1_ranks": page.d1_ranks.iter().map(|(&k, c)| cell_json(page.axis, k, c)).collect::<Vec<_>>(),
        "constraints": page.constraints.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "notes": page.notes,
    })
}

/// Fixed-width grid with rows `q` descending, followed by tagged entries.
pub fn page_text(page: &SSPage) -> String {
    let mut out = String::new();
    write!(out, "{}", page.title).unwrap();
    if let Some(v) = &page.verdict {
        write!(out, "  verdict: {}", v.name()).unwrap();
    }
    out.push('\n');
    let keys: Vec<Pos> = page.entries.keys().copied().collect();
    let (pmin, pmax, qmin, qmax) = if keys.is_empty() {
        (0, 1, 0, 1)
    } else {
        (
            keys.iter().map(|k| k.0).min().unwrap().min(0),
            keys.iter().map(|k| k.0).max().unwrap().max(1),
            keys.iter().map(|k| k.1).min().unwrap().min(0),
            keys.iter().map(|k| k.1).max().unwrap().max(1),
        )
    };
    let text_at = |p: i64, q: i64| match page.entry((p, q)) {
        Some(e) => e.to_string(),
        None => "?".to_string(),
    };
    let width = (pmin..=pmax)
        .flat_map(|p| (qmin..=qmax).map(move |q| (p, q)))
        .map(|(p, q)| text_at(p, q).len())
        .chain(std::iter::once(3))
        .max()
        .unwrap();
    let corner = format!("q\\{}", page.axis);
    write!(out, "{corner:>5} |").unwrap();
    for p in pmin..=pmax {
        write!(out, " {p:>width$}").unwrap();
    }
    out.push('\n');
    writeln!(out, "{}", "-".repeat(7 + (width + 1) * (pmax - pmin + 1) as usize)).unwrap();
    for q in (qmin..=qmax).rev() {
        write!(out, "{q:>5} |").unwrap();
        for p in pmin..=pmax {
            write!(out, " {:>width$}", text_at(p, q)).unwrap();
        }
        out.push('\n');
    }
    for (&(p, q), c) in &page.entries {
        writeln!(out, "  ({p},{q}) {} [{}]", c.entry, c.provenance.tag()).unwrap();
    }
    if !page.d1_ranks.is_empty() {
        writeln!(out, "  d1 ranks:").unwrap();
        for (&(p, q), c) in &page.d1_ranks {
            writeln!(out, "    from ({p},{q}): {} [{}]", c.entry, c.provenance.tag()).unwrap();
        }
    }
    for c in &page.constraints {
        writeln!(out, "  constraint: {c}").unwrap();
    }
    for n in &page.notes {
        writeln!(out, "  note: {n}").unwrap();
    }
    out
}

pub fn render_page(page: &SSPage, format: Format) -> String {
    match format {
        Format::Text => page_text(page),
        Format::Json => serde_json::to_string_pretty(&page_json(page)).expect("json renders"),
    }
}
