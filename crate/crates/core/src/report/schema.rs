//! Curve documents: the on-disk JSON shape and its validation into analysis-ready input.

use std::collections::BTreeSet;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::branch::{self, PlaneBranch};
use crate::lci::{embedding_dimension, LciError, LciPresentation};
use crate::plane::{PlaneError, PlaneSingularity};
use crate::series::{parameter_vars, parse_poly, substitute, vars, BranchParam, ParseError, Poly, Rational, Vars};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub label: String,
    pub genus: u32,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
    #[serde(default)]
    pub singularities: Vec<SingularityDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SingularityDocument {
    Plane(PlaneDocument),
    Lci(LciDocument),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneDocument {
    pub label: String,
    pub f: String,
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<Vec<BranchDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asserted: Option<AssertedDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchDocument {
    pub images: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    /// Degree in `t` through which truncated series images are exact.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LciDocument {
    pub label: String,
    pub variables: Vec<String>,
    pub equations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrization: Option<Vec<String>>,
    /// User assertion that the equations form a regular sequence; defaults to true.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lci: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asserted: Option<AssertedDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssertedDocument {
    pub delta: usize,
    pub r: usize,
    pub note: String,
}

/// Delta and branch count supplied by the user rather than computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Asserted {
    pub delta: usize,
    pub r: usize,
    pub note: String,
}

/// A germ declared non-lci: its equations are kept for display only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonLciGerm {
    pub label: String,
    pub variables: Vars,
    pub equations: Vec<Poly>,
    pub parametrization: Option<BranchParam>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularityInput {
    Plane { sing: PlaneSingularity, asserted: Option<Asserted> },
    Lci { pres: LciPresentation, asserted: Option<Asserted> },
    NonLci { germ: NonLciGerm, asserted: Option<Asserted> },
}

impl SingularityInput {
    pub fn label(&self) -> &str {
        match self {
            SingularityInput::Plane { sing, .. } => sing.label(),
            SingularityInput::Lci { pres, .. } => pres.label(),
            SingularityInput::NonLci { germ, .. } => &germ.label,
        }
    }

    pub fn asserted(&self) -> Option<&Asserted> {
        match self {
            SingularityInput::Plane { asserted, .. }
            | SingularityInput::Lci { asserted, .. }
            | SingularityInput::NonLci { asserted, .. } => asserted.as_ref(),
        }
    }
}

/// A validated curve document with every expression parsed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInput {
    pub label: String,
    pub genus: u32,
    pub notes: String,
    pub singularities: Vec<SingularityInput>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {message}")]
    Json { path: String, message: String },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: {error}")]
    Parse { path: String, error: ParseError },
}

impl LoadError {
    /// Field path (or file path for I/O errors) the error refers to.
    pub fn path(&self) -> &str {
        match self {
            LoadError::Io { path, .. }
            | LoadError::Json { path, .. }
            | LoadError::Schema { path, .. }
            | LoadError::Parse { path, .. } => path,
        }
    }
}

fn schema(path: impl Into<String>, message: impl ToString) -> LoadError {
    LoadError::Schema {
        path: path.into(),
        message: message.to_string(),
    }
}

fn parse_at(path: String, text: &str, ambient: &Vars) -> Result<Poly, LoadError> {
    parse_poly(text, ambient).map_err(|error| LoadError::Parse { path, error })
}

fn parse_all(path: &str, texts: &[String], ambient: &Vars) -> Result<Vec<Poly>, LoadError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, s)| parse_at(format!("{path}[{i}]"), s, ambient))
        .collect()
}

fn variables(path: &str, names: &[String]) -> Result<Vars, LoadError> {
    let mut seen = BTreeSet::new();
    for (i, n) in names.iter().enumerate() {
        let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(schema(format!("{path}[{i}]"), format!("`{n}` is not a variable name")));
        }
        if !seen.insert(n.as_str()) {
            return Err(schema(format!("{path}[{i}]"), format!("variable `{n}` declared twice")));
        }
    }
    Ok(vars(names))
}

fn param(path: &str, images: &[String], arity: usize, precision: Option<u32>) -> Result<BranchParam, LoadError> {
    if images.len() != arity {
        return Err(schema(
            path,
            format!("expected {arity} images, one per variable, found {}", images.len()),
        ));
    }
    let polys = parse_all(path, images, &parameter_vars())?;
    BranchParam::new(polys, precision).map_err(|e| schema(path, e))
}

fn asserted(a: &Option<AssertedDocument>, path: &str) -> Result<Option<Asserted>, LoadError> {
    match a {
        None => Ok(None),
        Some(a) if a.r == 0 => Err(schema(format!("{path}.asserted.r"), "a germ has at least one branch")),
        Some(a) => Ok(Some(Asserted {
            delta: a.delta,
            r: a.r,
            note: a.note.clone(),
        })),
    }
}

fn plane_error(path: &str, e: PlaneError) -> LoadError {
    match e {
        PlaneError::EulerRelation | PlaneError::NonPositiveWeights => schema(format!("{path}.weights"), e),
        PlaneError::Branch(b) => schema(format!("{path}.branches"), b),
        other => schema(format!("{path}.f"), other),
    }
}

fn load_plane(d: &PlaneDocument, path: &str) -> Result<SingularityInput, LoadError> {
    if d.variables.len() != 2 {
        return Err(schema(
            format!("{path}.variables"),
            format!("a plane singularity needs exactly two variables, found {}", d.variables.len()),
        ));
    }
    let v = variables(&format!("{path}.variables"), &d.variables)?;
    let f = parse_at(format!("{path}.f"), &d.f, &v)?;
    let weights = match &d.weights {
        None => None,
        Some(w) if w.len() != 2 => return Err(schema(format!("{path}.weights"), "expected two weights")),
        Some(w) => {
            let mut out = Vec::new();
            for (i, s) in w.iter().enumerate() {
                let q = Rational::from_str(s.trim())
                    .map_err(|_| schema(format!("{path}.weights[{i}]"), format!("`{s}` is not a rational number")))?;
                out.push(q);
            }
            Some((out[0].clone(), out[1].clone()))
        }
    };
    let branches = match &d.branches {
        None => None,
        Some(bs) if bs.is_empty() => return Err(schema(format!("{path}.branches"), "empty branch list")),
        Some(bs) => {
            let mut out = Vec::new();
            for (i, b) in bs.iter().enumerate() {
                let bp = format!("{path}.branches[{i}]");
                let param = param(&format!("{bp}.images"), &b.images, 2, b.precision)?;
                let equation = match &b.equation {
                    Some(e) => Some(parse_at(format!("{bp}.equation"), e, &v)?),
                    None => None,
                };
                out.push(PlaneBranch { param, equation });
            }
            let order = branch::default_working_order(&out);
            for (i, b) in out.iter().enumerate() {
                if let Some(e) = &b.equation {
                    let on = substitute(e, &b.param, Some(order)).map_err(|e| schema(format!("{path}.branches[{i}]"), e))?;
                    if !on.is_zero() {
                        return Err(schema(
                            format!("{path}.branches[{i}].equation"),
                            format!("equation does not vanish on its branch through order {order}"),
                        ));
                    }
                }
            }
            Some(out)
        }
    };
    let sing = PlaneSingularity::new(d.label.clone(), f, weights, branches).map_err(|e| plane_error(path, e))?;
    Ok(SingularityInput::Plane {
        sing,
        asserted: asserted(&d.asserted, path)?,
    })
}

fn lci_error(path: &str, e: LciError) -> LoadError {
    match e {
        LciError::ConstantTerm { index } | LciError::NonMinimalPresentation { index, .. } => {
            schema(format!("{path}.equations[{index}]"), e)
        }
        LciError::TooFewVariables(_) => schema(format!("{path}.variables"), e),
        other => schema(format!("{path}.equations"), other),
    }
}

fn load_lci(d: &LciDocument, path: &str) -> Result<SingularityInput, LoadError> {
    let v = variables(&format!("{path}.variables"), &d.variables)?;
    if v.len() < 2 {
        return Err(lci_error(path, LciError::TooFewVariables(v.len())));
    }
    let equations = parse_all(&format!("{path}.equations"), &d.equations, &v)?;
    let parametrization = match &d.parametrization {
        Some(images) => Some(param(&format!("{path}.parametrization"), images, v.len(), None)?),
        None => None,
    };
    let asserted = asserted(&d.asserted, path)?;
    if d.lci == Some(false) {
        if equations.is_empty() {
            return Err(schema(format!("{path}.equations"), "no equations given"));
        }
        return Ok(SingularityInput::NonLci {
            germ: NonLciGerm {
                label: d.label.clone(),
                variables: v,
                equations,
                parametrization,
            },
            asserted,
        });
    }
    if v.len() == 2 && equations.len() == 1 {
        // a hypersurface in the plane is analyzed as a plane singularity
        let branches = parametrization.map(|param| vec![PlaneBranch { param, equation: None }]);
        let sing = PlaneSingularity::new(d.label.clone(), equations[0].clone(), None, branches)
            .map_err(|e| plane_error(path, e))?;
        return Ok(SingularityInput::Plane { sing, asserted });
    }
    let pres = LciPresentation::new(d.label.clone(), v, equations, parametrization).map_err(|e| lci_error(path, e))?;
    embedding_dimension(&pres).map_err(|e| lci_error(path, e))?;
    Ok(SingularityInput::Lci { pres, asserted })
}

/// Validates a parsed document and parses every expression in it.
pub fn validate(doc: &CurveDocument) -> Result<CurveInput, LoadError> {
    let mut singularities = Vec::new();
    let mut labels = BTreeSet::new();
    for (i, s) in doc.singularities.iter().enumerate() {
        let path = format!("singularities[{i}]");
        let input = match s {
            SingularityDocument::Plane(d) => load_plane(d, &path)?,
            SingularityDocument::Lci(d) => load_lci(d, &path)?,
        };
        if !labels.insert(input.label().to_string()) {
            return Err(schema(format!("{path}.label"), format!("duplicate label `{}`", input.label())));
        }
        singularities.push(input);
    }
    Ok(CurveInput {
        label: doc.label.clone(),
        genus: doc.genus,
        notes: doc.notes.clone(),
        singularities,
    })
}

/// Parses JSON text, reporting the field path of any shape error.
pub fn parse_document(text: &str) -> Result<CurveDocument, LoadError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        LoadError::Json {
            path: if path == "." { "document".into() } else { path },
            message: e.into_inner().to_string(),
        }
    })
}

pub fn load_str(text: &str) -> Result<CurveInput, LoadError> {
    validate(&parse_document(text)?)
}

pub fn load_curve(path: impl AsRef<Path>) -> Result<CurveInput, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    load_str(&text)
}

fn texts(ps: &[Poly]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn asserted_doc(a: Option<&Asserted>) -> Option<AssertedDocument> {
    a.map(|a| AssertedDocument {
        delta: a.delta,
        r: a.r,
        note: a.note.clone(),
    })
}

/// Canonical document for a loaded curve; loading it again yields an equal input.
pub fn to_document(c: &CurveInput) -> CurveDocument {
    let singularities = c
        .singularities
        .iter()
        .map(|s| match s {
            SingularityInput::Plane { sing, asserted } => SingularityDocument::Plane(PlaneDocument {
                label: sing.label().to_string(),
                f: sing.f().to_string(),
                variables: sing.f().vars().to_vec(),
                weights: sing.weights().map(|(a, b)| vec![a.to_string(), b.to_string()]),
                branches: sing.branches().map(|bs| {
                    bs.iter()
                        .map(|b| BranchDocument {
                            images: texts(b.param.images()),
                            equation: b.equation.as_ref().map(ToString::to_string),
                            precision: b.param.precision(),
                        })
                        .collect()
                }),
                asserted: asserted_doc(asserted.as_ref()),
            }),
            SingularityInput::Lci { pres, asserted } => SingularityDocument::Lci(LciDocument {
                label: pres.label().to_string(),
                variables: pres.variables().to_vec(),
                equations: texts(pres.equations()),
                parametrization: pres.parametrization().map(|b| texts(b.images())),
                lci: None,
                asserted: asserted_doc(asserted.as_ref()),
            }),
            SingularityInput::NonLci { germ, asserted } => SingularityDocument::Lci(LciDocument {
                label: germ.label.clone(),
                variables: germ.variables.to_vec(),
                equations: texts(&germ.equations),
                parametrization: germ.parametrization.as_ref().map(|b| texts(b.images())),
                lci: Some(false),
                asserted: asserted_doc(asserted.as_ref()),
            }),
        })
        .collect();
    CurveDocument {
        label: c.label.clone(),
        genus: c.genus,
        notes: c.notes.clone(),
        singularities,
    }
}
