//! Complete-intersection curve germs `Q[[x_1..x_e]]/(f_1..f_{e-1})`.
//!
//! For a minimal presentation every Jacobian entry lies in the maximal ideal,
//! so the last map of the complex computing the `(e+1)`-st derived exterior
//! power has entries in `m` and its cokernel `F (x) wedge^e G` survives
//! modulo `m` by Nakayama. That cokernel is a nonzero `E_2` term at
//! `(e+1, -1)`, of total degree `e`.

use num_integer::binomial;
use num_traits::Zero;
use serde::Serialize;

use crate::linalg::Matrix;
use crate::series::{rat, substitute, BranchParam, Poly, SeriesError, Vars};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LciError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("a curve germ needs at least two ambient variables, got {0}")]
    TooFewVariables(usize),
    #[error("no equations given")]
    NoEquations,
    #[error("{found} equations in {e} variables is not a curve complete intersection (expected {})", e - 1)]
    NotCompleteIntersection { e: usize, found: usize },
    #[error("equation {index} has a nonzero constant term")]
    ConstantTerm { index: usize },
    #[error("presentation is not minimal: equation {index} has linear part {linear_part}")]
    NonMinimalPresentation { index: usize, linear_part: String },
    #[error("planar germ carries no non-planar obstruction")]
    PlanarNoObstruction,
    #[error("no parametrization supplied")]
    MissingParametrization,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LciPresentation {
    label: String,
    variables: Vars,
    equations: Vec<Poly>,
    parametrization: Option<BranchParam>,
}

impl LciPresentation {
    pub fn new(
        label: impl Into<String>,
        variables: Vars,
        equations: Vec<Poly>,
        parametrization: Option<BranchParam>,
    ) -> Result<Self, LciError> {
        let e = variables.len();
        if e < 2 {
            return Err(LciError::TooFewVariables(e));
        }
        if equations.is_empty() {
            return Err(LciError::NoEquations);
        }
        if equations.len() != e - 1 {
            return Err(LciError::NotCompleteIntersection {
                e,
                found: equations.len(),
            });
        }
        for (index, f) in equations.iter().enumerate() {
            if f.vars() != &variables {
                return Err(SeriesError::AmbientMismatch.into());
            }
            if !f.constant_term().is_zero() {
                return Err(LciError::ConstantTerm { index });
            }
        }
        if let Some(p) = &parametrization {
            if p.images().len() != e {
                return Err(SeriesError::ArityMismatch {
                    expected: e,
                    found: p.images().len(),
                }
                .into());
            }
        }
        Ok(LciPresentation {
            label: label.into(),
            variables,
            equations,
            parametrization,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn variables(&self) -> &Vars {
        &self.variables
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn parametrization(&self) -> Option<&BranchParam> {
        self.parametrization.as_ref()
    }

    /// `jacobian[i][j] = d f_i / d x_j`.
    pub fn jacobian(&self) -> Vec<Vec<Poly>> {
        self.equations
            .iter()
            .map(|f| (0..self.variables.len()).map(|j| f.diff_index(j)).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub e: usize,
    /// `(degree, rank)` for each term of the complex in homological slot order.
    pub term_ranks: Vec<(i64, u64)>,
    pub coker_mod_m_dim: usize,
    /// Rank of the last map evaluated at the origin, computed from its matrix.
    pub phi_rank_at_origin: usize,
    pub jacobian_in_m: bool,
    pub nonzero_h_minus1: bool,
    pub obstruction_position: (i64, i64),
    pub total_degree: i64,
}

/// Number of variables, after confirming every equation lies in `m^2`.
pub fn embedding_dimension(p: &LciPresentation) -> Result<usize, LciError> {
    for (index, f) in p.equations.iter().enumerate() {
        let lin = f.linear_part();
        if !lin.is_zero() {
            return Err(LciError::NonMinimalPresentation {
                index,
                linear_part: lin.to_string(),
            });
        }
    }
    Ok(p.variables.len())
}

/// Working order for parametrization checks: `8 * (max image degree)`,
/// clamped to the declared precision.
pub fn parametrization_order(b: &BranchParam) -> u32 {
    let raw = 8 * b.max_degree().max(1);
    b.precision().map_or(raw, |p| raw.min(p))
}

/// Whether every equation vanishes on the parametrization through its working order.
pub fn verify_parametrization(p: &LciPresentation) -> Result<bool, LciError> {
    let b = p.parametrization().ok_or(LciError::MissingParametrization)?;
    let order = parametrization_order(b);
    for f in &p.equations {
        if !substitute(f, b, Some(order))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ranks of `Sym^(p-i) F (x) wedge^i G` with `rank F = e - 1`, `rank G = e`,
/// placed in degree `-p + i`.
pub fn complex_term_ranks(e: usize, p: usize) -> Vec<(i64, u64)> {
    assert!(e >= 2 && p >= 1, "need e >= 2 and p >= 1");
    (0..=p.min(e))
        .map(|i| {
            let sym = binomial((p - i + e - 2) as u64, (e - 2) as u64);
            let ext = binomial(e as u64, i as u64);
            (i as i64 - p as i64, sym * ext)
        })
        .collect()
}

fn sym2_basis(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect()
}

/// The map `Sym^2 F (x) wedge^(e-1) G -> F (x) wedge^e G` as a polynomial
/// matrix. Rows index `F`, columns index pairs `(f_a f_b, omega_m)` where
/// `omega_m` omits the `m`-th basis vector of `G`.
pub fn phi_matrix(p: &LciPresentation) -> Vec<Vec<Poly>> {
    let e = p.variables.len();
    let jac = p.jacobian();
    let zero = Poly::zero(p.variables.clone());
    let mut cols = Vec::new();
    for (a, b) in sym2_basis(e - 1) {
        for (m, (da, db)) in jac[a].iter().zip(&jac[b]).enumerate() {
            let sign = rat(if m % 2 == 0 { 1 } else { -1 }, 1);
            let mut col = vec![zero.clone(); e - 1];
            // f_a f_b (x) omega  ->  f_b (x) J(f_a) ^ omega + f_a (x) J(f_b) ^ omega
            let ja = da.scale(&sign);
            let jb = db.scale(&sign);
            col[b] = &col[b] + &ja;
            col[a] = &col[a] + &jb;
            cols.push(col);
        }
    }
    (0..e - 1)
        .map(|row| cols.iter().map(|c| c[row].clone()).collect())
        .collect()
}

/// Certifies the non-degeneration obstruction of a minimal non-planar germ.
pub fn obstruction(p: &LciPresentation) -> Result<ObstructionReport, LciError> {
    let e = embedding_dimension(p)?;
    if e == 2 {
        return Err(LciError::PlanarNoObstruction);
    }
    let jacobian_in_m = p
        .jacobian()
        .iter()
        .flatten()
        .all(|entry| entry.constant_term().is_zero());
    let phi = phi_matrix(p);
    let mut at_origin = Matrix::zeros(phi.len(), phi[0].len());
    for (i, row) in phi.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            at_origin[(i, j)] = x.constant_term();
        }
    }
    let phi_rank_at_origin = at_origin.rank();
    let coker_mod_m_dim = (e - 1) - phi_rank_at_origin;
    Ok(ObstructionReport {
        e,
        term_ranks: complex_term_ranks(e, e + 1),
        coker_mod_m_dim,
        phi_rank_at_origin,
        jacobian_in_m,
        nonzero_h_minus1: jacobian_in_m && coker_mod_m_dim > 0,
        obstruction_position: (e as i64 + 1, -1),
        total_degree: e as i64,
    })
}
