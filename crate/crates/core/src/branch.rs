//! Delta invariants and branch counts from explicit branch parametrizations.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::echelon::{Echelon, SparseVec};
use crate::series::{substitute, BranchParam, Monomial, Poly, SeriesError};

/// Upper bound on automatic working-order growth for exact parametrizations.
pub const WORKING_ORDER_CAP: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BranchError {
    #[error("branch images vanish through order {order}")]
    DegenerateBranch { order: u32 },
    #[error("value semigroup has no conductor below order {order}")]
    NoConductor { order: u32 },
    #[error("substitution vanishes through order {order}")]
    NotTransverseAtOrder { order: u32 },
    #[error("Milnor formula fails: mu = {mu} but 2*delta - r + 1 = {expected}")]
    MilnorMismatch { mu: usize, expected: i64 },
    #[error("no branch data supplied")]
    MissingBranches,
    #[error("branch {index} needs its own equation when several branches are present")]
    MissingEquation { index: usize },
    #[error("branch {index} does not lie on the curve through order {order}")]
    NotOnCurve { index: usize, order: u32 },
    #[error("equation of branch {index} does not vanish on it through order {order}")]
    EquationMismatch { index: usize, order: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// One analytic branch: its parametrization and, optionally, a local equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneBranch {
    pub param: BranchParam,
    pub equation: Option<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub delta: usize,
    pub r: usize,
    pub per_branch_delta: Vec<usize>,
    /// Symmetric with zero diagonal.
    pub pairwise_intersections: Vec<Vec<usize>>,
    pub working_order: u32,
}

impl DeltaReport {
    /// `2*delta - r + 1`, the Milnor number predicted by the branch data.
    pub fn predicted_mu(&self) -> i64 {
        2 * self.delta as i64 - self.r as i64 + 1
    }
}

/// `8 * (max image degree)`, clamped to the available precision.
pub fn default_working_order(branches: &[PlaneBranch]) -> u32 {
    let raw = 8 * branches
        .iter()
        .map(|b| b.param.max_degree())
        .max()
        .unwrap_or(1)
        .max(1);
    clamp_to_precision(branches, raw)
}

fn precision_cap(branches: &[PlaneBranch]) -> u32 {
    branches
        .iter()
        .filter_map(|b| b.param.precision())
        .min()
        .unwrap_or(WORKING_ORDER_CAP)
}

fn clamp_to_precision(branches: &[PlaneBranch], order: u32) -> u32 {
    order.min(precision_cap(branches))
}

/// Exponent vectors whose weighted order under `weights` is at most `order`.
/// A `None` weight marks a vanishing image, which only contributes exponent 0.
fn bounded_exponents(weights: &[Option<u32>], order: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut budgets = vec![order];
    for w in weights {
        let mut next = Vec::new();
        let mut next_budgets = Vec::new();
        for (e, &budget) in out.iter().zip(&budgets) {
            let max = match w {
                Some(w) if *w > 0 => budget / w,
                _ => 0,
            };
            for k in 0..=max {
                let mut e2 = e.clone();
                e2.push(k);
                next.push(e2);
                next_budgets.push(budget - k * w.unwrap_or(0));
            }
        }
        out = next;
        budgets = next_budgets;
    }
    out
}

fn as_column_vector(p: &Poly) -> SparseVec {
    p.terms()
        .map(|(m, c)| (m.exponents()[0] as usize, c.clone()))
        .collect()
}

/// Values `ord_t(p(x(t)))` for polynomials `p`, restricted to `[0, order]`.
pub fn branch_semigroup(b: &BranchParam, order: u32) -> Result<BTreeSet<u32>, BranchError> {
    let images: Vec<Poly> = b.images().iter().map(|x| x.truncate(order)).collect();
    let weights: Vec<Option<u32>> = images.iter().map(Poly::order).collect();
    if weights.iter().all(Option::is_none) {
        return Err(BranchError::DegenerateBranch { order });
    }
    let mut echelon = Echelon::new(false);
    let one = Poly::one(crate::series::parameter_vars());
    for (id, e) in bounded_exponents(&weights, order).into_iter().enumerate() {
        let m = Monomial::new(e);
        let value = images
            .iter()
            .zip(m.exponents())
            .fold(one.clone(), |acc, (x, &k)| {
                acc.mul_truncated(&x.pow_truncated(k, Some(order)), Some(order))
            });
        echelon.insert(id, as_column_vector(&value));
    }
    Ok(echelon.pivots().map(|c| c as u32).collect())
}

/// Gap count of the value semigroup, certified by a visible conductor.
pub fn delta_one_branch(b: &BranchParam, order: u32) -> Result<usize, BranchError> {
    let values = branch_semigroup(b, order)?;
    let no_conductor = BranchError::NoConductor { order };
    let multiplicity = *values.iter().find(|&&v| v > 0).ok_or(no_conductor.clone())?;
    // a run of `multiplicity` consecutive values forces everything above it
    let conductor = (0..=order)
        .find(|&c| c + multiplicity - 1 <= order && (c..c + multiplicity).all(|v| values.contains(&v)))
        .ok_or(no_conductor)?;
    Ok((0..conductor).filter(|v| !values.contains(v)).count())
}

/// `ord_t` of `f_other` restricted to the branch.
pub fn intersection_multiplicity(f_other: &Poly, b: &BranchParam, order: u32) -> Result<usize, BranchError> {
    substitute(f_other, b, Some(order))?
        .order()
        .map(|o| o as usize)
        .ok_or(BranchError::NotTransverseAtOrder { order })
}

fn report_at(f: &Poly, branches: &[PlaneBranch], order: u32) -> Result<DeltaReport, BranchError> {
    let r = branches.len();
    for (index, b) in branches.iter().enumerate() {
        if !substitute(f, &b.param, Some(order))?.is_zero() {
            return Err(BranchError::NotOnCurve { index, order });
        }
        if let Some(eq) = &b.equation {
            if !substitute(eq, &b.param, Some(order))?.is_zero() {
                return Err(BranchError::EquationMismatch { index, order });
            }
        } else if r > 1 {
            return Err(BranchError::MissingEquation { index });
        }
    }
    let per_branch_delta = branches
        .iter()
        .map(|b| delta_one_branch(&b.param, order))
        .collect::<Result<Vec<_>, _>>()?;
    let mut pairwise = vec![vec![0; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let eq = branches[i].equation.as_ref().expect("checked above");
            let m = intersection_multiplicity(eq, &branches[j].param, order)?;
            pairwise[i][j] = m;
            pairwise[j][i] = m;
        }
    }
    let delta = per_branch_delta.iter().sum::<usize>()
        + (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).map(|(i, j)| pairwise[i][j]).sum::<usize>();
    Ok(DeltaReport {
        delta,
        r,
        per_branch_delta,
        pairwise_intersections: pairwise,
        working_order: order,
    })
}

/// Assembles delta and r for the germ `f = 0`, doubling the working order on
/// a missing conductor while precision allows.
pub fn branch_delta(f: &Poly, branches: &[PlaneBranch], order: Option<u32>) -> Result<DeltaReport, BranchError> {
    if branches.is_empty() {
        return Err(BranchError::MissingBranches);
    }
    let cap = precision_cap(branches);
    let mut order = match order {
        Some(o) => clamp_to_precision(branches, o),
        None => default_working_order(branches),
    };
    loop {
        match report_at(f, branches, order) {
            Err(BranchError::NoConductor { .. } | BranchError::NotTransverseAtOrder { .. }) if order < cap => {
                order = (2 * order).min(cap)
            }
            other => return other,
        }
    }
}

/// [`branch_delta`] followed by the Milnor-formula check against `mu`.
pub fn delta_report(f: &Poly, branches: &[PlaneBranch], order: Option<u32>, mu: usize) -> Result<DeltaReport, BranchError> {
    let report = branch_delta(f, branches, order)?;
    if report.predicted_mu() != mu as i64 {
        return Err(BranchError::MilnorMismatch {
            mu,
            expected: report.predicted_mu(),
        });
    }
    Ok(report)
}
