//! Isolated plane curve singularities: Milnor and Tjurina algebras,
//! multiplication by `f`, and the tail differential.
//!
//! The tail differential sends a class `m` with `f*m` in the Jacobian ideal to
//! `[d/du alpha + d/dv beta]` in the Tjurina algebra, where
//! `f*m = alpha*f_u + beta*f_v`. Two cofactor pairs differ by a Koszul syzygy
//! `c*(-f_v, f_u)`, whose contribution `c_v*f_u - c_u*f_v` dies in `T_f`.
//! For weighted-homogeneous `f` the map is the scalar `lambda + w1 + w2` on
//! the weighted-degree-`lambda` piece.

use num_traits::Zero;

use crate::branch::{self, BranchError, DeltaReport, PlaneBranch};
use crate::jets::{JetAlgebra, JetError, TRUNCATION_CAP};
use crate::linalg::Matrix;
use crate::series::{euler_defect, substitute, weight_feasibility, Monomial, Poly, Rational, SeriesError};

/// Seed for the second, independently pivoted witness.
const ALT_WITNESS_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaneError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("f has a nonzero constant term")]
    ConstantTerm,
    #[error("Euler relation fails for the given weights")]
    EulerRelation,
    #[error("weights must be positive")]
    NonPositiveWeights,
    #[error("singularity is not isolated (Jacobian ideal not m-primary at truncation {truncation})")]
    NonIsolated { truncation: u32 },
    #[error("no weights available for the scalar tail formula")]
    MissingWeights,
    #[error("tail class changed between witness orders {order} and {}", order + 2)]
    WitnessOrderInsufficient { order: u32 },
    #[error(transparent)]
    Branch(#[from] BranchError),
    #[error(transparent)]
    Jet(#[from] JetError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSingularity {
    label: String,
    f: Poly,
    weights: Option<(Rational, Rational)>,
    branches: Option<Vec<PlaneBranch>>,
}

impl PlaneSingularity {
    /// Validates `f`, the Euler relation for supplied weights, and that every
    /// branch lies on `f = 0` through its default working order. When no
    /// weights are supplied, weights in the given coordinates are detected.
    pub fn new(
        label: impl Into<String>,
        f: Poly,
        weights: Option<(Rational, Rational)>,
        branches: Option<Vec<PlaneBranch>>,
    ) -> Result<Self, PlaneError> {
        if f.arity() != 2 {
            return Err(SeriesError::NotBivariate(f.arity()).into());
        }
        if f.is_zero() {
            return Err(SeriesError::ZeroPolynomial.into());
        }
        if !f.constant_term().is_zero() {
            return Err(PlaneError::ConstantTerm);
        }
        let weights = match weights {
            Some((w1, w2)) => {
                if w1 <= Rational::zero() || w2 <= Rational::zero() {
                    return Err(PlaneError::NonPositiveWeights);
                }
                if !euler_defect(&f, &w1, &w2).is_zero() {
                    return Err(PlaneError::EulerRelation);
                }
                Some((w1, w2))
            }
            None => weight_feasibility(&f)?,
        };
        if let Some(bs) = &branches {
            let order = branch::default_working_order(bs);
            for (index, b) in bs.iter().enumerate() {
                if b.param.images().len() != 2 {
                    return Err(SeriesError::ArityMismatch {
                        expected: 2,
                        found: b.param.images().len(),
                    }
                    .into());
                }
                if !substitute(&f, &b.param, Some(order))?.is_zero() {
                    return Err(BranchError::NotOnCurve { index, order }.into());
                }
            }
        }
        Ok(PlaneSingularity {
            label: label.into(),
            f,
            weights,
            branches,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn weights(&self) -> Option<&(Rational, Rational)> {
        self.weights.as_ref()
    }

    pub fn branches(&self) -> Option<&[PlaneBranch]> {
        self.branches.as_deref()
    }

    pub fn jacobian(&self) -> Vec<Poly> {
        vec![self.f.diff_index(0), self.f.diff_index(1)]
    }

    pub fn tjurina_generators(&self) -> Vec<Poly> {
        vec![self.f.clone(), self.f.diff_index(0), self.f.diff_index(1)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalInvariants {
    pub mu: usize,
    pub tau: usize,
    pub qh_by_saito: bool,
    pub wh_in_coords: bool,
    pub delta: Option<usize>,
    pub r: Option<usize>,
}

/// Multiplication by `f` on the Milnor algebra, in its standard basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultByF {
    pub matrix: Matrix,
    pub kernel_basis: Vec<Vec<Rational>>,
    /// Milnor-basis indices whose classes span the cokernel.
    pub cokernel_basis: Vec<usize>,
}

impl MultByF {
    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.cokernel_basis.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailMap {
    /// Kernel of `f` on `M_f`, in Milnor-basis coordinates.
    pub source_basis: Vec<Vec<Rational>>,
    /// Standard monomials of the Tjurina algebra.
    pub target_basis: Vec<Monomial>,
    pub matrix: Matrix,
    pub rank: usize,
    /// Truncation order of the membership witnesses, if any were used.
    pub witness_order: Option<u32>,
    /// Whether an independently pivoted witness gave the same classes.
    pub witness_independent: Option<bool>,
}

/// Milnor and Tjurina algebras of one singularity at a common truncation.
#[derive(Clone, Debug)]
pub struct PlaneAnalysis {
    sing: PlaneSingularity,
    milnor: JetAlgebra,
    tjurina: JetAlgebra,
}

impl PlaneAnalysis {
    /// With `truncation = None` the order is chosen automatically and doubled
    /// until the Jacobian ideal is certified m-primary.
    pub fn new(sing: &PlaneSingularity, truncation: Option<u32>) -> Result<Self, PlaneError> {
        let jac = sing.jacobian();
        let milnor = match truncation {
            Some(t) => JetAlgebra::build(&jac, t),
            None => JetAlgebra::build_auto(&jac, TRUNCATION_CAP),
        }
        .map_err(|e| match e {
            JetError::NotMPrimary { truncation } => PlaneError::NonIsolated { truncation },
            other => other.into(),
        })?;
        // the Tjurina ideal contains the Jacobian ideal, so the same order certifies it
        let tjurina = JetAlgebra::build(&sing.tjurina_generators(), milnor.truncation())?;
        Ok(PlaneAnalysis {
            sing: sing.clone(),
            milnor,
            tjurina,
        })
    }

    pub fn singularity(&self) -> &PlaneSingularity {
        &self.sing
    }

    pub fn milnor_algebra(&self) -> &JetAlgebra {
        &self.milnor
    }

    pub fn tjurina_algebra(&self) -> &JetAlgebra {
        &self.tjurina
    }

    pub fn mu(&self) -> usize {
        self.milnor.colength()
    }

    pub fn tau(&self) -> usize {
        self.tjurina.colength()
    }

    pub fn saito(&self) -> bool {
        self.mu() == self.tau()
    }

    pub fn invariants(&self, delta: Option<&DeltaReport>) -> LocalInvariants {
        LocalInvariants {
            mu: self.mu(),
            tau: self.tau(),
            qh_by_saito: self.saito(),
            wh_in_coords: weight_feasibility(self.sing.f()).ok().flatten().is_some(),
            delta: delta.map(|d| d.delta),
            r: delta.map(|d| d.r),
        }
    }

    /// Branch data assembled into delta and r, checked against Milnor's formula.
    pub fn delta_report(&self, order: Option<u32>) -> Result<DeltaReport, PlaneError> {
        let branches = self.sing.branches().ok_or(BranchError::MissingBranches)?;
        Ok(branch::delta_report(self.sing.f(), branches, order, self.mu())?)
    }

    pub fn mult_by_f(&self) -> Result<MultByF, PlaneError> {
        let f = self.sing.f();
        let columns = (0..self.mu())
            .map(|j| self.milnor.normal_form(&(f * &self.milnor.basis_poly(j))))
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = Matrix::from_columns(self.mu(), &columns);
        Ok(MultByF {
            kernel_basis: matrix.nullspace(),
            cokernel_basis: matrix.cokernel_coordinates(),
            matrix,
        })
    }

    fn tail_columns(&self, products: &[Poly], order: u32, seed: Option<u64>) -> Result<Vec<Vec<Rational>>, PlaneError> {
        let solver = self.milnor.witness_solver(order, seed);
        products
            .iter()
            .map(|g| {
                let w = solver.solve(g)?;
                let value = w.cofactors[0].diff_index(0) + w.cofactors[1].diff_index(1);
                Ok(self.tjurina.normal_form(&value)?)
            })
            .collect()
    }

    /// Tail differential for arbitrary isolated `f`, from membership witnesses.
    pub fn tail_map_general(&self) -> Result<TailMap, PlaneError> {
        let kernel = self.mult_by_f()?.kernel_basis;
        let f = self.sing.f();
        let products: Vec<Poly> = kernel.iter().map(|k| f * &self.milnor.lift(k)).collect();
        let n_m = self.milnor.primality_bound();
        let n_t = self.tjurina.primality_bound();
        let top = products.iter().filter_map(Poly::degree).max().unwrap_or(0);
        // errors above degree n_m + n_t cannot reach T_f, see module docs
        let order = (n_t + top + 2).max(n_m + n_t + 2);
        let columns = self.tail_columns(&products, order, None)?;
        if self.tail_columns(&products, order + 2, None)? != columns {
            return Err(PlaneError::WitnessOrderInsufficient { order });
        }
        let independent = self.tail_columns(&products, order, Some(ALT_WITNESS_SEED))? == columns;
        let matrix = Matrix::from_columns(self.tau(), &columns);
        Ok(TailMap {
            source_basis: kernel,
            target_basis: self.tjurina.basis(),
            rank: matrix.rank(),
            matrix,
            witness_order: Some(order),
            witness_independent: Some(independent),
        })
    }

    /// Tail differential from the weighted scalar formula.
    pub fn tail_map_wh_scalar(&self) -> Result<TailMap, PlaneError> {
        let (w1, w2) = self.sing.weights().ok_or(PlaneError::MissingWeights)?;
        let kernel = self.mult_by_f()?.kernel_basis;
        let basis = self.milnor.basis();
        let scalars: Vec<Rational> = basis
            .iter()
            .map(|m| {
                let e = m.exponents();
                w1 * Rational::from_integer(e[0].into()) + w2 * Rational::from_integer(e[1].into()) + w1 + w2
            })
            .collect();
        let columns = kernel
            .iter()
            .map(|k| {
                let scaled: Vec<Rational> = k.iter().zip(&scalars).map(|(x, s)| x * s).collect();
                self.tjurina.normal_form(&self.milnor.lift(&scaled))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let matrix = Matrix::from_columns(self.tau(), &columns);
        Ok(TailMap {
            source_basis: kernel,
            target_basis: self.tjurina.basis(),
            rank: matrix.rank(),
            matrix,
            witness_order: None,
            witness_independent: None,
        })
    }

    /// Rank of the local comparison map, the same chain map as the tail.
    pub fn d10_local_rank(&self) -> Result<usize, PlaneError> {
        Ok(self.tail_map_general()?.rank)
    }
}

pub fn milnor_tjurina(s: &PlaneSingularity) -> Result<(usize, usize), PlaneError> {
    let a = PlaneAnalysis::new(s, None)?;
    Ok((a.mu(), a.tau()))
}

/// Quasihomogeneity via `tau == mu`.
pub fn saito_test(s: &PlaneSingularity) -> Result<bool, PlaneError> {
    Ok(PlaneAnalysis::new(s, None)?.saito())
}

pub fn mult_by_f(s: &PlaneSingularity) -> Result<MultByF, PlaneError> {
    PlaneAnalysis::new(s, None)?.mult_by_f()
}

pub fn tail_map_general(s: &PlaneSingularity) -> Result<TailMap, PlaneError> {
    PlaneAnalysis::new(s, None)?.tail_map_general()
}

pub fn tail_map_wh_scalar(s: &PlaneSingularity) -> Result<TailMap, PlaneError> {
    PlaneAnalysis::new(s, None)?.tail_map_wh_scalar()
}

pub fn d10_local_rank(s: &PlaneSingularity) -> Result<usize, PlaneError> {
    PlaneAnalysis::new(s, None)?.d10_local_rank()
}

/// Diagonal matrix helper for comparisons in tests and reports.
pub fn diagonal(entries: &[Rational]) -> Matrix {
    let mut m = Matrix::zeros(entries.len(), entries.len());
    for (i, x) in entries.iter().enumerate() {
        m[(i, i)] = x.clone();
    }
    m
}

impl TailMap {
    /// Whether the map is an isomorphism.
    pub fn is_full_rank(&self) -> bool {
        self.rank == self.matrix.rows() && self.rank == self.matrix.cols()
    }

    /// Diagonal entries when the matrix is diagonal.
    pub fn diagonal_entries(&self) -> Option<Vec<Rational>> {
        let m = &self.matrix;
        let diag_only = (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || m[(i, j)].is_zero()));
        (diag_only && m.rows() == m.cols()).then(|| (0..m.rows()).map(|i| m[(i, i)].clone()).collect())
    }
}

impl MultByF {
    pub fn is_zero_map(&self) -> bool {
        self.matrix.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{parameter_vars, parse_poly, rat, vars, BranchParam};

    fn uv(s: &str) -> Poly {
        parse_poly(s, &vars(&["u", "v"])).unwrap()
    }

    fn sing(s: &str) -> PlaneSingularity {
        PlaneSingularity::new(s, uv(s), None, None).unwrap()
    }

    #[test]
    fn milnor_and_tjurina_numbers() {
        for n in 1..=6 {
            let s = sing(&format!("u^2 + v^{}", n + 1));
            assert_eq!(milnor_tjurina(&s).unwrap(), (n, n));
        }
        assert_eq!(milnor_tjurina(&sing("u^3 + v^5")).unwrap(), (8, 8));
        let (mu, tau) = milnor_tjurina(&sing("u^5 + v^5 + u^3*v^3")).unwrap();
        assert!(tau < mu, "{tau} < {mu}");
    }

    #[test]
    fn saito_examples() {
        assert!(saito_test(&sing("u*v")).unwrap());
        assert!(saito_test(&sing("u^3 + v^5")).unwrap());
        assert!(!saito_test(&sing("u^5 + v^5 + u^3*v^3")).unwrap());
    }

    #[test]
    fn multiplication_by_f() {
        let m = mult_by_f(&sing("u*v")).unwrap();
        assert_eq!((m.kernel_dim(), m.cokernel_dim()), (1, 1));
        let m = mult_by_f(&sing("u^2 + v^3")).unwrap();
        assert!(m.is_zero_map());
        assert_eq!(m.kernel_dim(), 2);
        let s = sing("u^5 + v^5 + u^3*v^3");
        let a = PlaneAnalysis::new(&s, None).unwrap();
        let m = a.mult_by_f().unwrap();
        assert_eq!(m.kernel_dim(), a.tau());
        assert_eq!(m.cokernel_dim(), a.tau());
    }

    #[test]
    fn general_tail_examples() {
        let t = tail_map_general(&sing("u*v")).unwrap();
        assert_eq!(t.matrix, diagonal(&[rat(1, 1)]));
        assert_eq!(t.rank, 1);
        let t = tail_map_general(&sing("u^2 + v^3")).unwrap();
        assert_eq!(t.diagonal_entries(), Some(vec![rat(5, 6), rat(7, 6)]));
        assert_eq!(t.rank, 2);
        assert_eq!(t.witness_independent, Some(true));
    }

    #[test]
    fn scalar_tail_examples() {
        let t = tail_map_wh_scalar(&sing("u*v")).unwrap();
        assert_eq!(t.matrix, diagonal(&[rat(1, 1)]));
        let t = tail_map_wh_scalar(&sing("u^2 + v^3")).unwrap();
        assert_eq!(t.diagonal_entries(), Some(vec![rat(5, 6), rat(7, 6)]));
        let s = sing("u^3 + v^5");
        let t = tail_map_wh_scalar(&s).unwrap();
        assert_eq!(t.rank, 8);
        let a = PlaneAnalysis::new(&s, None).unwrap();
        for (m, x) in a.milnor_algebra().basis().iter().zip(t.diagonal_entries().unwrap()) {
            let e = m.exponents();
            assert!(e[0] <= 1 && e[1] <= 3);
            assert_eq!(x, rat(e[0] as i64, 3) + rat(e[1] as i64, 5) + rat(8, 15));
        }
        assert_eq!(d10_local_rank(&s).unwrap(), 8);
        assert_eq!(tail_map_general(&s).unwrap().matrix, t.matrix);
    }

    #[test]
    fn scalar_needs_weights() {
        assert_eq!(
            tail_map_wh_scalar(&sing("u^5 + v^5 + u^3*v^3")).unwrap_err(),
            PlaneError::MissingWeights
        );
    }

    #[test]
    fn non_qh_tail_is_recorded() {
        let s = sing("u^5 + v^5 + u^3*v^3");
        let a = PlaneAnalysis::new(&s, None).unwrap();
        let t = a.tail_map_general().unwrap();
        assert_eq!(t.matrix.rows(), a.tau());
        assert_eq!(t.matrix.cols(), a.tau());
        assert!(t.rank <= a.tau());
        assert_eq!(t.witness_independent, Some(true));
    }

    #[test]
    fn validation() {
        assert_eq!(
            PlaneSingularity::new("c", uv("1 + u^2"), None, None).unwrap_err(),
            PlaneError::ConstantTerm
        );
        assert_eq!(
            PlaneSingularity::new("w", uv("u^2 + v^3"), Some((rat(1, 3), rat(1, 3))), None).unwrap_err(),
            PlaneError::EulerRelation
        );
        let three = parse_poly("x*y*z", &vars(&["x", "y", "z"])).unwrap();
        assert!(PlaneSingularity::new("3", three, None, None).is_err());
        assert!(matches!(
            PlaneAnalysis::new(&sing("u^2"), Some(16)),
            Err(PlaneError::NonIsolated { truncation: 16 })
        ));
        let t = |s: &str| parse_poly(s, &parameter_vars()).unwrap();
        let off = PlaneBranch {
            param: BranchParam::new(vec![t("t^2"), t("t^3")], None).unwrap(),
            equation: None,
        };
        assert!(matches!(
            PlaneSingularity::new("cusp", uv("u^2 - v^3"), None, Some(vec![off])),
            Err(PlaneError::Branch(BranchError::NotOnCurve { index: 0, .. }))
        ));
    }

    #[test]
    fn stable_under_truncation() {
        let s = sing("u^2*v + v^6");
        let a = PlaneAnalysis::new(&s, None).unwrap();
        let b = PlaneAnalysis::new(&s, Some(a.milnor_algebra().truncation() + 2)).unwrap();
        assert_eq!((a.mu(), a.tau()), (b.mu(), b.tau()));
        assert_eq!(a.tail_map_general().unwrap(), b.tail_map_general().unwrap());
    }
}
