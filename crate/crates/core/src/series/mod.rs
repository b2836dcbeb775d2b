//! Exact polynomial arithmetic over the rationals, the input grammar, weight
//! detection and branch parametrizations.

mod monomial;
mod param;
mod parse;
mod poly;
mod weights;

pub use monomial::Monomial;
pub use param::{parameter_vars, substitute, BranchParam, PARAMETER};
pub use parse::{parse_poly, ParseError};
pub use poly::{format_monomial, vars, Poly, Vars};
pub use weights::{euler_defect, weight_feasibility};

/// Arbitrary-precision rational, always kept reduced with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("arity mismatch: expected {expected} images, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("images do not share one ambient")]
    AmbientMismatch,
    #[error("expected a polynomial in two variables, found {0}")]
    NotBivariate(usize),
    #[error("the zero polynomial has no weights")]
    ZeroPolynomial,
    #[error("branch images must be polynomials in `t`")]
    NotUnivariateInT,
    #[error("branch images must have zero constant term")]
    BranchConstantTerm,
    #[error("at least one branch image must be nonzero")]
    BranchAllZero,
}

#[cfg(test)]
mod props;
