use num_traits::Zero;

use super::{vars, Poly, SeriesError, Vars};

/// Name of the formal parameter of every branch parametrization.
pub const PARAMETER: &str = "t";

pub fn parameter_vars() -> Vars {
    vars(&[PARAMETER])
}

/// Images of the ambient variables in `Q[[t]]`.
///
/// `precision` is `None` when the images are exact polynomials; otherwise they
/// are truncations of power series that are only trusted through that degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParam {
    images: Vec<Poly>,
    precision: Option<u32>,
}

impl BranchParam {
    pub fn new(images: Vec<Poly>, precision: Option<u32>) -> Result<Self, SeriesError> {
        let t = parameter_vars();
        if images.iter().any(|p| p.vars() != &t) {
            return Err(SeriesError::NotUnivariateInT);
        }
        if images.iter().any(|p| !p.constant_term().is_zero()) {
            return Err(SeriesError::BranchConstantTerm);
        }
        if images.iter().all(Poly::is_zero) {
            return Err(SeriesError::BranchAllZero);
        }
        let images = match precision {
            Some(n) => images.into_iter().map(|p| p.truncate(n)).collect(),
            None => images,
        };
        Ok(BranchParam { images, precision })
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    /// Largest t-degree among the images.
    pub fn max_degree(&self) -> u32 {
        self.images.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }
}

/// Composition `p(x_1(t), ..., x_n(t))`, optionally truncated at t-degree `order`.
pub fn substitute(p: &Poly, branch: &BranchParam, order: Option<u32>) -> Result<Poly, SeriesError> {
    p.compose(branch.images(), order)
}
