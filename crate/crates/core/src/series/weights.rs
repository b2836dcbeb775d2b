use num_traits::{One, Signed, Zero};

use super::{Poly, Rational, SeriesError};

/// Positive rational weights `(w1, w2)` with `a*w1 + b*w2 = 1` on every
/// support monomial `u^a v^b`, if such weights exist in the given coordinates.
///
/// When the support pins down a single direction the symmetric point
/// `w1 = w2` is returned, which minimizes `|w1 - w2|` over the feasible ray.
pub fn weight_feasibility(f: &Poly) -> Result<Option<(Rational, Rational)>, SeriesError> {
    if f.arity() != 2 {
        return Err(SeriesError::NotBivariate(f.arity()));
    }
    if f.is_zero() {
        return Err(SeriesError::ZeroPolynomial);
    }
    let points: Vec<(Rational, Rational)> = f
        .terms()
        .map(|(m, _)| {
            let e = m.exponents();
            (
                Rational::from_integer(e[0].into()),
                Rational::from_integer(e[1].into()),
            )
        })
        .collect();
    if points.iter().any(|(a, b)| a.is_zero() && b.is_zero()) {
        return Ok(None);
    }

    let (a0, b0) = &points[0];
    let independent = points
        .iter()
        .skip(1)
        .find(|(a, b)| !(a0 * b - b0 * a).is_zero());

    let (w1, w2) = match independent {
        Some((a1, b1)) => {
            // Cramer on [a0 b0; a1 b1] w = [1; 1]
            let det = a0 * b1 - b0 * a1;
            ((b1 - b0) / &det, (a0 - a1) / &det)
        }
        None => {
            if points.iter().any(|p| p != &points[0]) {
                return Ok(None);
            }
            let w = Rational::one() / (a0 + b0);
            (w.clone(), w)
        }
    };
    if !w1.is_positive() || !w2.is_positive() {
        return Ok(None);
    }
    if points.iter().any(|(a, b)| !(a * &w1 + b * &w2).is_one()) {
        return Ok(None);
    }
    debug_assert!(euler_defect(f, &w1, &w2).is_zero());
    Ok(Some((w1, w2)))
}

/// `f - w1*u*f_u - w2*v*f_v`; zero exactly when the Euler relation holds.
pub fn euler_defect(f: &Poly, w1: &Rational, w2: &Rational) -> Poly {
    let vars = f.vars().clone();
    let u = Poly::var(vars.clone(), 0);
    let v = Poly::var(vars, 1);
    let fu = f.diff_index(0);
    let fv = f.diff_index(1);
    f.clone() - (&u * &fu).scale(w1) - (&v * &fv).scale(w2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{parse_poly, vars};

    fn w(s: &str) -> Option<(Rational, Rational)> {
        weight_feasibility(&parse_poly(s, &vars(&["u", "v"])).unwrap()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        assert_eq!(w("u^2 + v^3"), Some((r(1, 2), r(1, 3))));
        assert_eq!(w("u*v"), Some((r(1, 2), r(1, 2))));
        // pure powers force w1 = w2 = 1/5, then 3/5 + 3/5 != 1
        assert_eq!(w("u^5 + v^5 + u^3*v^3"), None);
    }

    #[test]
    fn other_shapes() {
        assert_eq!(w("u^3 + u*v^3"), Some((r(1, 3), r(2, 9))));
        assert_eq!(w("u^2*v + v^5"), Some((r(2, 5), r(1, 5))));
        assert_eq!(w("u^2"), Some((r(1, 2), r(1, 2))));
        assert_eq!(w("u + u^2"), None);
        assert_eq!(w("1 + u"), None);
        assert!(weight_feasibility(&Poly::zero(vars(&["u", "v"]))).is_err());
        assert!(weight_feasibility(&parse_poly("x", &vars(&["x"])).unwrap()).is_err());
    }
}
