use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{Monomial, Rational, SeriesError};

/// Shared ordered variable list.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Doubles as a truncated power series: callers truncate explicitly with
/// [`Poly::truncate`]. Arithmetic operators require identical ambients and
/// panic otherwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(vars: Vars) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        let arity = vars.len();
        Poly::term(vars, Monomial::one(arity), c)
    }

    pub fn one(vars: Vars) -> Self {
        Poly::constant(vars, Rational::one())
    }

    pub fn term(vars: Vars, mono: Monomial, c: Rational) -> Self {
        debug_assert_eq!(mono.arity(), vars.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { vars, terms }
    }

    pub fn var(vars: Vars, index: usize) -> Self {
        let arity = vars.len();
        Poly::term(vars, Monomial::var(arity, index), Rational::one())
    }

    pub fn from_terms<I>(vars: Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, SeriesError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| SeriesError::UnknownVariable(name.to_string()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.arity()))
    }

    /// Homogeneous component of total degree one.
    pub fn linear_part(&self) -> Poly {
        self.homogeneous_part(1)
    }

    pub fn homogeneous_part(&self, degree: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term (the order of the series), `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.arity(), self.arity());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Drops every term of total degree above `order`.
    pub fn truncate(&self, order: u32) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn mul_truncated(&self, other: &Poly, order: Option<u32>) -> Poly {
        self.check_ambient(other);
        let mut out = Poly::zero(self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                if order.is_some_and(|t| m.degree() > t) {
                    continue;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        self.pow_truncated(n, None)
    }

    pub fn pow_truncated(&self, n: u32, order: Option<u32>) -> Poly {
        let mut acc = Poly::one(self.vars.clone());
        if let Some(t) = order {
            acc = acc.truncate(t);
        }
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_truncated(&base, order);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_truncated(&base, order);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to the variable at `index`.
    pub fn diff_index(&self, index: usize) -> Poly {
        let mut out = Poly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            out.add_term(Monomial::new(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    pub fn diff(&self, var: &str) -> Result<Poly, SeriesError> {
        Ok(self.diff_index(self.var_index(var)?))
    }

    /// Composition `p(images[0], ..., images[n-1])`.
    ///
    /// All images share one target ambient; the result lives there. With
    /// `order` set, terms above that total degree are dropped along the way.
    pub fn compose(&self, images: &[Poly], order: Option<u32>) -> Result<Poly, SeriesError> {
        if images.len() != self.arity() {
            return Err(SeriesError::ArityMismatch {
                expected: self.arity(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| p.vars != target) {
            return Err(SeriesError::AmbientMismatch);
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Poly>> = images
            .iter()
            .map(|p| {
                let mut one = Poly::one(target.clone());
                if let Some(t) = order {
                    one = one.truncate(t);
                }
                vec![one, p.clone()]
            })
            .collect();
        let mut out = Poly::zero(target.clone());
        for (m, c) in &self.terms {
            let mut prod = Poly::constant(target.clone(), c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i]
                        .last()
                        .expect("nonempty")
                        .mul_truncated(&images[i], order);
                    powers[i].push(next);
                }
                prod = prod.mul_truncated(&powers[i][e as usize], order);
            }
            out = out + prod;
        }
        Ok(out)
    }

    /// Same polynomial viewed in a larger or reordered ambient that contains
    /// every variable of the current one.
    pub fn reembed(&self, target: &Vars) -> Result<Poly, SeriesError> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| SeriesError::UnknownVariable(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Poly::from_terms(
            target.clone(),
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; target.len()];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial::new(e), c.clone())
            }),
        ))
    }

    fn check_ambient(&self, other: &Poly) {
        assert!(
            self.vars == other.vars,
            "ambient mismatch: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self.check_ambient(&rhs);
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.clone() + rhs.clone()
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.clone() - rhs.clone()
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_truncated(rhs, None)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.mul_truncated(&rhs, None)
    }
}

/// Canonical form: descending graded-lex, reduced fractions, `1*` elided.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let factors = monomial_factors(&self.vars, m);
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.vars.join(","))
    }
}

fn monomial_factors(vars: &[String], m: &Monomial) -> Vec<String> {
    m.exponents()
        .iter()
        .zip(vars)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect()
}

/// Canonical text for a bare monomial, `1` for the unit.
pub fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let f = monomial_factors(vars, m);
    if f.is_empty() {
        "1".to_string()
    } else {
        f.join("*")
    }
}
