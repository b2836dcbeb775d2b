//! Finite-dimensional models of local rings `Q[[x]]/I` for m-primary ideals.
//!
//! The ideal is sliced at a truncation order `T`: the span of all truncated
//! multiples `trunc_T(m * g)` is row-reduced inside the space of polynomials of
//! degree at most `T`. If every monomial of degree `T` is a leading monomial
//! then `m^T` lies in `I + m^(T+1)`, hence in `I` by Nakayama, and the quotient
//! computed at order `T` is exact.

use std::collections::HashMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::echelon::{Echelon, SparseVec};
use crate::series::{Monomial, Poly, Rational, Vars};

/// Hard ceiling for automatic truncation doubling.
pub const TRUNCATION_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JetError {
    #[error("empty generator list")]
    NoGenerators,
    #[error("truncation order must be at least 1")]
    ZeroTruncation,
    #[error("ideal is not m-primary up to truncation order {truncation}")]
    NotMPrimary { truncation: u32 },
    #[error("polynomial ambient does not match the algebra")]
    AmbientMismatch,
    #[error("polynomial is not in the ideal")]
    NotInIdeal,
}

/// `Q[[x]] / I` at truncation order `T` with its standard-monomial basis.
#[derive(Clone, Debug)]
pub struct JetAlgebra {
    vars: Vars,
    generators: Vec<Poly>,
    truncation: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: Echelon,
    basis: Vec<usize>,
    primality_bound: u32,
}

/// Cofactors `c_i` with `target - sum c_i g_i` vanishing through degree `order_verified`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipWitness {
    pub cofactors: Vec<Poly>,
    pub order_verified: u32,
}

impl MembershipWitness {
    pub fn defect(&self, target: &Poly, generators: &[Poly]) -> Poly {
        self.cofactors
            .iter()
            .zip(generators)
            .fold(target.clone(), |acc, (c, g)| acc - c * g)
    }
}

/// Default starting truncation: `4 + 2 * (max generator degree)`.
pub fn default_truncation(generators: &[Poly]) -> u32 {
    4 + 2 * generators.iter().filter_map(Poly::degree).max().unwrap_or(0)
}

#[derive(Clone, Debug)]
struct Slice {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Slice {
    fn new(arity: usize, truncation: u32) -> Self {
        let monomials = Monomial::up_to_degree(arity, truncation);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Slice { monomials, index }
    }

    fn to_sparse(&self, p: &Poly) -> SparseVec {
        let mut v: SparseVec = p
            .terms()
            .filter_map(|(m, c)| self.index.get(m).map(|&i| (i, c.clone())))
            .collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// Every nonzero `(generator, multiplier)` pair at this truncation.
    fn multiples(&self, generators: &[Poly], truncation: u32) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (gi, g) in generators.iter().enumerate() {
            let Some(ord) = g.order() else { continue };
            for (mi, m) in self.monomials.iter().enumerate() {
                if m.degree() + ord <= truncation {
                    out.push((gi, mi));
                }
            }
        }
        out
    }

    fn row(&self, generators: &[Poly], truncation: u32, (gi, mi): (usize, usize)) -> SparseVec {
        self.to_sparse(&generators[gi].mul_monomial(&self.monomials[mi]).truncate(truncation))
    }
}

impl JetAlgebra {
    /// Row-reduces the ideal at truncation order `truncation`.
    pub fn build(generators: &[Poly], truncation: u32) -> Result<Self, JetError> {
        let first = generators.first().ok_or(JetError::NoGenerators)?;
        if truncation == 0 {
            return Err(JetError::ZeroTruncation);
        }
        let vars = first.vars().clone();
        if generators.iter().any(|g| g.vars() != &vars) {
            return Err(JetError::AmbientMismatch);
        }
        let slice = Slice::new(vars.len(), truncation);
        let mut echelon = Echelon::new(false);
        for (id, key) in slice.multiples(generators, truncation).into_iter().enumerate() {
            echelon.insert(id, slice.row(generators, truncation, key));
        }
        let basis: Vec<usize> = (0..slice.monomials.len())
            .filter(|&i| !echelon.is_pivot(i))
            .collect();
        let primality_bound = basis
            .iter()
            .map(|&i| slice.monomials[i].degree() + 1)
            .max()
            .unwrap_or(0);
        if primality_bound > truncation {
            return Err(JetError::NotMPrimary { truncation });
        }
        Ok(JetAlgebra {
            vars,
            generators: generators.to_vec(),
            truncation,
            monomials: slice.monomials,
            index: slice.index,
            echelon,
            basis,
            primality_bound,
        })
    }

    /// Starts at [`default_truncation`] and doubles on `NotMPrimary` up to `cap`.
    pub fn build_auto(generators: &[Poly], cap: u32) -> Result<Self, JetError> {
        let mut t = default_truncation(generators).min(cap);
        loop {
            match JetAlgebra::build(generators, t) {
                Err(JetError::NotMPrimary { .. }) if t < cap => t = (2 * t).min(cap),
                other => return other,
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// Smallest `N` with `m^N` contained in the ideal.
    pub fn primality_bound(&self) -> u32 {
        self.primality_bound
    }

    pub fn colength(&self) -> usize {
        self.basis.len()
    }

    /// Standard monomials, ascending graded-lex.
    pub fn basis(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&i| self.monomials[i].clone()).collect()
    }

    pub fn basis_poly(&self, i: usize) -> Poly {
        Poly::term(
            self.vars.clone(),
            self.monomials[self.basis[i]].clone(),
            Rational::from_integer(1.into()),
        )
    }

    /// Polynomial representative `sum coords[i] * basis[i]`.
    pub fn lift(&self, coords: &[Rational]) -> Poly {
        Poly::from_terms(
            self.vars.clone(),
            coords
                .iter()
                .zip(&self.basis)
                .map(|(c, &i)| (self.monomials[i].clone(), c.clone())),
        )
    }

    fn sparse(&self, p: &Poly) -> SparseVec {
        let mut v: SparseVec = p
            .terms()
            .filter(|(m, _)| m.degree() <= self.truncation)
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    /// Coordinates of the class of `p` over the standard basis.
    pub fn normal_form(&self, p: &Poly) -> Result<Vec<Rational>, JetError> {
        if p.vars() != &self.vars {
            return Err(JetError::AmbientMismatch);
        }
        let (rem, _) = self.echelon.reduce(&self.sparse(p));
        let mut coords = vec![Rational::zero(); self.basis.len()];
        for (k, c) in rem {
            let pos = self
                .basis
                .binary_search(&k)
                .expect("remainder supported on standard monomials");
            coords[pos] = c;
        }
        Ok(coords)
    }

    pub fn contains(&self, p: &Poly) -> Result<bool, JetError> {
        Ok(self.normal_form(p)?.iter().all(Zero::is_zero))
    }

    /// Cofactors expressing `p` in the ideal through degree `order`.
    pub fn membership_with_witness(&self, p: &Poly, order: u32) -> Result<MembershipWitness, JetError> {
        self.witness_solver(order, None).solve(p)
    }

    /// Tracked elimination at truncation `order`, reusable across targets.
    /// With a seed the input rows are inserted in a shuffled order, which
    /// generally yields different (equally valid) cofactors.
    pub fn witness_solver(&self, order: u32, seed: Option<u64>) -> WitnessSolver<'_> {
        let slice = Slice::new(self.vars.len(), order);
        let mut keys = slice.multiples(&self.generators, order);
        if let Some(s) = seed {
            keys.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
        }
        let mut echelon = Echelon::new(true);
        for (id, &key) in keys.iter().enumerate() {
            echelon.insert(id, slice.row(&self.generators, order, key));
        }
        WitnessSolver {
            algebra: self,
            order,
            slice,
            keys,
            echelon,
        }
    }
}

/// Produces membership witnesses at a fixed order.
pub struct WitnessSolver<'a> {
    algebra: &'a JetAlgebra,
    order: u32,
    slice: Slice,
    keys: Vec<(usize, usize)>,
    echelon: Echelon,
}

impl WitnessSolver<'_> {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn solve(&self, p: &Poly) -> Result<MembershipWitness, JetError> {
        let alg = self.algebra;
        if !alg.contains(p)? {
            return Err(JetError::NotInIdeal);
        }
        let (rem, combo) = self
            .echelon
            .reduce(&self.slice.to_sparse(&p.truncate(self.order)));
        // a member of I reduces to zero modulo m^(order+1)
        assert!(rem.is_empty(), "truncated ideal member failed to reduce");
        let mut cofactors = vec![Poly::zero(alg.vars.clone()); alg.generators.len()];
        for (id, c) in combo {
            let (gi, mi) = self.keys[id];
            cofactors[gi].add_term(self.slice.monomials[mi].clone(), c);
        }
        let witness = MembershipWitness {
            cofactors,
            order_verified: self.order,
        };
        debug_assert!(witness
            .defect(p, &alg.generators)
            .order()
            .is_none_or(|d| d > self.order));
        Ok(witness)
    }
}
