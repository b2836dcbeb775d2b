use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Global quantities that local data does not determine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Unknown {
    /// `dim ker(u)` for `u = d_1^{1,0}`.
    Kappa,
    /// `dim coker(u)`.
    C,
    /// `dim ker(v)` for `v = d_1^{0,1}`.
    KerV,
    /// `dim coker(v)`.
    CokerV,
}

impl Unknown {
    pub fn name(self) -> &'static str {
        match self {
            Unknown::Kappa => "kappa",
            Unknown::C => "c",
            Unknown::KerV => "k_v",
            Unknown::CokerV => "cok_v",
        }
    }
}

/// `constant + sum coeff * unknown` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Affine {
    pub constant: i64,
    pub terms: BTreeMap<Unknown, i64>,
}

impl Affine {
    pub fn constant(c: i64) -> Self {
        Affine {
            constant: c,
            terms: BTreeMap::new(),
        }
    }

    pub fn unknown(u: Unknown) -> Self {
        Affine {
            constant: 0,
            terms: BTreeMap::from([(u, 1)]),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalize(mut self) -> Self {
        self.terms.retain(|_, c| *c != 0);
        self
    }

    pub fn plus(&self, other: &Affine) -> Affine {
        let mut out = self.clone();
        out.constant += other.constant;
        for (u, c) in &other.terms {
            *out.terms.entry(*u).or_insert(0) += c;
        }
        out.normalize()
    }

    pub fn minus(&self, other: &Affine) -> Affine {
        self.plus(&other.scaled(-1))
    }

    pub fn scaled(&self, k: i64) -> Affine {
        Affine {
            constant: self.constant * k,
            terms: self.terms.iter().map(|(u, c)| (*u, c * k)).collect(),
        }
        .normalize()
    }

    pub fn substitute(&self, u: Unknown, value: i64) -> Affine {
        let mut out = self.clone();
        if let Some(c) = out.terms.remove(&u) {
            out.constant += c * value;
        }
        out
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, coeff: i64, name: Option<&str>| -> fmt::Result {
            let (sign, mag) = (coeff < 0, coeff.unsigned_abs());
            match (first, sign) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            match name {
                Some(n) if mag == 1 => write!(f, "{n}"),
                Some(n) => write!(f, "{mag}*{n}"),
                None => write!(f, "{mag}"),
            }
        };
        for (u, c) in &self.terms {
            put(f, *c, Some(u.name()))?;
        }
        if self.constant != 0 || self.terms.is_empty() {
            put(f, self.constant, None)?;
        }
        Ok(())
    }
}

/// One cell of a spectral-sequence page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Entry {
    Exact(u64),
    Symbolic(Affine),
    /// Nonzero of undetermined dimension.
    Positive,
    /// Dimension bounded below.
    AtLeast(u64),
}

impl Entry {
    pub fn from_affine(a: Affine) -> Entry {
        if a.is_constant() {
            assert!(a.constant >= 0, "negative dimension {}", a.constant);
            Entry::Exact(a.constant as u64)
        } else {
            Entry::Symbolic(a)
        }
    }

    /// Affine view of exact and symbolic entries.
    pub fn affine(&self) -> Option<Affine> {
        match self {
            Entry::Exact(n) => Some(Affine::constant(*n as i64)),
            Entry::Symbolic(a) => Some(a.clone()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Entry::Exact(0))
    }

    pub fn substitute(&self, u: Unknown, value: i64) -> Entry {
        match self {
            Entry::Symbolic(a) => Entry::from_affine(a.substitute(u, value)),
            other => other.clone(),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Exact(n) => write!(f, "{n}"),
            Entry::Symbolic(a) => write!(f, "{a}"),
            Entry::Positive => write!(f, ">0"),
            Entry::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

/// An affine identity among the unknowns, `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub lhs: Affine,
    pub rhs: i64,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
