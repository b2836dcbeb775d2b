//! Incremental sparse reduced row echelon form over the rationals.
//!
//! Columns are indices into an ascending monomial list; every row pivots on its
//! smallest column, so standard monomials come out as the low-order
//! complement of the leading monomials. Rows can optionally carry their origin
//! (a sparse combination of input rows) for certificate extraction.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::series::Rational;

/// Sparse vector sorted by column index, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// `a - c*b` for sorted sparse vectors.
pub fn sub_scaled(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let x = &a[i].1 - c * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup(v: &SparseVec, col: usize) -> Option<&Rational> {
    v.binary_search_by_key(&col, |(k, _)| *k)
        .ok()
        .map(|i| &v[i].1)
}

#[derive(Clone, Debug)]
struct Row {
    entries: SparseVec,
    origin: SparseVec,
}

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    track: bool,
}

impl Echelon {
    pub fn new(track: bool) -> Self {
        Echelon {
            rows: BTreeMap::new(),
            track,
        }
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `entries` against the current rows. Returns the remainder and,
    /// when tracking, the combination `o` with `entries = remainder + sum o_k * input_k`.
    pub fn reduce(&self, entries: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = entries.clone();
        let mut origin = SparseVec::new();
        let hits: Vec<usize> = entries
            .iter()
            .map(|(k, _)| *k)
            .filter(|k| self.rows.contains_key(k))
            .collect();
        // rows hold no foreign pivot columns, so one pass suffices
        for k in hits {
            let Some(c) = lookup(&rem, k).cloned() else {
                continue;
            };
            let row = &self.rows[&k];
            rem = sub_scaled(&rem, &c, &row.entries);
            if self.track {
                origin = sub_scaled(&origin, &(-c), &row.origin);
            }
        }
        (rem, origin)
    }

    /// Adds input row number `id`. Returns `true` if the rank grew.
    pub fn insert(&mut self, id: usize, entries: SparseVec) -> bool {
        let (rem, combo) = self.reduce(&entries);
        if rem.is_empty() {
            return false;
        }
        let mut origin = if self.track {
            sub_scaled(&vec![(id, Rational::one())], &Rational::one(), &combo)
        } else {
            SparseVec::new()
        };
        let pivot = rem[0].0;
        let inv = Rational::one() / &rem[0].1;
        let entries: SparseVec = rem.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        if self.track {
            for e in origin.iter_mut() {
                e.1 = &e.1 * &inv;
            }
        }
        let new_row = Row { entries, origin };
        for row in self.rows.values_mut() {
            if let Some(c) = lookup(&row.entries, pivot).cloned() {
                row.entries = sub_scaled(&row.entries, &c, &new_row.entries);
                if self.track {
                    row.origin = sub_scaled(&row.origin, &c, &new_row.origin);
                }
            }
        }
        self.rows.insert(pivot, new_row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        pairs.iter().map(|&(k, x)| (k, rat(x, 1))).collect()
    }

    #[test]
    fn reduced_form_and_origins() {
        let mut e = Echelon::new(true);
        assert!(e.insert(0, sv(&[(0, 1), (1, 1)])));
        assert!(e.insert(1, sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(2, sv(&[(0, 1), (1, 2), (2, 1)])));
        let target = sv(&[(0, 2), (1, 3), (2, 1)]);
        let (rem, origin) = e.reduce(&target);
        assert!(rem.is_empty());
        // target = 2*row0 + 1*row1
        assert_eq!(origin, sv(&[(0, 2), (1, 1)]));
        let pivots: Vec<_> = e.pivots().collect();
        assert_eq!(pivots, vec![0, 1]);
    }
}
