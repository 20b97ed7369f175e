//! Exact sparse row reduction over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

/// Row echelon form built one vector at a time.
///
/// Every stored row has leading coefficient 1 at its pivot column and no
/// entries left of it.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

fn axpy(v: &mut SparseVec, f: &Rational, row: &SparseVec) {
    for (&c, a) in row {
        let e = v.entry(c).or_insert_with(Rational::zero);
        *e -= f * a;
        if e.is_zero() {
            v.remove(&c);
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0;
        while let Some((&c, coef)) = v.range(cursor..).next() {
            if let Some(row) = self.rows.get(&c) {
                let f = coef.clone();
                axpy(&mut v, &f, row);
            }
            cursor = c + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Add `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lead;
        for a in v.values_mut() {
            *a *= &inv;
        }
        self.rows.insert(p, v);
        true
    }

    /// Eliminate every pivot column from all other rows.
    pub fn reduce_fully(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let row = self.rows[&p].clone();
            for (_, other) in self.rows.range_mut(..p) {
                if let Some(f) = other.get(&p).cloned() {
                    axpy(other, &f, &row);
                }
            }
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Kernel of the matrix whose rows were inserted, as vectors of length
    /// `ncols`.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseVec> {
        let mut rref = self.clone();
        rref.reduce_fully();
        (0..ncols)
            .filter(|c| !rref.rows.contains_key(c))
            .map(|free| {
                let mut v = SparseVec::new();
                v.insert(free, Rational::one());
                for (&p, row) in &rref.rows {
                    if let Some(a) = row.get(&free) {
                        v.insert(p, -a.clone());
                    }
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|&(c, a)| (c, rat(a, 1))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[(0, 1), (1, 2)])));
        assert!(e.insert(sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(sv(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
        let k = e.nullspace(3);
        assert_eq!(k.len(), 1);
        // x0 + 2 x1 = 0, x1 + x2 = 0 -> (2, -1, 1)
        assert_eq!(k[0], sv(&[(0, 2), (1, -1), (2, 1)]));
    }
}
