//! Sparse exact elimination over the rationals.

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type SparseVec = BTreeMap<usize, BigRational>;

/// Row echelon form built incrementally; each stored row has leading entry 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        row.retain(|_, c| !c.is_zero());
        let mut out = SparseVec::new();
        while let Some((&c, _)) = row.iter().next() {
            let x = row.remove(&c).unwrap();
            match self.pivots.get(&c) {
                Some(p) => {
                    for (&k, y) in p.iter().skip(1) {
                        let e = row.entry(k).or_insert_with(BigRational::zero);
                        *e -= &x * y;
                        if e.is_zero() {
                            row.remove(&k);
                        }
                    }
                }
                None => {
                    out.insert(c, x);
                }
            }
        }
        out
    }

    /// Adds `row`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let r = self.reduce(row);
        let Some((&lead, x)) = r.iter().next() else {
            return false;
        };
        let inv = BigRational::one() / x;
        let r: SparseVec = r.into_iter().map(|(k, y)| (k, y * &inv)).collect();
        self.pivots.insert(lead, r);
        true
    }
}

/// Solves `sum_k row[k] x_k = rhs` for every `(row, rhs)`, setting free
/// variables to zero. Returns the solution and the rank, or `None` if the
/// system is inconsistent.
pub fn solve(nvars: usize, eqs: Vec<(SparseVec, BigRational)>) -> Option<(Vec<BigRational>, usize)> {
    let mut e = Echelon::new();
    for (mut row, rhs) in eqs {
        row.retain(|&k, _| k < nvars);
        if !rhs.is_zero() {
            row.insert(nvars, rhs);
        }
        e.insert(row);
    }
    if e.pivots.contains_key(&nvars) {
        return None;
    }
    let mut x = vec![BigRational::zero(); nvars];
    for (&lead, row) in e.pivots.iter().rev() {
        let mut val = row.get(&nvars).cloned().unwrap_or_else(BigRational::zero);
        for (&k, c) in row.range(lead + 1..nvars) {
            val -= c * &x[k];
        }
        x[lead] = val;
    }
    Some((x, e.rank()))
}

/// Rank of a family of sparse rows.
pub fn rank<I: IntoIterator<Item = SparseVec>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::rational;

    fn row(xs: &[(usize, i64)]) -> SparseVec {
        xs.iter().map(|&(k, x)| (k, rational(x, 1))).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank([row(&[(0, 1), (1, 2)]), row(&[(0, 2), (1, 4)]), row(&[(1, 1)])]), 2);
        assert_eq!(rank([row(&[(2, 3)]), row(&[(0, 1), (2, 1)]), row(&[(0, 1)])]), 2);
        assert_eq!(rank(Vec::<SparseVec>::new()), 0);
    }

    #[test]
    fn solves() {
        let eqs = vec![(row(&[(0, 1), (1, 1)]), rational(3, 1)), (row(&[(0, 1), (1, -1)]), rational(1, 1))];
        let (x, r) = solve(2, eqs).unwrap();
        assert_eq!((x, r), (vec![rational(2, 1), rational(1, 1)], 2));
        let bad = vec![(row(&[(0, 1)]), rational(1, 1)), (row(&[(0, 2)]), rational(1, 1))];
        assert!(solve(1, bad).is_none());
    }
}
