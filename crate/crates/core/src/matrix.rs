//! Small dense integer matrices used as basis labels.

use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Row-major integer matrix. Entry access is 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Schema("ragged matrix".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.concat() })
    }

    pub fn diag(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    /// The matrix unit with a 1 at the 0-based position `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, 1);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.cols + j] += x;
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    pub fn total(&self) -> i64 {
        self.data.iter().sum()
    }

    /// Row sums.
    pub fn ro(&self) -> Vec<i64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).sum()).collect()
    }

    /// Column sums.
    pub fn co(&self) -> Vec<i64> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j)).sum()).collect()
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&x| x >= 0)
    }

    pub fn offdiag_nonnegative(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) >= 0))
    }

    /// Copy with the diagonal replaced by zeros.
    pub fn offdiag_part(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, 0);
        }
        m
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// If `self - r E_{h,h+1}` is diagonal for some 1-based `h` and `r >= 0`,
    /// returns `(h, r)`; a diagonal matrix gives `None`.
    pub fn upper_chevalley(&self) -> Option<(usize, i64)> {
        self.chevalley_shape(true)
    }

    /// If `self - r E_{h+1,h}` is diagonal, returns `(h, r)`.
    pub fn lower_chevalley(&self) -> Option<(usize, i64)> {
        self.chevalley_shape(false)
    }

    fn chevalley_shape(&self, upper: bool) -> Option<(usize, i64)> {
        if self.rows != self.cols {
            return None;
        }
        let mut found = None;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i == j || self.get(i, j) == 0 {
                    continue;
                }
                let ok = if upper { j == i + 1 } else { i == j + 1 };
                if !ok || found.is_some() || self.get(i, j) < 0 {
                    return None;
                }
                found = Some((if upper { i + 1 } else { j + 1 }, self.get(i, j)));
            }
        }
        found
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(d)?;
        IntMatrix::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// All n x c natural matrices with the given entry total.
pub fn natural_matrices(rows: usize, cols: usize, total: i64) -> Vec<IntMatrix> {
    let cells = rows * cols;
    let mut out = Vec::new();
    let mut cur = vec![0i64; cells];
    fn rec(pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[pos] = x;
            rec(pos + 1, left - x, cur, out);
        }
        cur[pos] = 0;
    }
    if cells == 0 {
        if total == 0 {
            out.push(IntMatrix::zeros(rows, cols));
        }
        return out;
    }
    let mut raw = Vec::new();
    rec(0, total, &mut cur, &mut raw);
    for data in raw {
        out.push(IntMatrix { rows, cols, data });
    }
    out.sort();
    out
}

/// Compositions of `total` into `parts` natural numbers (weak compositions).
pub fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut cur = vec![0i64; parts];
    fn rec(pos: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for x in 0..=left {
            cur[pos] = x;
            rec(pos + 1, left - x, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_and_shapes() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![0, 3]]).unwrap();
        assert_eq!(m.ro(), vec![3, 3]);
        assert_eq!(m.co(), vec![1, 5]);
        assert_eq!(m.upper_chevalley(), Some((1, 2)));
        assert_eq!(m.lower_chevalley(), None);
        assert_eq!(IntMatrix::diag(&[1, 1]).upper_chevalley(), None);
    }

    #[test]
    fn theta_count() {
        assert_eq!(natural_matrices(2, 2, 2).len(), 10);
        assert_eq!(natural_matrices(3, 3, 3).len(), 165);
        assert_eq!(compositions(2, 3).len(), 6);
    }
}
