use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::int::Int;

/// Exact sparse integer matrix, stored as sorted rows of `(column, value)`.
/// No zero is ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Int)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseIntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Int::ONE));
        }
        m
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Int)>,
    ) -> Result<Self> {
        let mut data: Vec<Vec<(usize, Int)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows {
                return Err(Error::OutOfRange { index: r, limit: rows });
            }
            if c >= cols {
                return Err(Error::OutOfRange { index: c, limit: cols });
            }
            data[r].push((c, v));
        }
        for row in &mut data {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, Int)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 = &last.1 + &v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        Ok(SparseIntMatrix { rows, cols, data })
    }

    pub fn from_dense<T: Into<Int> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let triplets = rows.iter().enumerate().flat_map(|(i, r)| {
            assert_eq!(r.len(), cols, "ragged dense matrix");
            r.iter().enumerate().map(move |(j, v)| (i, j, v.clone().into()))
        });
        SparseIntMatrix::from_triplets(rows.len(), cols, triplets).expect("indices in range")
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut out = vec![vec![Int::ZERO; self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Uniform entries in `[-bound, bound]`.
    pub fn random<R: rand::Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> SparseIntMatrix {
        let dense: Vec<Vec<i64>> =
            (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect()).collect();
        if rows == 0 {
            return SparseIntMatrix::zeros(0, cols);
        }
        SparseIntMatrix::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Int)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Int {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(p) => self.data[r][p].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(p) if v.is_zero() => {
                row.remove(p);
            }
            Ok(p) => row[p].1 = v,
            Err(_) if v.is_zero() => {}
            Err(p) => row.insert(p, (c, v)),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Int)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let triplets = self.iter().map(|(r, c, v)| (c, r, v.clone()));
        SparseIntMatrix::from_triplets(self.cols, self.rows, triplets).expect("indices in range")
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut triplets = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<usize, Int> = Default::default();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let e = acc.entry(*c).or_insert(Int::ZERO);
                    *e = &*e + &(a * b);
                }
            }
            triplets.extend(acc.into_iter().map(|(c, v)| (r, c, v)));
        }
        SparseIntMatrix::from_triplets(self.rows, other.cols, triplets).expect("indices in range")
    }

    /// Columns listed in `keep`, in that order.
    pub fn select_columns(&self, keep: &[usize]) -> SparseIntMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let triplets = self.iter().filter(|(_, c, _)| pos[*c] != usize::MAX).map(|(r, c, v)| (r, pos[c], v.clone()));
        SparseIntMatrix::from_triplets(self.rows, keep.len(), triplets).expect("indices in range")
    }

    /// Appends columns on the right.
    pub fn hstack(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let triplets = self
            .iter()
            .map(|(r, c, v)| (r, c, v.clone()))
            .chain(other.iter().map(|(r, c, v)| (r, c + self.cols, v.clone())));
        SparseIntMatrix::from_triplets(self.rows, self.cols + other.cols, triplets).expect("indices in range")
    }

    /// Squared Euclidean norm of each column.
    pub fn column_sq_norms(&self) -> Vec<Int> {
        let mut out = vec![Int::ZERO; self.cols];
        for (_, c, v) in self.iter() {
            out[c] = &out[c] + &(v * v);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<(usize, Int)>> {
        self.data
    }

    pub(crate) fn from_sorted_rows(rows: usize, cols: usize, data: Vec<Vec<(usize, Int)>>) -> Self {
        debug_assert_eq!(data.len(), rows);
        debug_assert!(data
            .iter()
            .all(|r| r.windows(2).all(|w| w[0].0 < w[1].0) && r.iter().all(|e| e.0 < cols && !e.1.is_zero())));
        SparseIntMatrix { rows, cols, data }
    }

    /// Text dump: a `rows cols` header, then one `row col value` line per
    /// nonzero entry in row-major order.
    pub fn dump(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (r, c, v) in self.iter() {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<SparseIntMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Malformed("missing header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Malformed(format!("bad header: {header}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Malformed(format!("bad header: {header}")));
        };
        let mut triplets = Vec::new();
        for line in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Malformed(format!("bad entry line: {line}"));
            if toks.len() != 3 {
                return Err(bad());
            }
            let r: usize = toks[0].parse().map_err(|_| bad())?;
            let c: usize = toks[1].parse().map_err(|_| bad())?;
            let v: Int = toks[2].parse().map_err(|_| bad())?;
            if v.is_zero() {
                return Err(bad());
            }
            triplets.push((r, c, v));
        }
        SparseIntMatrix::from_triplets(rows, cols, triplets)
    }
}

impl std::fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "SparseIntMatrix {}x{}", self.rows, self.cols)?;
        if self.rows <= 12 && self.cols <= 12 {
            for row in self.to_dense() {
                writeln!(f, "  {row:?}")?;
            }
        } else {
            write!(f, "  ({} nonzeros)", self.nnz())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseIntMatrix::from_triplets(
            2,
            3,
            [(0, 1, Int::from(2)), (0, 1, Int::from(-2)), (1, 2, Int::from(5)), (1, 0, Int::from(1))],
        )
        .unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(1, 2), Int::from(5));
        assert!(SparseIntMatrix::from_triplets(1, 1, [(0, 1, Int::ONE)]).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let m = SparseIntMatrix::from_dense(&[vec![0i64, -3], vec![7, 0], vec![0, 0]]);
        let text = m.dump();
        assert_eq!(text, "3 2\n0 1 -3\n1 0 7\n");
        assert_eq!(SparseIntMatrix::parse_dump(&text).unwrap(), m);
        assert!(SparseIntMatrix::parse_dump("2 2\n0 0\n").is_err());
        assert!(SparseIntMatrix::parse_dump("2 2\n5 0 1\n").is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_dense(&[vec![1i64, 2], vec![3, 4]]);
        let b = SparseIntMatrix::from_dense(&[vec![0i64, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).to_dense(), SparseIntMatrix::from_dense(&[vec![2i64, 1], vec![4, 3]]).to_dense());
        assert_eq!(a.transpose().get(0, 1), Int::from(3));
        let mut c = a.clone();
        c.set(0, 0, Int::ZERO);
        assert_eq!(c.nnz(), 3);
        assert_eq!(a.column_sq_norms(), vec![Int::from(10), Int::from(20)]);
    }
}
