//! Sparse matrices over a [`Ring`], stored by column.

use std::collections::HashMap;

use crate::ring::{Field, Ring};

/// A sparse vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec<R> = Vec<(usize, R)>;

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<R> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<R>>,
}

impl<R: Ring> SparseMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![vec![]; cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.columns[i].push((i, R::one()));
        }
        m
    }

    /// Duplicates are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, R)>) -> Self {
        let mut acc: Vec<HashMap<usize, R>> = vec![HashMap::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            let slot = acc[c].entry(r).or_insert_with(R::zero);
            *slot = slot.clone() + v;
        }
        let columns = acc
            .into_iter()
            .map(|m| {
                let mut v: SparseVec<R> = m.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                v.sort_by_key(|&(r, _)| r);
                v
            })
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<R>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        Self::from_triplets(
            n_rows,
            n_cols,
            rows.iter().enumerate().flat_map(|(r, row)| row.iter().cloned().enumerate().map(move |(c, v)| (r, c, v))),
        )
    }

    /// Build from columns; each column is sorted and cleaned.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<R>>) -> Self {
        let cols = columns.len();
        Self::from_triplets(
            rows,
            cols,
            columns.into_iter().enumerate().flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, R)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> R {
        match self.columns[c].binary_search_by_key(&r, |&(i, _)| i) {
            Ok(k) => self.columns[c][k].1.clone(),
            Err(_) => R::zero(),
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        assert!(r < self.rows && c < self.cols);
        let col = &mut self.columns[c];
        match col.binary_search_by_key(&r, |&(i, _)| i) {
            Ok(k) if v.is_zero() => {
                col.remove(k);
            }
            Ok(k) => col[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => col.insert(k, (r, v)),
        }
    }

    /// `(row, col, value)` in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v.clone())))
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix<R>) -> SparseMatrix<R> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let columns = rhs
            .columns
            .iter()
            .map(|col| {
                let mut acc: HashMap<usize, R> = HashMap::new();
                for (k, b) in col {
                    for (r, a) in &self.columns[*k] {
                        let slot = acc.entry(*r).or_insert_with(R::zero);
                        *slot = slot.clone() + a.clone() * b.clone();
                    }
                }
                let mut v: SparseVec<R> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                v.sort_by_key(|&(r, _)| r);
                v
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: rhs.cols, columns }
    }

    pub fn add(&self, rhs: &SparseMatrix<R>) -> SparseMatrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().chain(rhs.triplets()).map(|(r, c, v)| (r, c, v.clone())),
        )
    }

    /// `self * v`.
    pub fn apply(&self, v: &[(usize, R)]) -> SparseVec<R> {
        let mut acc: HashMap<usize, R> = HashMap::new();
        for (k, b) in v {
            for (r, a) in &self.columns[*k] {
                let slot = acc.entry(*r).or_insert_with(R::zero);
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        let mut out: SparseVec<R> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        out.sort_by_key(|&(r, _)| r);
        out
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SparseMatrix<S> {
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(|(r, v)| (*r, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix<R> {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            row_pos[r] = k;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                self.columns[c]
                    .iter()
                    .filter(|(r, _)| row_pos[*r] != usize::MAX)
                    .map(|(r, v)| (row_pos[*r], v.clone()))
                    .collect::<SparseVec<R>>()
            })
            .map(|mut v| {
                v.sort_by_key(|&(r, _)| r);
                v
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        let mut out = vec![vec![R::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }
}

/// `a + s * b` for sparse vectors.
pub fn axpy<R: Ring>(a: &[(usize, R)], s: &R, b: &[(usize, R)]) -> SparseVec<R> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = s.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.clone() + s.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Column reduction over a field: each column is reduced against the
/// pivots found so far, keyed by lowest (largest) row index.
pub struct ColumnReducer<F> {
    pivots: HashMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for ColumnReducer<F> {
    fn default() -> Self {
        ColumnReducer { pivots: HashMap::new() }
    }
}

impl<F: Field> ColumnReducer<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v`; returns the residue, which is zero iff `v` lies in the
    /// span of the columns added so far.
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((low, c)) = v.last().cloned() {
            match self.pivots.get(&low) {
                Some(p) => {
                    let s = -(c / p.last().unwrap().1.clone());
                    v = axpy(&v, &s, p);
                }
                None => break,
            }
        }
        v
    }

    /// Add `v` to the span; true iff it increased the rank.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let r = self.reduce(v);
        match r.last() {
            Some(&(low, _)) => {
                self.pivots.insert(low, r);
                true
            }
            None => false,
        }
    }
}

pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    // reduce along the shorter side
    let m = if m.rows() < m.cols() { m.transpose() } else { m.clone() };
    let mut red = ColumnReducer::new();
    for c in 0..m.cols() {
        red.insert(m.column(c).to_vec());
    }
    red.rank()
}

/// A basis of the kernel of `m`, as sparse vectors over its columns.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    // reduce columns while recording the combination that produced them
    let mut pivots: HashMap<usize, (SparseVec<F>, SparseVec<F>)> = HashMap::new();
    let mut out = vec![];
    for c in 0..m.cols() {
        let mut v = m.column(c).to_vec();
        let mut comb: SparseVec<F> = vec![(c, F::one())];
        while let Some((low, x)) = v.last().cloned() {
            match pivots.get(&low) {
                Some((p, pc)) => {
                    let s = -(x / p.last().unwrap().1.clone());
                    v = axpy(&v, &s, p);
                    comb = axpy(&comb, &s, pc);
                }
                None => break,
            }
        }
        match v.last() {
            Some(&(low, _)) => {
                pivots.insert(low, (v, comb));
            }
            None => out.push(comb),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::F2;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn products_and_transpose() {
        let a = SparseMatrix::from_dense(&[vec![1i64, 2], vec![0, 1], vec![3, 0]]);
        let b = SparseMatrix::from_dense(&[vec![1i64, 0, 1], vec![0, 1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab.to_dense(), vec![vec![1, 2, 1], vec![0, 1, 0], vec![3, 0, 3]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.get(2, 0), 3);
        let mut c = a.clone();
        c.set(2, 0, 0);
        assert_eq!(c.nnz(), 3);
        assert!(a.add(&a.map(|v| -v)).is_zero());
    }

    #[test]
    fn ranks_over_fields() {
        let m = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]]);
        assert_eq!(rank(&m), 2);
        let m2 = SparseMatrix::from_dense(&[vec![2i64, 0], vec![0, 3]]).map(|&v| F2::new(v));
        assert_eq!(rank(&m2), 1);
        assert_eq!(rank(&SparseMatrix::<F2>::zeros(3, 4)), 0);
    }

    #[test]
    fn kernels() {
        let m = SparseMatrix::from_dense(&[vec![q(1), q(1), q(0)], vec![q(0), q(0), q(0)]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.apply(v).is_empty());
        }
        let s = SparseMatrix::from_dense(&[vec![q(1), q(2), q(3)], vec![q(1), q(3), q(5)]]);
        let k = kernel_basis(&s);
        assert_eq!(k.len(), 1);
        assert!(s.apply(&k[0]).is_empty());
    }
}
