//! Sparse matrices over `ℚ(i)` and Gauss–Jordan reduction.

use std::fmt;

use super::scalar::Scalar;
use super::subspace::Subspace;
use super::vector::{self, SparseVec};
use crate::error::ExactError;

/// Below this column count reductions run on a dense copy.
pub const DENSE_CUTOFF: usize = 64;

/// Row-major sparse matrix. Each row is sorted by column and stores no zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: n, cols: n, data: (0..n).map(vector::unit).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.iter().all(|(c, x)| *c < cols && !x.is_zero())));
        Matrix { rows: data.len(), cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        Matrix::from_rows(rows, columns.to_vec()).transpose()
    }

    pub fn from_dense(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged dense matrix");
        Matrix { rows: rows.len(), cols, data: rows.iter().map(|r| vector::from_dense(r)).collect() }
    }

    /// Integer entries, convenient for tests and presets.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_dense(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for (r, c, x) in entries {
            m.add_to(r, c, &x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        vector::get(&self.data[r], c).cloned().unwrap_or(Scalar::ZERO)
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => {
                if x.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = x;
                }
            }
            Err(k) => {
                if !x.is_zero() {
                    row.insert(k, (c, x));
                }
            }
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, x: &Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, &cur + x);
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// All nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, x)| (r, *c, x)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = vec![Vec::new(); self.cols];
        for (r, c, x) in self.entries() {
            data[c].push((r, x.clone()));
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| vector::get(row, c).map(|x| (r, x.clone())))
            .collect()
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(vector::conj).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| vector::scale(r, s)).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&Scalar::int(-1))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, ExactError> {
        if self.shape() != other.shape() {
            return Err(ExactError::Shape(format!("add {:?} + {:?}", self.shape(), other.shape())));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| vector::add(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, ExactError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape(format!("mul {:?} * {:?}", self.shape(), other.shape())));
        }
        let mut acc: Vec<Option<Scalar>> = vec![None; other.cols];
        let mut touched = Vec::new();
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    let prod = a * b;
                    match &mut acc[*c] {
                        Some(v) => *v += &prod,
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*c);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &c in &touched {
                let v = acc[c].take().unwrap();
                if !v.is_zero() {
                    out.push((c, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let x = vector::dot(row, v);
                (!x.is_zero()).then_some((r, x))
            })
            .collect()
    }

    /// Rows `[r0, r1)` and columns `[c0, c1)`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        let data = self.data[r0..r1].iter().map(|row| vector::window(row, c0, c1)).collect();
        Matrix { rows: r1 - r0, cols: c1 - c0, data }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for (r, c, x) in block.entries() {
            self.set(r0 + r, c0 + c, x.clone());
        }
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows);
        let mut off = 0;
        for b in blocks {
            for row in &b.data {
                data.push(vector::shift(row, off));
            }
            off += b.cols;
        }
        Matrix { rows, cols, data }
    }

    /// The submatrix on the listed rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            pos[c] = k;
        }
        let data = rows
            .iter()
            .map(|&r| {
                let mut v: SparseVec =
                    self.data[r].iter().filter(|(c, _)| pos[*c] != usize::MAX).map(|(c, x)| (pos[*c], x.clone())).collect();
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect();
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Kronecker product; rows and columns of `other` vary fastest.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut data = vec![Vec::new(); self.rows * other.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (r2, row2) in other.data.iter().enumerate() {
                let out = &mut data[r * other.rows + r2];
                for (c, x) in row {
                    for (c2, y) in row2 {
                        out.push((c * other.cols + c2, x * y));
                    }
                }
            }
        }
        Matrix { rows: self.rows * other.rows, cols: self.cols * other.cols, data }
    }

    /// `[a; b]`
    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix, ExactError> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(ExactError::Shape("vstack with unequal column counts".into()));
        }
        let data: Vec<SparseVec> = parts.iter().flat_map(|m| m.data.iter().cloned()).collect();
        Ok(Matrix { rows: data.len(), cols, data })
    }

    /// `[a | b]`
    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix, ExactError> {
        let rows = parts.first().map_or(0, |m| m.rows);
        if parts.iter().any(|m| m.rows != rows) {
            return Err(ExactError::Shape("hstack with unequal row counts".into()));
        }
        let mut data = vec![Vec::new(); rows];
        let mut off = 0;
        for m in parts {
            for (r, row) in m.data.iter().enumerate() {
                data[r].extend(vector::shift(row, off));
            }
            off += m.cols;
        }
        Ok(Matrix { rows, cols: off, data })
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Some `X` with `self · X = rhs` (free variables set to zero), or `None`
    /// if the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve: row counts differ");
        let n = self.cols;
        let aug = Matrix::hstack(&[self, rhs]).expect("row counts checked");
        let (red, piv) = rref_rows(aug.data, n + rhs.cols);
        if piv.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Matrix::zeros(n, rhs.cols);
        for (row, &p) in red.iter().zip(&piv) {
            x.data[p] = vector::window(row, n, n + rhs.cols);
        }
        Some(x)
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug: Vec<SparseVec> = self
            .data
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut v = row.clone();
                v.push((n + r, Scalar::ONE));
                v
            })
            .collect();
        let (red, piv) = rref_rows(aug, 2 * n);
        if piv.iter().take_while(|&&p| p < n).count() < n {
            return None;
        }
        let data = red.iter().map(|row| vector::window(row, n, 2 * n)).collect();
        Some(Matrix { rows: n, cols: n, data })
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, piv) = rref_rows(m.data.clone(), m.cols);
    let mut data = rows;
    data.resize(m.rows, Vec::new());
    (Matrix { rows: m.rows, cols: m.cols, data }, piv)
}

/// Reduces a list of row vectors and returns only the nonzero rows in echelon
/// order together with their pivot columns.
pub fn rref_rows(rows: Vec<SparseVec>, cols: usize) -> (Vec<SparseVec>, Vec<usize>) {
    if cols < DENSE_CUTOFF {
        rref_dense(rows, cols)
    } else {
        rref_sparse(rows)
    }
}

fn rref_dense(rows: Vec<SparseVec>, cols: usize) -> (Vec<SparseVec>, Vec<usize>) {
    let mut a: Vec<Vec<Scalar>> = rows.iter().map(|r| vector::to_dense(r, cols)).collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for c in 0..cols {
        if pr >= nrows {
            break;
        }
        // smallest row index with a nonzero entry in the leftmost open column
        let Some(found) = (pr..nrows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(pr, found);
        let inv = a[pr][c].inv().expect("nonzero pivot");
        for x in a[pr][c..].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = a[pr].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == pr || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        pr += 1;
    }
    let out = a.into_iter().take(pr).map(|r| vector::from_dense(&r)).collect();
    (out, pivots)
}

fn rref_sparse(rows: Vec<SparseVec>) -> (Vec<SparseVec>, Vec<usize>) {
    let mut ech = Echelon::default();
    for r in rows {
        ech.insert(r);
    }
    ech.into_parts()
}

/// Incrementally maintained reduced echelon basis, keyed by pivot column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: Vec<usize>,
    rows: Vec<SparseVec>,
}

impl Echelon {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Subtracts the span components at pivot columns; zero iff `v` is in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        // pivot columns vanish in every other basis row, so one pass suffices
        let mut out = v.clone();
        for (k, &c) in self.pivots.iter().enumerate() {
            if let Some(coef) = vector::get(&out, c).cloned() {
                out = vector::axpy(&out, &-coef, &self.rows[k]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        let Some((c0, lead)) = r.first().cloned() else { return false };
        let inv = lead.inv().expect("nonzero lead");
        r = vector::scale(&r, &inv);
        for row in self.rows.iter_mut() {
            if let Some(f) = vector::get(row, c0).cloned() {
                *row = vector::axpy(row, &-f, &r);
            }
        }
        let k = self.pivots.partition_point(|&p| p < c0);
        self.pivots.insert(k, c0);
        self.rows.insert(k, r);
        true
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn into_parts(self) -> (Vec<SparseVec>, Vec<usize>) {
        (self.rows, self.pivots)
    }
}

/// Null space of `m` as a canonical subspace of the column space.
pub fn kernel(m: &Matrix) -> Subspace {
    let (red, piv) = rref_rows(m.data.clone(), m.cols);
    Subspace::from_independent(m.cols, kernel_basis(&red, &piv, m.cols))
}

/// Basis of the null space read off a reduced echelon form.
pub fn kernel_basis(red: &[SparseVec], piv: &[usize], cols: usize) -> Vec<SparseVec> {
    let mut is_pivot = vec![false; cols];
    for &p in piv {
        is_pivot[p] = true;
    }
    let mut col_entries: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
    for (k, row) in red.iter().enumerate() {
        for (c, x) in row {
            if !is_pivot[*c] {
                col_entries[*c].push((piv[k], -x));
            }
        }
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = std::mem::take(&mut col_entries[f]);
            v.push((f, Scalar::ONE));
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect()
}

/// Column space of `m`.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::span(m.rows, m.columns())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_real() {
        let (r, p) = rref(&Matrix::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(p, vec![0]);
        assert_eq!(r, Matrix::from_ints(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn identity_is_reduced() {
        let id = Matrix::identity(3);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn gaussian_rank_one() {
        // row2 = -i * row1
        let m = Matrix::from_dense(vec![vec![Scalar::I, Scalar::ONE], vec![Scalar::ONE, Scalar::gauss(0, -1)]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::zeros(2, 3)).dim(), 3);
        assert_eq!(image(&Matrix::identity(2)).dim(), 2);
        let k = kernel(&Matrix::from_ints(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k, Subspace::span(2, vec![vec![(0, Scalar::ONE), (1, Scalar::int(-1))]]));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = Matrix::from_ints(&[&[1, 2], &[2, 4], &[0, 1]]);
        let b = Matrix::from_ints(&[&[3], &[6], &[1]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
        assert!(a.solve(&Matrix::from_ints(&[&[1], &[0], &[0]])).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_dense(vec![
            vec![Scalar::gauss(1, 1), Scalar::int(2)],
            vec![Scalar::int(0), Scalar::gauss(0, 3)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn sparse_and_dense_agree_on_wide_rows() {
        let cols = DENSE_CUTOFF + 6;
        let rows: Vec<SparseVec> = (0..5)
            .map(|r| (0..cols).filter(|c| (c * 7 + r * 3) % 5 == 0).map(|c| (c, Scalar::gauss((c % 4) as i64 - 1, r as i64))).filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        let a = rref_dense(rows.clone(), cols);
        let b = rref_sparse(rows);
        assert_eq!(a, b);
    }
}
