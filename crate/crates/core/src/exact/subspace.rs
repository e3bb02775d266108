//! Linear subspaces of `ℚ(i)ⁿ` in canonical reduced echelon form.
//!
//! Two subspaces are equal exactly when their stored bases are equal, so
//! `Subspace` implements `Eq` and `Hash` structurally.

use super::matrix::{kernel_basis, rref_rows, Matrix};
use super::scalar::Scalar;
use super::vector::{self, SparseVec};
use crate::error::ExactError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(vector::unit).collect(), pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: Vec<SparseVec>) -> Self {
        debug_assert!(vectors.iter().all(|v| v.last().map_or(true, |(i, _)| *i < ambient)));
        let (basis, pivots) = rref_rows(vectors, ambient);
        Subspace { ambient, basis, pivots }
    }

    /// Same as [`Subspace::span`]; the name documents that the caller expects no redundancy.
    pub fn from_independent(ambient: usize, vectors: Vec<SparseVec>) -> Self {
        let n = vectors.len();
        let s = Subspace::span(ambient, vectors);
        debug_assert_eq!(s.dim(), n, "vectors were dependent");
        s
    }

    /// Coordinate subspace spanned by the given unit vectors.
    pub fn coordinate(ambient: usize, coords: impl IntoIterator<Item = usize>) -> Self {
        Subspace::span(ambient, coords.into_iter().map(vector::unit).collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Canonical basis (reduced echelon rows).
    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn into_basis(self) -> Vec<SparseVec> {
        self.basis
    }

    /// Basis as the rows of a matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(self.ambient, self.basis.clone())
    }

    fn check(&self, other: &Subspace) -> Result<(), ExactError> {
        if self.ambient != other.ambient {
            return Err(ExactError::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    /// Residue of `v` after clearing pivot coordinates; empty iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (k, &c) in self.pivots.iter().enumerate() {
            if let Some(coef) = vector::get(&out, c).cloned() {
                out = vector::axpy(&out, &-coef, &self.basis[k]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> =
            self.pivots.iter().map(|&c| vector::get(v, c).cloned().unwrap_or(Scalar::ZERO)).collect();
        let mut rebuilt = Vec::new();
        for (k, x) in coords.iter().enumerate() {
            rebuilt = vector::axpy(&rebuilt, x, &self.basis[k]);
        }
        (rebuilt == *v).then_some(coords)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, vs))
    }

    /// Sum of many subspaces of the same ambient space.
    pub fn sum_all<'a>(ambient: usize, parts: impl IntoIterator<Item = &'a Subspace>) -> Result<Subspace, ExactError> {
        let mut vs = Vec::new();
        for p in parts {
            if p.ambient != ambient {
                return Err(ExactError::AmbientMismatch { left: ambient, right: p.ambient });
            }
            vs.extend(p.basis.iter().cloned());
        }
        Ok(Subspace::span(ambient, vs))
    }

    /// Zassenhaus intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let n = self.ambient;
        let mut rows: Vec<SparseVec> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut r = u.clone();
            r.extend(vector::shift(u, n));
            rows.push(r);
        }
        for w in &other.basis {
            rows.push(w.clone());
        }
        let (red, piv) = rref_rows(rows, 2 * n);
        let meet = red
            .iter()
            .zip(&piv)
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| vector::window(r, n, 2 * n))
            .collect();
        Ok(Subspace::span(n, meet))
    }

    /// Vectors pairing to zero with every element under the bilinear dot product.
    pub fn annihilator(&self) -> Subspace {
        Subspace::from_independent(self.ambient, kernel_basis(&self.basis, &self.pivots, self.ambient))
    }

    /// `{ x : m·x ∈ self }`, with `self` living in the target of `m`.
    pub fn preimage(&self, m: &Matrix) -> Result<Subspace, ExactError> {
        if m.rows() != self.ambient {
            return Err(ExactError::AmbientMismatch { left: m.rows(), right: self.ambient });
        }
        if self.is_full() {
            return Ok(Subspace::full(m.cols()));
        }
        let ann = Matrix::from_rows(self.ambient, self.annihilator().into_basis());
        Ok(super::matrix::kernel(&ann.mul(m)?))
    }

    /// `m(self)`.
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace, ExactError> {
        if m.cols() != self.ambient {
            return Err(ExactError::AmbientMismatch { left: m.cols(), right: self.ambient });
        }
        Ok(Subspace::span(m.rows(), self.basis.iter().map(|v| m.apply(v)).collect()))
    }

    /// `dim(self / sub)`; fails unless `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, ExactError> {
        self.check(sub)?;
        if !self.contains_subspace(sub) {
            return Err(ExactError::Shape("quotient by a non-subspace".into()));
        }
        Ok(self.dim() - sub.dim())
    }

    /// Vectors of `self` completing a basis of `sub` to one of `self`.
    /// Only requires `sub` to live in the same ambient space; the result
    /// spans a complement of `self ∩ sub` inside `self`.
    pub fn complement_basis(&self, sub: &Subspace) -> Vec<SparseVec> {
        let mut ech = super::matrix::Echelon::default();
        for v in &sub.basis {
            ech.insert(v.clone());
        }
        self.basis.iter().filter(|v| ech.insert((*v).clone())).cloned().collect()
    }

    /// Coordinate complement: unit vectors at the non-pivot columns.
    pub fn standard_complement(&self) -> Vec<SparseVec> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).map(vector::unit).collect()
    }

    pub fn conj(&self) -> Subspace {
        Subspace::span(self.ambient, self.basis.iter().map(vector::conj).collect())
    }

    /// Places `self` at offset `offset` inside a larger space of dimension `ambient`.
    pub fn embed(&self, offset: usize, ambient: usize) -> Subspace {
        assert!(offset + self.ambient <= ambient);
        Subspace {
            ambient,
            basis: self.basis.iter().map(|v| vector::shift(v, offset)).collect(),
            pivots: self.pivots.iter().map(|p| p + offset).collect(),
        }
    }

    /// Elements of `self` supported in the index suffix `[from, ambient)`.
    ///
    /// Exact because echelon rows with a pivot at or beyond `from` have no
    /// entries before it and rows with an earlier pivot cannot combine to
    /// cancel that pivot.
    pub fn suffix_part(&self, from: usize) -> Subspace {
        let k = self.pivots.partition_point(|&p| p < from);
        Subspace { ambient: self.ambient, basis: self.basis[k..].to_vec(), pivots: self.pivots[k..].to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> SparseVec {
        vector::from_dense(&xs.iter().map(|&x| Scalar::int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, vec![v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]);
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_of_planes() {
        let xy = Subspace::coordinate(3, [0, 1]);
        let yz = Subspace::coordinate(3, [1, 2]);
        assert_eq!(xy.intersect(&yz).unwrap(), Subspace::coordinate(3, [1]));
        assert_eq!(xy.sum(&yz).unwrap(), Subspace::full(3));
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert_eq!(a.sum(&b), Err(ExactError::AmbientMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn preimage_of_line() {
        // m = [[1,0],[0,0]] ; preimage of span(e0) is everything, of 0 is span(e1)
        let m = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        assert_eq!(Subspace::coordinate(2, [0]).preimage(&m).unwrap(), Subspace::full(2));
        assert_eq!(Subspace::zero(2).preimage(&m).unwrap(), Subspace::coordinate(2, [1]));
    }

    #[test]
    fn suffix_part_matches_intersection() {
        let w = Subspace::span(4, vec![v(&[1, 0, 1, 0]), v(&[0, 0, 1, 1]), v(&[0, 1, 0, 2])]);
        for from in 0..=4 {
            let tail = Subspace::coordinate(4, from..4);
            assert_eq!(w.suffix_part(from), w.intersect(&tail).unwrap());
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let w = Subspace::span(3, vec![v(&[1, 2, 0]), v(&[0, 1, 1])]);
        let x = v(&[2, 3, -1]);
        let c = w.coordinates(&x).unwrap();
        let mut back = Vec::new();
        for (k, s) in c.iter().enumerate() {
            back = vector::axpy(&back, s, &w.basis()[k]);
        }
        assert_eq!(back, x);
        assert!(w.coordinates(&v(&[0, 0, 1])).is_none());
    }
}
