use std::collections::BTreeMap;

use super::{Bidegree, DoubleComplex, SimpleComplex};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar, SparseVec};

/// Antilinear involution `σ : A^{p,q} → A^{q,p}`, `σ(x) = S_{p,q} · x̄`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RealStructure {
    pub sigma: BTreeMap<Bidegree, Matrix>,
}

impl RealStructure {
    pub fn new(sigma: BTreeMap<Bidegree, Matrix>) -> Self {
        RealStructure { sigma }
    }

    /// Coordinatewise conjugation on a complex symmetric under `(p,q) ↔ (q,p)`.
    pub fn identity_on(dc: &DoubleComplex) -> Self {
        RealStructure { sigma: dc.spaces().iter().map(|(b, d)| (*b, Matrix::identity(*d))).collect() }
    }

    pub fn matrix(&self, at: Bidegree) -> Option<&Matrix> {
        self.sigma.get(&at)
    }

    pub fn apply(&self, at: Bidegree, x: &SparseVec) -> Option<SparseVec> {
        let conj: SparseVec = x.iter().map(|(i, v)| (*i, v.conj())).collect();
        self.sigma.get(&at).map(|s| s.apply(&conj))
    }

    /// Blockwise sum matching [`DoubleComplex::direct_sum`].
    pub fn direct_sum(&self, a: &DoubleComplex, other: &RealStructure, b: &DoubleComplex) -> RealStructure {
        let mut sigma = BTreeMap::new();
        for at in a.support().chain(b.support()) {
            let (p, q) = at;
            let pick = |rs: &RealStructure, dc: &DoubleComplex| {
                rs.sigma.get(&at).cloned().unwrap_or_else(|| Matrix::zeros(dc.dim((q, p)), dc.dim(at)))
            };
            sigma.insert(at, Matrix::block_diag(&[&pick(self, a), &pick(other, b)]));
        }
        RealStructure { sigma }
    }

    /// On `A ⊗ conj(A)`: `x ⊗ ȳ ↦ (−1)^{pq} y ⊗ x̄` for `x ∈ A^p`, `y ∈ A^q`,
    /// with the basis layout of [`DoubleComplex::tensor_product`].
    pub fn swap_factors(a: &SimpleComplex) -> RealStructure {
        let mut sigma = BTreeMap::new();
        for (&p, &dp) in a.dims() {
            for (&q, &dq) in a.dims() {
                let sign = if (p * q).rem_euclid(2) == 0 { Scalar::ONE } else { Scalar::int(-1) };
                let trip = (0..dp).flat_map(|i| (0..dq).map(move |j| (j * dp + i, i * dq + j)));
                let trip: Vec<_> = trip.map(|(r, c)| (r, c, sign.clone())).collect();
                sigma.insert((p, q), Matrix::from_triplets(dq * dp, dp * dq, trip));
            }
        }
        RealStructure { sigma }
    }

    /// Whether `σ` is an involution intertwining `∂` and `∂̄`:
    /// `S_{q,p} · conj(S_{p,q}) = 1` and `S_{p+1,q} · conj(∂) = ∂̄ · S_{p,q}`.
    /// Matrices whose shapes disagree with the complex are an error; a
    /// complex that is not symmetric under `(p,q) ↔ (q,p)` admits no real
    /// structure and yields `false`.
    pub fn check(&self, dc: &DoubleComplex) -> Result<bool> {
        for (&(p, q), &d) in dc.spaces() {
            if dc.dim((q, p)) != d {
                return Ok(false);
            }
        }
        for (&(p, q), s) in &self.sigma {
            let want = (dc.dim((q, p)), dc.dim((p, q)));
            if s.shape() != want {
                return Err(Error::Structure {
                    p,
                    q,
                    msg: format!("sigma matrix is {:?}, expected {:?}", s.shape(), want),
                });
            }
        }
        for (&(p, q), &d) in dc.spaces() {
            let (Some(s), Some(back)) = (self.sigma.get(&(p, q)), self.sigma.get(&(q, p))) else {
                return Ok(false);
            };
            if back.mul(&s.conj())? != Matrix::identity(d) {
                return Ok(false);
            }
            let zero_at = |b: Bidegree| Matrix::zeros(dc.dim((b.1, b.0)), dc.dim(b));
            let s_up = self.sigma.get(&(p + 1, q)).cloned().unwrap_or_else(|| zero_at((p + 1, q)));
            let lhs = s_up.mul(&dc.del((p, q)).conj())?;
            let rhs = dc.delbar((q, p)).mul(s)?;
            if lhs != rhs {
                return Ok(false);
            }
            let s_right = self.sigma.get(&(p, q + 1)).cloned().unwrap_or_else(|| zero_at((p, q + 1)));
            let lhs = s_right.mul(&dc.delbar((p, q)).conj())?;
            let rhs = dc.del((q, p)).mul(s)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::super::catalog;
    use super::*;

    #[test]
    fn dot_on_diagonal() {
        let d = catalog::dot((1, 1));
        assert!(RealStructure::identity_on(&d).check(&d).unwrap());
    }

    #[test]
    fn off_diagonal_dot_has_none() {
        let d = catalog::dot((1, 0));
        let cand = RealStructure::new([((1, 0), Matrix::identity(1))].into_iter().collect());
        assert!(!cand.check(&d).unwrap());
        assert!(!RealStructure::default().check(&d).unwrap());
    }

    #[test]
    fn square_with_swap() {
        // σ swaps ∂a and ∂̄a; on the top corner it acts by −1 because ∂̄∂a = −∂∂̄a
        let s = catalog::square((0, 0));
        let one = Matrix::identity(1);
        let rs = RealStructure::new(
            [((0, 0), one.clone()), ((1, 0), one.clone()), ((0, 1), one.clone()), ((1, 1), one.scale(&Scalar::int(-1)))]
                .into_iter()
                .collect(),
        );
        assert!(rs.check(&s).unwrap());
        assert!(!RealStructure::identity_on(&s).check(&s).unwrap());
    }

    #[test]
    fn bad_shape_is_error() {
        let d = catalog::dot((0, 0));
        let rs = RealStructure::new([((0, 0), Matrix::identity(2))].into_iter().collect());
        assert!(rs.check(&d).is_err());
    }
}
