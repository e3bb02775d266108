use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::Matrix;

/// Cochain complex `d : C^k → C^{k+1}` with finite support.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleComplex {
    dims: BTreeMap<i64, usize>,
    d: BTreeMap<i64, Matrix>,
}

impl SimpleComplex {
    pub fn new(dims: impl IntoIterator<Item = (i64, usize)>) -> Self {
        SimpleComplex { dims: dims.into_iter().filter(|(_, d)| *d > 0).collect(), d: BTreeMap::new() }
    }

    /// One-dimensional complex concentrated in degree `k`.
    pub fn point(k: i64) -> Self {
        SimpleComplex::new([(k, 1)])
    }

    pub fn set_d(&mut self, k: i64, m: Matrix) -> Result<()> {
        let want = (self.dim(k + 1), self.dim(k));
        if m.shape() != want {
            return Err(Error::Structure {
                p: k,
                q: 0,
                msg: format!("d matrix is {:?}, expected {:?}", m.shape(), want),
            });
        }
        if m.is_zero() {
            self.d.remove(&k);
        } else {
            self.d.insert(k, m);
        }
        Ok(())
    }

    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn d(&self, k: i64) -> Matrix {
        self.d.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(k + 1), self.dim(k)))
    }

    pub fn conj(&self) -> SimpleComplex {
        SimpleComplex { dims: self.dims.clone(), d: self.d.iter().map(|(k, m)| (*k, m.conj())).collect() }
    }

    /// First degree where `d² ≠ 0`, if any.
    pub fn check_square_zero(&self) -> std::result::Result<(), i64> {
        for &k in self.dims.keys() {
            if !self.d(k + 1).mul(&self.d(k)).unwrap().is_zero() {
                return Err(k);
            }
        }
        Ok(())
    }

    /// Betti numbers on the support.
    pub fn cohomology(&self) -> BTreeMap<i64, usize> {
        let rank = |k: i64| if self.d.contains_key(&k) { self.d(k).rank() } else { 0 };
        self.dims.iter().map(|(&k, &n)| (k, n - rank(k) - rank(k - 1))).collect()
    }

    pub fn cohomology_dim(&self, k: i64) -> usize {
        self.cohomology().get(&k).copied().unwrap_or(0)
    }
}
