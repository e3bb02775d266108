//! Bounded double complexes with anticommuting differentials.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact::Matrix;

pub mod catalog;
mod cohomology;
pub mod io;
mod ops;
mod real;
mod simple;

pub use cohomology::{CohomologyTable, Flavor, TotalCohomology};
pub use real::RealStructure;
pub use simple::SimpleComplex;

/// `(p, q)`
pub type Bidegree = (i64, i64);

/// The composition identity violated by a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    DelSquared,
    DelbarSquared,
    Anticommute,
}

impl Identity {
    pub fn label(self) -> &'static str {
        match self {
            Identity::DelSquared => "del^2",
            Identity::DelbarSquared => "delbar^2",
            Identity::Anticommute => "del delbar + delbar del",
        }
    }
}

/// First bidegree at which a composition identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub identity: Identity,
    pub at: Bidegree,
}

impl std::fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = 0 at ({},{})", self.identity.label(), self.at.0, self.at.1)
    }
}

/// Which of the two differentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arrow {
    Del,
    Delbar,
}

impl Arrow {
    pub fn step(self) -> Bidegree {
        match self {
            Arrow::Del => (1, 0),
            Arrow::Delbar => (0, 1),
        }
    }
}

/// Finitely supported bigraded space with `∂` of bidegree (1,0) and `∂̄` of
/// bidegree (0,1). Maps are keyed by their source bidegree; only nonzero maps
/// are stored and only nonzero spaces are listed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DoubleComplex {
    dims: BTreeMap<Bidegree, usize>,
    del: BTreeMap<Bidegree, Matrix>,
    delbar: BTreeMap<Bidegree, Matrix>,
}

impl DoubleComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_spaces(spaces: impl IntoIterator<Item = (Bidegree, usize)>) -> Self {
        let mut dc = Self::new();
        for (b, d) in spaces {
            dc.set_space(b, d);
        }
        dc
    }

    /// Declares `A^{p,q}` with the given dimension, dropping any maps touching it.
    pub fn set_space(&mut self, at: Bidegree, dim: usize) {
        let (p, q) = at;
        for src in [at, (p - 1, q)] {
            self.del.remove(&src);
        }
        for src in [at, (p, q - 1)] {
            self.delbar.remove(&src);
        }
        if dim == 0 {
            self.dims.remove(&at);
        } else {
            self.dims.insert(at, dim);
        }
    }

    fn check_shape(&self, arrow: Arrow, src: Bidegree, m: &Matrix) -> Result<()> {
        let (dp, dq) = arrow.step();
        let tgt = (src.0 + dp, src.1 + dq);
        let want = (self.dim(tgt), self.dim(src));
        if m.shape() != want {
            return Err(Error::Structure {
                p: src.0,
                q: src.1,
                msg: format!(
                    "{} matrix is {}x{}, expected {}x{}",
                    arrow_name(arrow),
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                ),
            });
        }
        Ok(())
    }

    pub fn set_map(&mut self, arrow: Arrow, src: Bidegree, m: Matrix) -> Result<()> {
        self.check_shape(arrow, src, &m)?;
        let slot = match arrow {
            Arrow::Del => &mut self.del,
            Arrow::Delbar => &mut self.delbar,
        };
        if m.is_zero() {
            slot.remove(&src);
        } else {
            slot.insert(src, m);
        }
        Ok(())
    }

    pub fn set_del(&mut self, src: Bidegree, m: Matrix) -> Result<()> {
        self.set_map(Arrow::Del, src, m)
    }

    pub fn set_delbar(&mut self, src: Bidegree, m: Matrix) -> Result<()> {
        self.set_map(Arrow::Delbar, src, m)
    }

    pub fn dim(&self, at: Bidegree) -> usize {
        self.dims.get(&at).copied().unwrap_or(0)
    }

    /// Nonzero spaces in `(p, q)` order.
    pub fn spaces(&self) -> &BTreeMap<Bidegree, usize> {
        &self.dims
    }

    pub fn support(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.dims.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn map(&self, arrow: Arrow, src: Bidegree) -> Matrix {
        let stored = match arrow {
            Arrow::Del => self.del.get(&src),
            Arrow::Delbar => self.delbar.get(&src),
        };
        match stored {
            Some(m) => m.clone(),
            None => {
                let (dp, dq) = arrow.step();
                Matrix::zeros(self.dim((src.0 + dp, src.1 + dq)), self.dim(src))
            }
        }
    }

    pub fn del(&self, src: Bidegree) -> Matrix {
        self.map(Arrow::Del, src)
    }

    pub fn delbar(&self, src: Bidegree) -> Matrix {
        self.map(Arrow::Delbar, src)
    }

    /// Stored nonzero maps of one kind.
    pub fn maps(&self, arrow: Arrow) -> &BTreeMap<Bidegree, Matrix> {
        match arrow {
            Arrow::Del => &self.del,
            Arrow::Delbar => &self.delbar,
        }
    }

    /// `∂∂̄ : A^{p,q} → A^{p+1,q+1}`.
    pub fn ddbar(&self, (p, q): Bidegree) -> Matrix {
        self.del((p, q + 1)).mul(&self.delbar((p, q))).expect("shapes are checked on insertion")
    }

    /// Bidegrees `(p,q)` with `p + q = k`, in increasing `p`.
    pub fn antidiagonal(&self, k: i64) -> Vec<Bidegree> {
        self.dims.keys().filter(|(p, q)| p + q == k).copied().collect()
    }

    /// Total degrees that carry a nonzero space.
    pub fn total_degrees(&self) -> BTreeSet<i64> {
        self.dims.keys().map(|(p, q)| p + q).collect()
    }

    /// `(pmin, pmax, qmin, qmax)` of the support, `None` for the zero complex.
    pub fn hull(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.dims.keys();
        let &(p0, q0) = it.next()?;
        Some(self.dims.keys().fold((p0, p0, q0, q0), |(a, b, c, d), &(p, q)| (a.min(p), b.max(p), c.min(q), d.max(q))))
    }

    /// Checks `∂² = 0`, `∂̄² = 0` and `∂∂̄ + ∂̄∂ = 0`, reporting the first failure
    /// in bidegree order.
    pub fn validate(&self) -> std::result::Result<(), AxiomFailure> {
        for &(p, q) in self.dims.keys() {
            if !self.del((p + 1, q)).mul(&self.del((p, q))).unwrap().is_zero() {
                return Err(AxiomFailure { identity: Identity::DelSquared, at: (p, q) });
            }
            if !self.delbar((p, q + 1)).mul(&self.delbar((p, q))).unwrap().is_zero() {
                return Err(AxiomFailure { identity: Identity::DelbarSquared, at: (p, q) });
            }
            let a = self.ddbar((p, q));
            let b = self.delbar((p + 1, q)).mul(&self.del((p, q))).unwrap();
            if !a.add(&b).unwrap().is_zero() {
                return Err(AxiomFailure { identity: Identity::Anticommute, at: (p, q) });
            }
        }
        Ok(())
    }

    /// Same as [`DoubleComplex::validate`] but as a crate error.
    pub fn ensure_valid(&self) -> Result<()> {
        self.validate().map_err(|f| Error::Invalid(format!("{} != 0 at ({},{})", f.identity.label(), f.at.0, f.at.1)))
    }

    /// Swaps `(p,q)` and the roles of `∂`, `∂̄`.
    pub fn transpose(&self) -> DoubleComplex {
        let swap = |(p, q): &Bidegree| (*q, *p);
        DoubleComplex {
            dims: self.dims.iter().map(|(b, d)| (swap(b), *d)).collect(),
            del: self.delbar.iter().map(|(b, m)| (swap(b), m.clone())).collect(),
            delbar: self.del.iter().map(|(b, m)| (swap(b), m.clone())).collect(),
        }
    }

    /// Shifts every bidegree by `(dp, dq)`.
    pub fn shift(&self, dp: i64, dq: i64) -> DoubleComplex {
        let mv = |(p, q): &Bidegree| (p + dp, q + dq);
        DoubleComplex {
            dims: self.dims.iter().map(|(b, d)| (mv(b), *d)).collect(),
            del: self.del.iter().map(|(b, m)| (mv(b), m.clone())).collect(),
            delbar: self.delbar.iter().map(|(b, m)| (mv(b), m.clone())).collect(),
        }
    }

    /// Layout of `Tot^k`: blocks `(p, offset, dim)` in increasing `p`, so that
    /// every `F^p Tot^k` is a coordinate suffix.
    pub fn total_layout(&self, k: i64) -> TotalLayout {
        let mut blocks = Vec::new();
        let mut off = 0;
        for (p, q) in self.antidiagonal(k) {
            let d = self.dim((p, q));
            blocks.push(TotalBlock { p, q, offset: off, dim: d });
            off += d;
        }
        TotalLayout { k, blocks, dim: off }
    }

    /// `d = ∂ + ∂̄ : Tot^k → Tot^{k+1}`.
    pub fn total_differential(&self, k: i64) -> Matrix {
        let src = self.total_layout(k);
        let tgt = self.total_layout(k + 1);
        let mut d = Matrix::zeros(tgt.dim, src.dim);
        for b in &src.blocks {
            if let Some(m) = self.del.get(&(b.p, b.q)) {
                let t = tgt.block(b.p + 1).expect("target of a nonzero map is a nonzero space");
                d.put_block(t.offset, b.offset, m);
            }
            if let Some(m) = self.delbar.get(&(b.p, b.q)) {
                let t = tgt.block(b.p).expect("target of a nonzero map is a nonzero space");
                d.put_block(t.offset, b.offset, m);
            }
        }
        d
    }
}

fn arrow_name(a: Arrow) -> &'static str {
    match a {
        Arrow::Del => "del",
        Arrow::Delbar => "delbar",
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TotalBlock {
    pub p: i64,
    pub q: i64,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalLayout {
    pub k: i64,
    pub blocks: Vec<TotalBlock>,
    pub dim: usize,
}

impl TotalLayout {
    pub fn block(&self, p: i64) -> Option<&TotalBlock> {
        self.blocks.iter().find(|b| b.p == p)
    }

    /// First coordinate of `F^p Tot^k`.
    pub fn filtration_start(&self, p: i64) -> usize {
        self.blocks.iter().find(|b| b.p >= p).map_or(self.dim, |b| b.offset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;

    #[test]
    fn zero_complex_is_valid() {
        assert!(DoubleComplex::new().validate().is_ok());
    }

    #[test]
    fn square_signs() {
        assert!(catalog::square((0, 0)).validate().is_ok());
        let mut bad = catalog::square((0, 0));
        // flip ∂̄ out of (1,0) so that ∂̄∂ = +∂∂̄
        let m = bad.delbar((1, 0)).neg();
        bad.set_delbar((1, 0), m).unwrap();
        assert_eq!(bad.validate(), Err(AxiomFailure { identity: Identity::Anticommute, at: (0, 0) }));
    }

    #[test]
    fn shape_mismatch_is_structural() {
        let mut dc = DoubleComplex::with_spaces([((0, 0), 1), ((1, 0), 2)]);
        let err = dc.set_del((0, 0), Matrix::from_ints(&[&[1]])).unwrap_err();
        assert!(matches!(err, Error::Structure { p: 0, q: 0, .. }));
    }

    #[test]
    fn total_differential_of_wedge() {
        let w = catalog::wedge((0, 0));
        let d0 = w.total_differential(0);
        assert_eq!(d0.shape(), (2, 1));
        assert_eq!(d0.get(0, 0), Scalar::ONE);
        assert_eq!(d0.get(1, 0), Scalar::ONE);
        assert_eq!(w.total_layout(1).filtration_start(1), 1);
    }
}
