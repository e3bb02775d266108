//! Lie algebras, Chevalley–Eilenberg complexes, invariant bicomplexes,
//! relative cohomology and the semisimple `E_2` model.

use std::collections::BTreeMap;

use crate::bicomplex::{Bidegree, DoubleComplex, RealStructure, SimpleComplex};
use crate::error::{Error, Result};
use crate::exact::{kernel, vector, Matrix, SparseVec, Subspace};
use crate::spectral::asymmetric_bidegrees;

mod algebra;
pub mod catalog;
pub mod exterior;

pub use algebra::{JacobiFailure, LieAlgebra, Subalgebra};
use exterior::Exterior;

/// `d x^k = −Σ_{i<j} c_{ij}^k x^i ∧ x^j` on generators, indexed by the
/// degree-two monomials of `ext`.
pub fn ce_generator_images(g: &LieAlgebra, ext: &Exterior) -> Vec<SparseVec> {
    let mut images = vec![SparseVec::new(); g.dim()];
    for (i, j, k, c) in g.structure_constants() {
        let at = ext.index(1 << i | 1 << j);
        images[k] = vector::axpy(&images[k], &-c.clone(), &vector::unit(at));
    }
    images
}

/// Chevalley–Eilenberg complex `(Λ g*, d)` in degrees `0..=n`.
pub fn ce_complex(g: &LieAlgebra) -> Result<SimpleComplex> {
    let ext = Exterior::new(g.dim());
    let images = ce_generator_images(g, &ext);
    let n = g.dim();
    let mut c = SimpleComplex::new((0..=n).map(|k| (k as i64, ext.dim(k))));
    for k in 0..n {
        c.set_d(k as i64, ext.derivation(&images, k))?;
    }
    if let Err(k) = c.check_square_zero() {
        return Err(Error::invalid(format!("d² ≠ 0 on CE degree {k}: the Jacobi identity fails")));
    }
    Ok(c)
}

/// `Λ g* ⊗ conj(Λ g*)` with the factor swap as real structure.
pub fn invariant_bicomplex(g: &LieAlgebra) -> Result<(DoubleComplex, RealStructure)> {
    let a = ce_complex(g)?;
    let dc = DoubleComplex::tensor_product(&a, &a.conj());
    Ok((dc, RealStructure::swap_factors(&a)))
}

/// Cohomology of the `k`-basic forms `{ω : ι_X ω = 0, L_X ω = 0 for X ∈ k}`.
pub fn relative_ce_cohomology(g: &LieAlgebra, k: &Subalgebra) -> Result<BTreeMap<i64, usize>> {
    let n = g.dim();
    if k.span.ambient() != n {
        return Err(Error::invalid("subalgebra lives in a space of the wrong dimension"));
    }
    let ce = ce_complex(g)?;
    let ext = Exterior::new(n);
    let d = |j: usize| ce.d(j as i64);
    let basic: Vec<Subspace> = (0..=n)
        .map(|j| {
            let mut blocks = Vec::new();
            for v in k.span.basis() {
                if j > 0 {
                    blocks.push(ext.interior(v, j));
                }
                let mut lie = ext.interior(v, j + 1).mul(&d(j)).expect("shapes");
                if j > 0 {
                    lie = lie.add(&d(j - 1).mul(&ext.interior(v, j)).expect("shapes")).expect("shapes");
                }
                blocks.push(lie);
            }
            if blocks.is_empty() {
                Subspace::full(ext.dim(j))
            } else {
                kernel(&Matrix::vstack(&blocks.iter().collect::<Vec<_>>()).expect("equal widths"))
            }
        })
        .collect();
    let mut ranks = vec![0usize; n + 1];
    for j in 0..n {
        let images = Subspace::span(ext.dim(j + 1), basic[j].basis().iter().map(|v| d(j).apply(v)).collect());
        if !basic[j + 1].contains_subspace(&images) {
            return Err(Error::internal(format!("d does not preserve basic forms in degree {j}")));
        }
        ranks[j] = images.dim();
    }
    Ok((0..=n).map(|j| (j as i64, basic[j].dim() - ranks[j] - if j > 0 { ranks[j - 1] } else { 0 })).collect())
}

/// `E_2^{p,q} = H^p(g) ⊗ H^q(Γ)` from CE cohomology and a Betti vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Model {
    pub dims: BTreeMap<Bidegree, usize>,
    /// Bidegrees `(p,q)`, `p < q`, with `E_2^{p,q} ≠ E_2^{q,p}`.
    pub asymmetric: Vec<Bidegree>,
    pub degeneration_page: usize,
}

impl E2Model {
    pub fn symmetric(&self) -> bool {
        self.asymmetric.is_empty()
    }

    /// Degeneration at page 2 is given; purity then fails exactly when the
    /// table is not symmetric.
    pub fn page1(&self) -> bool {
        self.symmetric()
    }

    pub fn get(&self, at: Bidegree) -> usize {
        self.dims.get(&at).copied().unwrap_or(0)
    }
}

fn check_betti(betti: &[usize]) -> Result<()> {
    if betti.first() != Some(&1) {
        return Err(Error::invalid("a Betti vector must start with b_0 = 1"));
    }
    Ok(())
}

pub fn semisimple_e2_model(g: &LieAlgebra, betti: &[usize]) -> Result<E2Model> {
    check_betti(betti)?;
    let h = ce_complex(g)?.cohomology();
    let mut dims = BTreeMap::new();
    for (&p, &hp) in &h {
        for (q, &b) in betti.iter().enumerate() {
            dims.insert((p, q as i64), hp * b);
        }
    }
    let asymmetric = asymmetric_bidegrees(&dims);
    Ok(E2Model { dims, asymmetric, degeneration_page: 2 })
}

/// Whether `H^j(g; k) = b_j` in every degree.
pub fn relative_matches_betti(g: &LieAlgebra, k: &Subalgebra, betti: &[usize]) -> Result<bool> {
    check_betti(betti)?;
    if !g.is_semisimple() {
        return Err(Error::invalid("the Lie algebra is not semisimple"));
    }
    let rel = relative_ce_cohomology(g, k)?;
    let top = rel.len().max(betti.len());
    Ok((0..top).all(|j| rel.get(&(j as i64)).copied().unwrap_or(0) == betti.get(j).copied().unwrap_or(0)))
}
