use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{Bidegree, DoubleComplex};
use crate::exact::{image, kernel, Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Dolbeault,
    Del,
    BottChern,
    Aeppli,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [Flavor::Dolbeault, Flavor::Del, Flavor::BottChern, Flavor::Aeppli];

    pub fn label(self) -> &'static str {
        match self {
            Flavor::Dolbeault => "dolbeault",
            Flavor::Del => "del",
            Flavor::BottChern => "bott_chern",
            Flavor::Aeppli => "aeppli",
        }
    }

    pub fn from_label(s: &str) -> Option<Flavor> {
        Flavor::ALL.into_iter().find(|f| f.label() == s)
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Per-bidegree dimensions of one cohomology flavor. Entries exist exactly for
/// the nonzero spaces of the complex; a listed entry may be 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub flavor: Flavor,
    pub dims: BTreeMap<Bidegree, usize>,
}

impl CohomologyTable {
    pub fn get(&self, at: Bidegree) -> usize {
        self.dims.get(&at).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=k} h^{p,q}`
    pub fn degree_sum(&self, k: i64) -> usize {
        self.dims.iter().filter(|((p, q), _)| p + q == k).map(|(_, d)| d).sum()
    }

    /// Nonzero entries only; convenient for comparisons across complexes.
    pub fn nonzero(&self) -> BTreeMap<Bidegree, usize> {
        self.dims.iter().filter(|(_, &d)| d > 0).map(|(b, d)| (*b, *d)).collect()
    }
}

/// Cohomology of `(Tot, d)`.
#[derive(Clone, Debug)]
pub struct TotalCohomology {
    pub dims: BTreeMap<i64, usize>,
    pub cocycles: BTreeMap<i64, Subspace>,
    pub coboundaries: BTreeMap<i64, Subspace>,
}

impl TotalCohomology {
    pub fn get(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }
}

fn rank(m: &Matrix) -> usize {
    if m.is_zero() {
        0
    } else {
        m.rank()
    }
}

impl DoubleComplex {
    fn table(&self, flavor: Flavor, f: impl Fn(Bidegree, usize) -> usize + Sync) -> CohomologyTable {
        let entries: Vec<(Bidegree, usize)> = self.dims.par_iter().map(|(&b, &d)| (b, f(b, d))).collect();
        CohomologyTable { flavor, dims: entries.into_iter().collect() }
    }

    /// `ker ∂̄ / im ∂̄`
    pub fn dolbeault(&self) -> CohomologyTable {
        self.table(Flavor::Dolbeault, |(p, q), d| d - rank(&self.delbar((p, q))) - rank(&self.delbar((p, q - 1))))
    }

    /// `ker ∂ / im ∂`
    pub fn del_cohomology(&self) -> CohomologyTable {
        self.table(Flavor::Del, |(p, q), d| d - rank(&self.del((p, q))) - rank(&self.del((p - 1, q))))
    }

    /// `(ker ∂ ∩ ker ∂̄) / im ∂∂̄`
    pub fn bott_chern(&self) -> CohomologyTable {
        self.table(Flavor::BottChern, |(p, q), d| {
            let both = Matrix::vstack(&[&self.del((p, q)), &self.delbar((p, q))]).unwrap();
            d - rank(&both) - rank(&self.ddbar((p - 1, q - 1)))
        })
    }

    /// `ker ∂∂̄ / (im ∂ + im ∂̄)`
    pub fn aeppli(&self) -> CohomologyTable {
        self.table(Flavor::Aeppli, |(p, q), d| {
            let incoming = Matrix::hstack(&[&self.del((p - 1, q)), &self.delbar((p, q - 1))]).unwrap();
            d - rank(&self.ddbar((p, q))) - rank(&incoming)
        })
    }

    pub fn cohomology(&self, flavor: Flavor) -> CohomologyTable {
        match flavor {
            Flavor::Dolbeault => self.dolbeault(),
            Flavor::Del => self.del_cohomology(),
            Flavor::BottChern => self.bott_chern(),
            Flavor::Aeppli => self.aeppli(),
        }
    }

    /// `ker ∂ ∩ ker ∂̄` inside `A^{p,q}`.
    pub fn bott_chern_cycles(&self, (p, q): Bidegree) -> Subspace {
        kernel(&Matrix::vstack(&[&self.del((p, q)), &self.delbar((p, q))]).unwrap())
    }

    /// Cohomology of the total complex, keeping cocycle and coboundary spaces.
    pub fn de_rham(&self) -> TotalCohomology {
        let Some(lo) = self.total_degrees().first().copied() else {
            return TotalCohomology { dims: BTreeMap::new(), cocycles: BTreeMap::new(), coboundaries: BTreeMap::new() };
        };
        let hi = *self.total_degrees().last().unwrap();
        let per: Vec<(i64, Subspace, Subspace)> = (lo..=hi)
            .into_par_iter()
            .map(|k| (k, kernel(&self.total_differential(k)), image(&self.total_differential(k - 1))))
            .collect();
        let mut out = TotalCohomology { dims: BTreeMap::new(), cocycles: BTreeMap::new(), coboundaries: BTreeMap::new() };
        for (k, z, b) in per {
            if z.ambient() == 0 {
                continue;
            }
            out.dims.insert(k, z.dim() - b.dim());
            out.cocycles.insert(k, z);
            out.coboundaries.insert(k, b);
        }
        out
    }

    /// `Σ (−1)^{p+q} dim A^{p,q}`
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|((p, q), d)| if (p + q).rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) }).sum()
    }
}
