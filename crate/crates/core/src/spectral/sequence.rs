use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bicomplex::{Bidegree, DoubleComplex, TotalLayout};
use crate::error::{Error, Result};
use crate::exact::{image, kernel, Matrix, Subspace};

/// Column filtration `F^p = ⊕_{i ≥ p} A^{i,·}` or row filtration
/// `F̄^q = ⊕_{j ≥ q} A^{·,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filtration {
    Column,
    Row,
}

impl Filtration {
    pub fn label(self) -> &'static str {
        match self {
            Filtration::Column => "F",
            Filtration::Row => "Fbar",
        }
    }
}

/// One page `E_r` with the ranks of `d_r` keyed by source bidegree.
/// For the row filtration `d_r` goes from `(p,q)` to `(p−r+1, q+r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: usize,
    pub filtration: Filtration,
    pub dims: BTreeMap<Bidegree, usize>,
    pub dr_ranks: BTreeMap<Bidegree, usize>,
}

impl SpectralPage {
    pub fn get(&self, at: Bidegree) -> usize {
        self.dims.get(&at).copied().unwrap_or(0)
    }

    pub fn rank(&self, at: Bidegree) -> usize {
        self.dr_ranks.get(&at).copied().unwrap_or(0)
    }

    pub fn degree_sum(&self, k: i64) -> usize {
        self.dims.iter().filter(|((p, q), _)| p + q == k).map(|(_, d)| d).sum()
    }

    /// Target bidegree of `d_r` out of `at`.
    pub fn target(&self, (p, q): Bidegree) -> Bidegree {
        let r = self.r as i64;
        match self.filtration {
            Filtration::Column => (p + r, q - r + 1),
            Filtration::Row => (p - r + 1, q + r),
        }
    }
}

/// Pages `E_1 … E_s` where `s` is the degeneration page, plus `E_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralSequence {
    pub filtration: Filtration,
    pub pages: Vec<SpectralPage>,
    pub e_infinity: BTreeMap<Bidegree, usize>,
    /// Smallest `r ≥ 1` with `E_r = E_∞`.
    pub degeneration_page: usize,
}

impl SpectralSequence {
    pub fn page(&self, r: usize) -> Option<&SpectralPage> {
        self.pages.get(r.checked_sub(1)?)
    }

    pub fn e_infinity_sum(&self, k: i64) -> usize {
        self.e_infinity.iter().filter(|((p, q), _)| p + q == k).map(|(_, d)| d).sum()
    }

    /// Swaps every bidegree, turning a column sequence of the transposed
    /// complex into the row sequence of the original.
    pub(crate) fn transposed(self, filtration: Filtration) -> SpectralSequence {
        let swap = |m: BTreeMap<Bidegree, usize>| m.into_iter().map(|((p, q), d)| ((q, p), d)).collect();
        SpectralSequence {
            filtration,
            pages: self
                .pages
                .into_iter()
                .map(|pg| SpectralPage { r: pg.r, filtration, dims: swap(pg.dims), dr_ranks: swap(pg.dr_ranks) })
                .collect(),
            e_infinity: swap(self.e_infinity),
            degeneration_page: self.degeneration_page,
        }
    }
}

/// Filtration pieces of one total degree for one page index.
struct DegreeData {
    layout: TotalLayout,
    d_out: Matrix,
    d_in: Matrix,
}

impl DegreeData {
    fn new(dc: &DoubleComplex, k: i64) -> Self {
        DegreeData { layout: dc.total_layout(k), d_out: dc.total_differential(k), d_in: dc.total_differential(k - 1) }
    }
}

/// `F^p Tot^k ∩ d⁻¹(F^{p+r} Tot^{k+1})`, or `F^p ∩ ker d` when `r` is `None`.
fn z_space(dc: &DoubleComplex, deg: &DegreeData, p: i64, r: Option<i64>) -> Subspace {
    let n = deg.layout.dim;
    let s = deg.layout.filtration_start(p);
    let next = dc.total_layout(deg.layout.k + 1);
    let t = match r {
        Some(r) => next.filtration_start(p + r),
        None => next.dim,
    };
    kernel(&deg.d_out.submatrix(0, t, s, n)).embed(s, n)
}

/// `F^p ∩ d(F^{p0} Tot^{k−1})`, or `F^p ∩ im d` when `p0` is `None`.
fn boundary_part(dc: &DoubleComplex, deg: &DegreeData, p: i64, p0: Option<i64>) -> Subspace {
    let prev = dc.total_layout(deg.layout.k - 1);
    let s = p0.map_or(0, |p0| prev.filtration_start(p0));
    image(&deg.d_in.submatrix(0, deg.layout.dim, s, prev.dim)).suffix_part(deg.layout.filtration_start(p))
}

struct Piece {
    z: Subspace,
    b: Subspace,
}

/// `Z_r^p` and `B_r^p` in `Tot^k`; `r = None` gives the `E_∞` terms.
fn piece(dc: &DoubleComplex, deg: &DegreeData, p: i64, r: Option<i64>) -> Piece {
    let z = z_space(dc, deg, p, r);
    let lower = z_space(dc, deg, p + 1, r.map(|r| r - 1));
    let bd = boundary_part(dc, deg, p, r.map(|r| p - r + 1));
    let b = lower.sum(&bd).expect("same ambient");
    debug_assert!(z.contains_subspace(&b));
    Piece { z, b }
}

/// The column-filtration spectral sequence of a single complex.
pub(crate) fn column_sequence(dc: &DoubleComplex) -> Result<SpectralSequence> {
    let filtration = Filtration::Column;
    let Some((pmin, pmax, _, _)) = dc.hull() else {
        return Ok(SpectralSequence { filtration, pages: vec![], e_infinity: BTreeMap::new(), degeneration_page: 1 });
    };
    let degrees: Vec<i64> = dc.total_degrees().into_iter().collect();
    let data: BTreeMap<i64, DegreeData> = degrees.par_iter().map(|&k| (k, DegreeData::new(dc, k))).collect();

    let pieces = |r: Option<i64>| -> BTreeMap<Bidegree, Piece> {
        degrees
            .par_iter()
            .flat_map_iter(|&k| {
                let deg = &data[&k];
                dc.antidiagonal(k).into_iter().map(move |(p, q)| ((p, q), piece(dc, deg, p, r)))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    };
    let dims_of = |ps: &BTreeMap<Bidegree, Piece>| -> BTreeMap<Bidegree, usize> {
        ps.iter().map(|(b, pc)| (*b, pc.z.dim() - pc.b.dim())).collect()
    };

    let e_infinity = dims_of(&pieces(None));
    let bound = (pmax - pmin + 1).max(1) as usize;
    let mut pages: Vec<SpectralPage> = Vec::new();
    for r in 1..=bound {
        let ps = pieces(Some(r as i64));
        let dims = dims_of(&ps);
        if let Some(prev) = pages.last() {
            for (&(p, q), &d) in &dims {
                let expect = prev.get((p, q)) as i64
                    - prev.rank((p, q)) as i64
                    - prev.rank((p - prev.r as i64, q + prev.r as i64 - 1)) as i64;
                if expect != d as i64 {
                    return Err(Error::internal(format!(
                        "E_{r} at ({p},{q}) has dimension {d} but the previous page predicts {expect}"
                    )));
                }
            }
        }
        let done = dims == e_infinity;
        let mut dr_ranks = BTreeMap::new();
        if !done {
            for (&(p, q), pc) in &ps {
                let target = (p + r as i64, q - r as i64 + 1);
                let Some(tp) = ps.get(&target) else { continue };
                let d = &data[&(p + q)].d_out;
                let dz = pc.z.image_under(d).expect("shapes match");
                let rk = dz.sum(&tp.b).expect("same ambient").dim() - tp.b.dim();
                if rk > 0 {
                    dr_ranks.insert((p, q), rk);
                }
            }
        }
        pages.push(SpectralPage { r, filtration, dims, dr_ranks });
        if done {
            return Ok(SpectralSequence { filtration, pages, e_infinity, degeneration_page: r });
        }
    }
    Err(Error::internal(format!("E_{bound} differs from E_infinity although the filtration has length {bound}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::catalog;

    #[test]
    fn dot_degenerates_immediately() {
        let s = column_sequence(&catalog::dot((0, 0))).unwrap();
        assert_eq!(s.degeneration_page, 1);
        assert_eq!(s.pages.len(), 1);
        assert_eq!(s.pages[0].get((0, 0)), 1);
    }

    #[test]
    fn del_line_needs_second_page() {
        let s = column_sequence(&catalog::del_line((0, 0))).unwrap();
        assert_eq!(s.degeneration_page, 2);
        assert_eq!(s.pages[0].dims, [((0, 0), 1), ((1, 0), 1)].into_iter().collect());
        assert_eq!(s.pages[0].rank((0, 0)), 1);
        assert_eq!(s.pages[1].dims.values().sum::<usize>(), 0);
    }

    #[test]
    fn delbar_line_dies_on_first_page() {
        let s = column_sequence(&catalog::delbar_line((0, 0))).unwrap();
        assert_eq!(s.degeneration_page, 1);
        assert_eq!(s.pages[0].dims.values().sum::<usize>(), 0);
    }
}
