use std::collections::BTreeMap;

use crate::bicomplex::{Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::exact::{image, kernel, Subspace};

/// Outcome of the purity test in one total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PurityReport {
    /// `Σ_{p+q=k} dim H^{p,q}`
    pub sum_of_pieces: usize,
    /// `dim H^k_dR`
    pub de_rham: usize,
    /// The pieces are independent in `H^k`.
    pub direct: bool,
    /// The pieces span `H^k`.
    pub spans: bool,
}

impl PurityReport {
    pub fn pure(&self) -> bool {
        self.direct && self.spans
    }

    fn merge(self, other: PurityReport) -> PurityReport {
        PurityReport {
            sum_of_pieces: self.sum_of_pieces + other.sum_of_pieces,
            de_rham: self.de_rham + other.de_rham,
            direct: self.direct && other.direct,
            spans: self.spans && other.spans,
        }
    }
}

/// `H^{p,q} = F^p H^{p+q} ∩ F̄^q H^{p+q}` and the induced filtrations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgePieces {
    pub dims: BTreeMap<Bidegree, usize>,
    /// `(k, p) → dim F^p H^k`
    pub f_dims: BTreeMap<(i64, i64), usize>,
    /// `(k, q) → dim F̄^q H^k`
    pub fbar_dims: BTreeMap<(i64, i64), usize>,
    pub purity: BTreeMap<i64, PurityReport>,
}

impl HodgePieces {
    pub fn get(&self, at: Bidegree) -> usize {
        self.dims.get(&at).copied().unwrap_or(0)
    }

    pub fn pure(&self) -> BTreeMap<i64, bool> {
        self.purity.iter().map(|(k, r)| (*k, r.pure())).collect()
    }

    pub(crate) fn merge(mut self, other: HodgePieces) -> HodgePieces {
        for (b, d) in other.dims {
            *self.dims.entry(b).or_default() += d;
        }
        for (key, d) in other.f_dims {
            *self.f_dims.entry(key).or_default() += d;
        }
        for (key, d) in other.fbar_dims {
            *self.fbar_dims.entry(key).or_default() += d;
        }
        for (k, r) in other.purity {
            let merged = match self.purity.get(&k) {
                Some(mine) => mine.merge(r),
                None => r,
            };
            self.purity.insert(k, merged);
        }
        self
    }
}

/// Hodge pieces of a single complex, computed as filtration intersections and
/// cross-checked against the images of Bott–Chern classes.
/// Filtration dimensions are tabulated over the given hull so that results
/// of the pieces of a direct sum can be added.
pub(crate) fn hodge_single(dc: &DoubleComplex, hull: (i64, i64, i64, i64)) -> Result<HodgePieces> {
    let mut out = HodgePieces::default();
    let (pmin, pmax, qmin, qmax) = hull;
    for k in dc.total_degrees() {
        let layout = dc.total_layout(k);
        let n = layout.dim;
        let cycles = kernel(&dc.total_differential(k));
        let bounds = image(&dc.total_differential(k - 1));
        let h_k = cycles.dim() - bounds.dim();
        let with_bounds = |s: &Subspace| s.sum(&bounds).expect("same ambient");

        let f_part = |p: i64| with_bounds(&cycles.suffix_part(layout.filtration_start(p)));
        // F̄^q Tot^k is the coordinate prefix of blocks with p ≤ k − q
        let fbar_part = |q: i64| {
            let prefix = Subspace::coordinate(n, 0..layout.filtration_start(k - q + 1));
            with_bounds(&cycles.intersect(&prefix).expect("same ambient"))
        };

        for p in pmin..=pmax + 1 {
            out.f_dims.insert((k, p), f_part(p).dim() - bounds.dim());
        }
        for q in qmin..=qmax + 1 {
            out.fbar_dims.insert((k, q), fbar_part(q).dim() - bounds.dim());
        }

        let mut pieces = Vec::new();
        let mut total = 0;
        for block in &layout.blocks {
            let (p, q) = (block.p, block.q);
            let piece = f_part(p).intersect(&fbar_part(q)).expect("same ambient");
            let h = piece.dim() - bounds.dim();
            let via_bc = with_bounds(&dc.bott_chern_cycles((p, q)).embed(block.offset, n)).dim() - bounds.dim();
            if h != via_bc {
                return Err(Error::internal(format!(
                    "H^{{{p},{q}}}: filtration intersection gives {h}, Bott-Chern image gives {via_bc}"
                )));
            }
            out.dims.insert((p, q), h);
            total += h;
            pieces.push(piece);
        }
        let span = Subspace::sum_all(n, pieces.iter().chain(std::iter::once(&bounds))).expect("same ambient");
        out.purity.insert(
            k,
            PurityReport {
                sum_of_pieces: total,
                de_rham: h_k,
                direct: span.dim() - bounds.dim() == total,
                spans: span.dim() == cycles.dim(),
            },
        );
    }
    Ok(out)
}
