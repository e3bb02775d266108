//! Filtration spectral sequences, Hodge pieces of de Rham cohomology and the
//! classification of `∂∂̄`-type properties.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bicomplex::{Bidegree, CohomologyTable, DoubleComplex, Flavor, RealStructure, TotalCohomology};
use crate::error::{Error, Result};

mod hodge;
mod sequence;
mod verdict;

pub use hodge::{HodgePieces, PurityReport};
pub use sequence::{Filtration, SpectralPage, SpectralSequence};
pub use verdict::Verdict;

fn merge_sequences(filtration: Filtration, parts: Vec<SpectralSequence>) -> SpectralSequence {
    let last = parts.iter().map(|s| s.degeneration_page).max().unwrap_or(1);
    let mut pages: Vec<SpectralPage> = (1..=last)
        .map(|r| SpectralPage { r, filtration, dims: BTreeMap::new(), dr_ranks: BTreeMap::new() })
        .collect();
    let mut e_infinity = BTreeMap::new();
    for s in parts {
        for page in &mut pages {
            // a part that has already degenerated keeps its last page
            let src = s.page(page.r).or(s.pages.last());
            if let Some(src) = src {
                for (b, d) in &src.dims {
                    *page.dims.entry(*b).or_default() += d;
                }
                if src.r == page.r {
                    for (b, d) in &src.dr_ranks {
                        *page.dr_ranks.entry(*b).or_default() += d;
                    }
                }
            }
        }
        for (b, d) in s.e_infinity {
            *e_infinity.entry(b).or_default() += d;
        }
    }
    SpectralSequence { filtration, pages, e_infinity, degeneration_page: last }
}

/// Spectral sequence of the column (`F`) or row (`F̄`) filtration of `Tot`.
/// Pages run from `E_1` to the degeneration page.
pub fn spectral_sequence(dc: &DoubleComplex, filtration: Filtration) -> Result<SpectralSequence> {
    let source = match filtration {
        Filtration::Column => dc.clone(),
        Filtration::Row => dc.transpose(),
    };
    let parts: Vec<SpectralSequence> =
        source.components().par_iter().map(sequence::column_sequence).collect::<Result<_>>()?;
    let merged = merge_sequences(Filtration::Column, parts);
    let expected = match filtration {
        Filtration::Column => dc.dolbeault(),
        Filtration::Row => dc.del_cohomology(),
    };
    let out = match filtration {
        Filtration::Column => merged,
        Filtration::Row => merged.transposed(Filtration::Row),
    };
    if let Some(e1) = out.page(1) {
        for (b, d) in &expected.dims {
            if e1.get(*b) != *d {
                return Err(Error::internal(format!(
                    "E_1 of the {} sequence disagrees with {} cohomology at ({},{})",
                    filtration.label(),
                    expected.flavor,
                    b.0,
                    b.1
                )));
            }
        }
    }
    Ok(out)
}

/// Hodge pieces of `H_dR`, verified by two independent computations.
pub fn hodge_pieces(dc: &DoubleComplex) -> Result<HodgePieces> {
    let Some(hull) = dc.hull() else { return Ok(HodgePieces::default()) };
    let parts: Vec<HodgePieces> =
        dc.components().par_iter().map(|c| hodge::hodge_single(c, hull)).collect::<Result<_>>()?;
    Ok(parts.into_iter().fold(HodgePieces::default(), HodgePieces::merge))
}

/// `k → (H^k_dR = ⊕_{p+q=k} H^{p,q})`, with directness checked on subspaces.
pub fn purity_check(h: &HodgePieces) -> BTreeMap<i64, bool> {
    h.pure()
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    /// When present and valid, the `F̄` sequence is mirrored from the `F` one.
    pub real_structure: Option<RealStructure>,
    /// Compute the `F̄` sequence directly even with a real structure, and
    /// compare against the mirrored one.
    pub force_independent: bool,
}

/// Everything `classify` computes.
#[derive(Clone, Debug)]
pub struct Classification {
    pub tables: BTreeMap<Flavor, CohomologyTable>,
    pub de_rham: TotalCohomology,
    pub f_sequence: SpectralSequence,
    pub fbar_sequence: SpectralSequence,
    pub hodge: HodgePieces,
    pub verdict: Verdict,
}

impl Classification {
    pub fn table(&self, f: Flavor) -> &CohomologyTable {
        &self.tables[&f]
    }
}

fn mirror(seq: &SpectralSequence) -> SpectralSequence {
    seq.clone().transposed(Filtration::Row)
}

/// `h_A^r + h_BC^r = h_∂̄^r + h_∂^r` for every total degree `r`.
pub fn page1_by_dims(tables: &BTreeMap<Flavor, CohomologyTable>, degrees: impl IntoIterator<Item = i64>) -> bool {
    let s = |f: Flavor, r: i64| tables[&f].degree_sum(r);
    degrees.into_iter().all(|r| {
        s(Flavor::Aeppli, r) + s(Flavor::BottChern, r) == s(Flavor::Dolbeault, r) + s(Flavor::Del, r)
    })
}

/// Cohomology tables, both spectral sequences, Hodge pieces and the verdict.
pub fn classify(dc: &DoubleComplex, opts: &ClassifyOptions) -> Result<Classification> {
    dc.ensure_valid()?;
    let tables: BTreeMap<Flavor, CohomologyTable> = Flavor::ALL.par_iter().map(|&f| (f, dc.cohomology(f))).collect();
    let de_rham = dc.de_rham();
    let f_sequence = spectral_sequence(dc, Filtration::Column)?;
    let real = match &opts.real_structure {
        Some(rs) => {
            if !rs.check(dc)? {
                return Err(Error::invalid("the supplied real structure is not compatible with the differentials"));
            }
            true
        }
        None => false,
    };
    let fbar_sequence = if real && !opts.force_independent {
        mirror(&f_sequence)
    } else {
        let direct = spectral_sequence(dc, Filtration::Row)?;
        if real && direct != mirror(&f_sequence) {
            return Err(Error::internal("row-filtration sequence differs from the mirror of the column sequence"));
        }
        direct
    };
    let hodge = hodge_pieces(dc)?;

    for (&k, &h) in &de_rham.dims {
        for (label, seq) in [("F", &f_sequence), ("Fbar", &fbar_sequence)] {
            if seq.e_infinity_sum(k) != h {
                return Err(Error::internal(format!(
                    "{label}: E_infinity in degree {k} has dimension {} but H^{k}_dR has {h}",
                    seq.e_infinity_sum(k)
                )));
            }
        }
    }

    let pure = purity_check(&hodge);
    let all_pure = pure.values().all(|&b| b);
    let (df, dfb) = (f_sequence.degeneration_page, fbar_sequence.degeneration_page);
    let by_def = df <= 2 && dfb <= 2 && all_pure;
    let by_dims = page1_by_dims(&tables, dc.total_degrees());
    if by_def != by_dims {
        return Err(Error::internal(format!(
            "page-1 routes disagree: by definition {by_def}, by dimensions {by_dims}"
        )));
    }
    let verdict = Verdict {
        degeneration_page_f: df,
        degeneration_page_fbar: dfb,
        pure,
        ddbar_lemma: df == 1 && dfb == 1 && all_pure,
        page1_by_definition: by_def,
        page1_by_dims: by_dims,
        page1_by_shape: None,
        e1_degenerate: df == 1,
    };
    Ok(Classification { tables, de_rham, f_sequence, fbar_sequence, hodge, verdict })
}

/// Convenience: `E_r` dimensions summed along each antidiagonal.
pub fn page_totals(page: &SpectralPage) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for ((p, q), d) in &page.dims {
        *out.entry(p + q).or_default() += d;
    }
    out
}

/// Bidegrees where `E_r^{p,q} ≠ E_r^{q,p}`, listed once with `p < q`.
pub fn asymmetric_bidegrees(dims: &BTreeMap<Bidegree, usize>) -> Vec<Bidegree> {
    let get = |b: Bidegree| dims.get(&b).copied().unwrap_or(0);
    let mut keys: Vec<Bidegree> = dims.keys().copied().chain(dims.keys().map(|&(p, q)| (q, p))).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().filter(|&(p, q)| p < q && get((p, q)) != get((q, p))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::catalog::{del_line, dot, square, wedge};

    fn classify_plain(dc: &DoubleComplex) -> Classification {
        classify(dc, &ClassifyOptions::default()).unwrap()
    }

    #[test]
    fn dot_is_ddbar() {
        let c = classify_plain(&dot((1, 2)));
        assert_eq!(c.verdict.degeneration_page_f, 1);
        assert!(c.verdict.ddbar_lemma);
        assert_eq!(c.hodge.get((1, 2)), 1);
    }

    #[test]
    fn wedge_is_impure() {
        let c = classify_plain(&wedge((0, 0)));
        assert_eq!(c.hodge.get((1, 0)), 1);
        assert_eq!(c.hodge.get((0, 1)), 1);
        assert_eq!(c.de_rham.get(1), 1);
        let r = c.hodge.purity[&1];
        assert!(!r.direct);
        assert!(r.spans);
        assert!(!c.verdict.pure[&1]);
        assert!(!c.verdict.page1_by_definition);
        assert!(!c.verdict.page1_by_dims);
    }

    #[test]
    fn mixed_sum() {
        let dc = DoubleComplex::direct_sum_all(&[dot((0, 0)), del_line((0, 0)), square((0, 0))]);
        let c = classify_plain(&dc);
        assert!(c.verdict.page1_by_definition);
        assert!(c.verdict.page1_by_dims);
        assert!(!c.verdict.ddbar_lemma);
        assert_eq!(c.verdict.degeneration_page_f, 2);
        assert_eq!(c.verdict.degeneration_page_fbar, 1);
    }

    #[test]
    fn square_alone() {
        let c = classify_plain(&square((0, 0)));
        assert!(c.verdict.ddbar_lemma);
        assert!(c.verdict.page1_by_definition);
        assert!(c.hodge.dims.values().all(|&d| d == 0));
    }

    #[test]
    fn asymmetry_listing() {
        let dims: BTreeMap<Bidegree, usize> = [((0, 1), 2), ((1, 0), 0), ((1, 1), 1)].into_iter().collect();
        assert_eq!(asymmetric_bidegrees(&dims), vec![(0, 1)]);
    }
}
