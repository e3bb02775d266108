//! Finite-dimensional models of Dolbeault cohomology of solvmanifolds: the
//! character-twisted complex of a complex solvable Lie algebra and the
//! complex of a semidirect product `ℂⁿ ⋉ N` of splitting type.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bicomplex::{DoubleComplex, Flavor, RealStructure, SimpleComplex};
use crate::error::{Error, Result};
use crate::exact::{vector, Scalar, SparseVec, Subspace};
use crate::lie::exterior::Exterior;
use crate::lie::{ce_complex, LieAlgebra};

mod io;
mod splitting;
pub mod twisted;

pub use splitting::{build_splitting, splitting_preset, Character, PairFlags, SplittingData};
use twisted::{TwistedForm, TwistedForms};

/// Which index sets `I` have `(ᾱ_I / α_I)|_Γ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlagSpec {
    All,
    /// Only the characters that are identically one.
    Identically,
    /// The listed sets, together with every set of the same character.
    Subsets(Vec<BTreeSet<usize>>),
}

/// A complex solvable Lie algebra with a basis diagonalising `Ad_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvData {
    pub g: LieAlgebra,
    /// `weights[i]` is the covector `a_i` with `a_i(X_j)` at index `j`.
    pub weights: Vec<SparseVec>,
    pub flags: FlagSpec,
}

/// A set of trivial characters, each given by its exponent covector.
#[derive(Clone, Debug)]
struct TrivialSet(Option<BTreeSet<SparseVec>>);

impl TrivialSet {
    fn contains(&self, a: &SparseVec) -> bool {
        self.0.as_ref().map_or(true, |s| s.contains(a))
    }
}

fn mask_sum(parts: &[SparseVec], mask: u32) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, v) in parts.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out = vector::add(&out, v);
        }
    }
    out
}

/// Checks that the trivial characters among `chars[mask]` are closed under
/// products of disjoint index sets and under inverses.
fn check_closure(chars: &[SparseVec], trivial: &TrivialSet) -> Result<()> {
    let all: BTreeSet<&SparseVec> = chars.iter().collect();
    for (i, a) in chars.iter().enumerate() {
        if !trivial.contains(a) {
            continue;
        }
        let neg = vector::neg(a);
        if all.contains(&neg) && !trivial.contains(&neg) {
            return Err(Error::invalid(format!("flags are not closed under inverses (index set mask {i:#b})")));
        }
        for (j, b) in chars.iter().enumerate() {
            if i & j == 0 && trivial.contains(b) && !trivial.contains(&chars[i | j]) {
                return Err(Error::invalid(format!(
                    "flags are not closed under products (index set masks {i:#b} and {j:#b})"
                )));
            }
        }
    }
    Ok(())
}

fn sets_to_mask(sets: &[BTreeSet<usize>], n: usize) -> Result<Vec<u32>> {
    sets.iter()
        .map(|s| {
            s.iter().try_fold(0u32, |m, &i| {
                if i >= n {
                    Err(Error::invalid(format!("flag index {i} out of range for dimension {n}")))
                } else {
                    Ok(m | 1 << i)
                }
            })
        })
        .collect()
}

impl SolvData {
    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// `a_I` for every index set, indexed by bitmask.
    pub fn subset_weights(&self) -> Vec<SparseVec> {
        (0..1u32 << self.dim()).map(|m| mask_sum(&self.weights, m)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if n > 8 {
            return Err(Error::invalid("solvable data is limited to dimension 8"));
        }
        self.g.validate()?;
        if self.weights.len() != n || self.weights.iter().any(|w| w.iter().any(|(j, _)| *j >= n)) {
            return Err(Error::invalid(format!("expected {n} weight covectors of length {n}")));
        }
        if !self.g.is_solvable() {
            return Err(Error::invalid("the Lie algebra is not solvable"));
        }
        let a = &self.weights;
        for (i, j, k, _) in self.g.structure_constants() {
            if a[k] != vector::add(&a[i], &a[j]) {
                return Err(Error::invalid(format!("[X_{i}, X_{j}] has a component on X_{k} but a_{k} ≠ a_{i} + a_{j}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let diag = vector::get(&self.g.bracket_basis(j, i), i).cloned().unwrap_or_default();
                let w = vector::get(&a[i], j).cloned().unwrap_or_default();
                if diag != w {
                    return Err(Error::invalid(format!("a_{i}(X_{j}) = {w} but ad(X_{j}) has {diag} on X_{i}")));
                }
                if !w.is_zero() && !a[j].is_empty() {
                    return Err(Error::invalid(format!("a_{i} is nonzero on X_{j}, which has nonzero weight")));
                }
            }
        }
        let derived = self.g.bracket_span(&Subspace::full(n), &Subspace::full(n));
        for (i, w) in a.iter().enumerate() {
            if derived.basis().iter().any(|v| !vector::dot(w, v).is_zero()) {
                return Err(Error::invalid(format!("a_{i} does not vanish on [g,g]")));
            }
        }
        self.trivial_set().map(|_| ())
    }

    fn trivial_set(&self) -> Result<TrivialSet> {
        let chars = self.subset_weights();
        let set = match &self.flags {
            FlagSpec::All => TrivialSet(None),
            FlagSpec::Identically => TrivialSet(Some([SparseVec::new()].into_iter().collect())),
            FlagSpec::Subsets(sets) => {
                let masks = sets_to_mask(sets, self.dim())?;
                let mut s: BTreeSet<SparseVec> = masks.iter().map(|&m| chars[m as usize].clone()).collect();
                s.insert(SparseVec::new());
                TrivialSet(Some(s))
            }
        };
        check_closure(&chars, &set)?;
        Ok(set)
    }

    /// Whether the index set `mask` is flagged.
    pub fn flagged(&self, mask: u32) -> Result<bool> {
        Ok(self.trivial_set()?.contains(&mask_sum(&self.weights, mask)))
    }

    fn flagged_masks(&self) -> Result<Vec<u32>> {
        let set = self.trivial_set()?;
        let chars = self.subset_weights();
        Ok((0..1u32 << self.dim()).filter(|&m| set.contains(&chars[m as usize])).collect())
    }

    /// The spanning forms `(h, x_J ∧ x̄_K)`: `h = −a_K` for flagged `K` and
    /// `h = a_J` for flagged `J`; a form in both families appears once.
    pub fn spanning_forms(&self) -> Result<BTreeSet<TwistedForm>> {
        let n = self.dim();
        let chars = self.subset_weights();
        let mut out = BTreeSet::new();
        for f in self.flagged_masks()? {
            for other in 0..1u32 << n {
                out.insert((vector::neg(&chars[f as usize]), other | f << n));
                out.insert((chars[f as usize].clone(), f | other << n));
            }
        }
        Ok(out)
    }
}

fn ce_terms(g: &LieAlgebra) -> Vec<Vec<(usize, usize, Scalar)>> {
    let mut out = vec![Vec::new(); g.dim()];
    for (i, j, k, c) in g.structure_constants() {
        out[k].push((i, j, -c.clone()));
    }
    out
}

/// The twisted complex `C` with its real structure.
pub fn build_c(sd: &SolvData) -> Result<(DoubleComplex, RealStructure)> {
    sd.validate()?;
    let forms = sd.spanning_forms()?;
    let (dc, rs) = TwistedForms::new(sd.dim(), &ce_terms(&sd.g)).build(&forms)?;
    if let Err(f) = dc.validate() {
        return Err(Error::internal(format!("the twisted differentials violate {f}")));
    }
    if !rs.check(&dc)? {
        return Err(Error::internal("conjugation does not intertwine the twisted differentials"));
    }
    let parts = DoubleComplex::direct_sum_all(&three_part_summands(sd)?.into_iter().map(|s| s.complex).collect::<Vec<_>>());
    if parts.spaces() != dc.spaces() {
        return Err(Error::internal("the three-part splitting has different dimensions"));
    }
    for f in Flavor::ALL {
        if parts.cohomology(f) != dc.cohomology(f) {
            return Err(Error::internal(format!("the three-part splitting has different {f} cohomology")));
        }
    }
    Ok((dc, rs))
}

/// Which piece of the splitting of one character class a summand is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    /// Flagged on both factors.
    Both,
    /// Flagged on the holomorphic factor only.
    Holomorphic,
    /// Flagged on the antiholomorphic factor only.
    Antiholomorphic,
}

#[derive(Clone, Debug)]
pub struct Summand {
    /// `h`, the `(1,0)`-part of `d log` of the twisting character.
    pub twist: SparseVec,
    pub piece: Piece,
    pub complex: DoubleComplex,
}

/// Twisted CE complex on `Λ g*` restricted to the monomials in `keep`.
fn restricted(ext: &Exterior, full: &SimpleComplex, keep: impl Fn(u32) -> bool) -> Result<SimpleComplex> {
    let n = ext.generators();
    let idx: Vec<Vec<usize>> =
        (0..=n).map(|k| ext.monomials(k).iter().enumerate().filter(|(_, m)| keep(**m)).map(|(i, _)| i).collect()).collect();
    let mut out = SimpleComplex::new((0..=n).map(|k| (k as i64, idx[k].len())));
    for k in 0..n {
        let d = full.d(k as i64);
        let all_rows: Vec<usize> = (0..ext.dim(k + 1)).collect();
        let leak = d.select(&all_rows, &idx[k]);
        let kept = d.select(&idx[k + 1], &idx[k]);
        if leak.nnz() != kept.nnz() {
            return Err(Error::internal(format!("a twisted summand is not a subcomplex in degree {k}")));
        }
        out.set_d(k as i64, kept)?;
    }
    Ok(out)
}

fn twisted_ce(ext: &Exterior, ce: &SimpleComplex, theta: &SparseVec) -> Result<SimpleComplex> {
    let n = ext.generators();
    let mut out = SimpleComplex::new((0..=n).map(|k| (k as i64, ext.dim(k))));
    for k in 0..n {
        out.set_d(k as i64, ce.d(k as i64).add(&ext.wedge_left(theta, k))?)?;
    }
    Ok(out)
}

/// `C` as a direct sum over twisting characters of three tensor products of
/// simple complexes each.
pub fn three_part_summands(sd: &SolvData) -> Result<Vec<Summand>> {
    sd.validate()?;
    let n = sd.dim();
    let chars = sd.subset_weights();
    let flagged: BTreeSet<u32> = sd.flagged_masks()?.into_iter().collect();
    let ext = Exterior::new(n);
    let ce = ce_complex(&sd.g)?;
    let mut twists: BTreeSet<SparseVec> = BTreeSet::new();
    for &f in &flagged {
        twists.insert(chars[f as usize].clone());
        twists.insert(vector::neg(&chars[f as usize]));
    }
    let mut out = Vec::new();
    for h in twists {
        let left = twisted_ce(&ext, &ce, &h)?;
        let right = twisted_ce(&ext, &ce, &vector::neg(&h))?.conj();
        let neg_h = vector::neg(&h);
        let in_j = |m: u32| flagged.contains(&m) && chars[m as usize] == h;
        let in_k = |m: u32| flagged.contains(&m) && chars[m as usize] == neg_h;
        let pieces = [
            (Piece::Both, restricted(&ext, &left, in_j)?, restricted(&ext, &right, in_k)?),
            (Piece::Antiholomorphic, restricted(&ext, &left, |m| !in_j(m))?, restricted(&ext, &right, in_k)?),
            (Piece::Holomorphic, restricted(&ext, &left, in_j)?, restricted(&ext, &right, |m| !in_k(m))?),
        ];
        for (piece, l, r) in pieces {
            let complex = DoubleComplex::tensor_product(&l, &r);
            if complex.total_dim() > 0 {
                out.push(Summand { twist: h.clone(), piece, complex });
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NakamuraCase {
    Identically,
    Real,
}

/// `[X_0, X_1] = X_1`, `[X_0, X_2] = −X_2` with `a_1 = x_0`, `a_2 = −x_0`.
pub fn nakamura_preset(case: NakamuraCase) -> SolvData {
    let mut g = LieAlgebra::abelian(3);
    g.add_bracket(0, 1, 1, &Scalar::ONE).unwrap();
    g.add_bracket(0, 2, 2, &Scalar::int(-1)).unwrap();
    let weights = vec![Vec::new(), vec![(0, Scalar::ONE)], vec![(0, Scalar::int(-1))]];
    let flags = match case {
        NakamuraCase::Identically => FlagSpec::Identically,
        NakamuraCase::Real => FlagSpec::All,
    };
    SolvData { g, weights, flags }
}

/// A random `ℂ^r ⋉ 𝔫` acting diagonally on a nilpotent `𝔫`, with flags the
/// index sets whose character lies in the span of a few random characters.
pub fn random_solvable(seed: u64, n: usize) -> SolvData {
    assert!((1..=6).contains(&n), "random solvable data has dimension 1 to 6");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = if n == 1 { 1 } else { rng.gen_range(1..=2.min(n - 1)) };
    let mut g = LieAlgebra::abelian(n);
    let mut w: Vec<Vec<i64>> = vec![vec![0; r]; n];
    for wk in w.iter_mut().skip(r) {
        for x in wk.iter_mut() {
            *x = rng.gen_range(-1..=1);
        }
    }
    for k in r..n {
        for i in 0..r {
            if w[k][i] != 0 {
                g.add_bracket(i, k, k, &Scalar::int(w[k][i])).unwrap();
            }
        }
    }
    for a in r..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let fits = (0..r).all(|i| w[c][i] == w[a][i] + w[b][i]);
                if fits && rng.gen_bool(0.6) {
                    let mut trial = g.clone();
                    let coef = Scalar::gauss(rng.gen_range(1..=2), rng.gen_range(-1..=1));
                    trial.add_bracket(a, b, c, &coef).unwrap();
                    if trial.jacobi_failure().is_none() {
                        g = trial;
                    }
                }
            }
        }
    }
    let weights: Vec<SparseVec> = w
        .iter()
        .map(|wk| wk.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, Scalar::int(*x))).collect())
        .collect();
    let chars: Vec<SparseVec> = (0..1u32 << n).map(|m| mask_sum(&weights, m)).collect();
    let flags = match rng.gen_range(0..4) {
        0 => FlagSpec::All,
        1 => FlagSpec::Identically,
        _ => {
            let picks: Vec<SparseVec> =
                (0..rng.gen_range(1..=2)).map(|_| chars[rng.gen_range(0..chars.len())].clone()).collect();
            let span = Subspace::span(n, picks);
            let sets = (0..1u32 << n)
                .filter(|&m| span.contains(&chars[m as usize]))
                .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
                .collect();
            FlagSpec::Subsets(sets)
        }
    };
    SolvData { g, weights, flags }
}

/// `h^{p,q}_∂̄` of the model, for reports.
pub fn dolbeault_numbers(dc: &DoubleComplex) -> BTreeMap<(i64, i64), usize> {
    dc.dolbeault().dims
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{catalog, invariant_bicomplex};
    use crate::spectral::{classify, ClassifyOptions};

    fn page1(dc: DoubleComplex, rs: RealStructure) -> bool {
        let c = classify(&dc, &ClassifyOptions { real_structure: Some(rs), force_independent: true }).unwrap();
        c.verdict.page1_by_definition && c.verdict.page1_by_dims
    }

    #[test]
    fn nakamura_lattice_dependence() {
        let (a, ra) = build_c(&nakamura_preset(NakamuraCase::Identically)).unwrap();
        let (b, rb) = build_c(&nakamura_preset(NakamuraCase::Real)).unwrap();
        assert_eq!(a.dolbeault().get((0, 1)), 1);
        assert_eq!(b.dolbeault().get((0, 1)), 3);
        assert!(page1(a, ra));
        assert!(page1(b, rb));
    }

    #[test]
    fn nakamura_flags() {
        let sd = nakamura_preset(NakamuraCase::Identically);
        assert!(sd.flagged(0b110).unwrap());
        assert!(!sd.flagged(0b010).unwrap());
        assert!(nakamura_preset(NakamuraCase::Real).flagged(0b010).unwrap());
    }

    #[test]
    fn abelian_is_invariant_bicomplex() {
        let sd = SolvData { g: catalog::abelian(2), weights: vec![vec![], vec![]], flags: FlagSpec::All };
        let (dc, _) = build_c(&sd).unwrap();
        let (inv, _) = invariant_bicomplex(&catalog::abelian(2)).unwrap();
        assert_eq!(dc.spaces(), inv.spaces());
    }

    #[test]
    fn nilpotent_identically_is_invariant_bicomplex() {
        let g = catalog::heisenberg3();
        let sd = SolvData { g: g.clone(), weights: vec![vec![]; 3], flags: FlagSpec::Identically };
        let (dc, _) = build_c(&sd).unwrap();
        let (inv, _) = invariant_bicomplex(&g).unwrap();
        let parts = |d: &DoubleComplex| crate::zigzag::decompose(d).unwrap().parts;
        assert_eq!(parts(&dc), parts(&inv));
    }

    #[test]
    fn bad_flags_rejected() {
        let mut sd = nakamura_preset(NakamuraCase::Identically);
        sd.flags = FlagSpec::Subsets(vec![[1].into_iter().collect()]);
        // a_1 flagged forces −a_1 = a_2
        assert!(sd.validate().is_err());
        sd.flags = FlagSpec::Subsets(vec![[1].into_iter().collect(), [2].into_iter().collect()]);
        assert!(sd.validate().is_ok());
    }

    #[test]
    fn non_solvable_rejected() {
        let sd = SolvData { g: catalog::sl2(), weights: vec![vec![]; 3], flags: FlagSpec::All };
        assert!(build_c(&sd).is_err());
    }

    #[test]
    fn random_data_is_valid_and_page1() {
        for seed in 0..12 {
            let sd = random_solvable(seed, 1 + (seed as usize % 4));
            sd.validate().unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            let (dc, rs) = build_c(&sd).unwrap();
            assert!(page1(dc, rs), "seed {seed}");
        }
        assert!(random_solvable(3, 1).g.is_abelian());
    }
}
