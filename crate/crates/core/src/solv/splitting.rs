use std::collections::BTreeSet;

use super::twisted::{TwistedForm, TwistedForms};
use super::{check_closure, TrivialSet};
use crate::bicomplex::{DoubleComplex, RealStructure};
use crate::error::{Error, Result};
use crate::exact::{vector, Scalar, SparseVec};
use crate::lie::LieAlgebra;

/// The character `t ↦ exp(hol·t + antihol·t̄)` of `ℂⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub hol: Vec<Scalar>,
    pub antihol: Vec<Scalar>,
}

fn conj_all(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(Scalar::conj).collect()
}

fn neg_all(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| -x).collect()
}

fn add_all(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Character {
    pub fn trivial(n: usize) -> Self {
        Character { hol: vec![Scalar::ZERO; n], antihol: vec![Scalar::ZERO; n] }
    }

    pub fn is_holomorphic(&self) -> bool {
        self.antihol.iter().all(Scalar::is_zero)
    }

    pub fn is_unitary(&self) -> bool {
        self.antihol == neg_all(&conj_all(&self.hol))
    }

    pub fn mul(&self, other: &Character) -> Character {
        Character { hol: add_all(&self.hol, &other.hol), antihol: add_all(&self.antihol, &other.antihol) }
    }

    pub fn inv(&self) -> Character {
        Character { hol: neg_all(&self.hol), antihol: neg_all(&self.antihol) }
    }

    /// The complex conjugate character.
    pub fn conj(&self) -> Character {
        Character { hol: conj_all(&self.antihol), antihol: conj_all(&self.hol) }
    }

    /// The unitary `β` making `self · β⁻¹` holomorphic.
    pub fn unitary_correction(&self) -> Character {
        Character { hol: neg_all(&conj_all(&self.antihol)), antihol: self.antihol.clone() }
    }
}

/// Which pairs `(J, L)` have `(β_J γ_L)|_Γ = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairFlags {
    All,
    Identically,
    Pairs(Vec<(BTreeSet<usize>, BTreeSet<usize>)>),
}

/// `G = ℂⁿ ⋉_φ N` with `φ` diagonal on `𝔫^{1,0}` with characters `phi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingData {
    pub n_abelian: usize,
    /// Structure constants of `𝔫^{1,0}` on `Y_0, …, Y_{m−1}`.
    pub nilp: LieAlgebra,
    pub phi: Vec<Character>,
    pub flags: PairFlags,
}

impl SplittingData {
    fn m(&self) -> usize {
        self.nilp.dim()
    }

    /// `β_j` (for `α_j`) and `γ_j` (for `ᾱ_j`).
    pub fn corrections(&self) -> Result<(Vec<Character>, Vec<Character>)> {
        let beta: Vec<Character> = self.phi.iter().map(Character::unitary_correction).collect();
        let gamma: Vec<Character> = self.phi.iter().map(|a| a.conj().unitary_correction()).collect();
        if beta.iter().chain(&gamma).any(|c| !c.is_unitary()) {
            return Err(Error::internal("a computed correction character is not unitary"));
        }
        Ok((beta, gamma))
    }

    /// `hol` exponent of `β_J γ_L` for every `J | L << m`.
    fn pair_characters(&self) -> Result<Vec<SparseVec>> {
        let (beta, gamma) = self.corrections()?;
        let m = self.m();
        let parts: Vec<SparseVec> =
            beta.iter().chain(&gamma).map(|c| vector::from_dense(&c.hol)).collect();
        Ok((0..1u32 << (2 * m)).map(|mask| super::mask_sum(&parts, mask)).collect())
    }

    fn trivial_set(&self) -> Result<TrivialSet> {
        let chars = self.pair_characters()?;
        let m = self.m();
        let set = match &self.flags {
            PairFlags::All => TrivialSet(None),
            PairFlags::Identically => TrivialSet(Some([SparseVec::new()].into_iter().collect())),
            PairFlags::Pairs(pairs) => {
                let mut s = BTreeSet::new();
                s.insert(SparseVec::new());
                for (j, l) in pairs {
                    let mut mask = 0u32;
                    for (set, shift) in [(j, 0), (l, m)] {
                        for &i in set {
                            if i >= m {
                                return Err(Error::invalid(format!("flag index {i} out of range for {m} generators")));
                            }
                            mask |= 1 << (i + shift);
                        }
                    }
                    s.insert(chars[mask as usize].clone());
                }
                TrivialSet(Some(s))
            }
        };
        check_closure(&chars, &set)?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        let (n, m) = (self.n_abelian, self.m());
        if n + m > 8 {
            return Err(Error::invalid("splitting data is limited to n + m ≤ 8"));
        }
        self.nilp.validate()?;
        if !self.nilp.is_nilpotent() {
            return Err(Error::invalid("the fibre algebra is not nilpotent"));
        }
        if self.phi.len() != m || self.phi.iter().any(|c| c.hol.len() != n || c.antihol.len() != n) {
            return Err(Error::invalid(format!("expected {m} characters with {n} exponents on each side")));
        }
        for (a, b, j, _) in self.nilp.structure_constants() {
            if self.phi[a].mul(&self.phi[b]) != self.phi[j] {
                return Err(Error::invalid(format!(
                    "[Y_{a}, Y_{b}] has a component on Y_{j} but α_{a} α_{b} ≠ α_{j}"
                )));
            }
        }
        self.trivial_set().map(|_| ())
    }

    /// Whether `(β_J γ_L)|_Γ = 1`.
    pub fn flagged(&self, j: u32, l: u32) -> Result<bool> {
        let chars = self.pair_characters()?;
        Ok(self.trivial_set()?.contains(&chars[(j | l << self.m()) as usize]))
    }
}

/// `C_Γ = B_Γ + conj(B_Γ)` with its real structure.
pub fn build_splitting(sp: &SplittingData) -> Result<(DoubleComplex, RealStructure)> {
    sp.validate()?;
    let (n, m) = (sp.n_abelian, sp.m());
    let big_n = n + m;
    // generators x_0…x_{n−1}, η_j = α_j⁻¹ y_j at n + j
    let mut gens: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); big_n];
    for (j, alpha) in sp.phi.iter().enumerate() {
        for i in 0..n {
            if !alpha.hol[i].is_zero() {
                gens[n + j].push((i, n + j, -alpha.hol[i].clone()));
            }
            if !alpha.antihol[i].is_zero() {
                gens[n + j].push((big_n + i, n + j, -alpha.antihol[i].clone()));
            }
        }
    }
    for (a, b, j, c) in sp.nilp.structure_constants() {
        gens[n + j].push((n + a, n + b, -c.clone()));
    }
    let engine = TwistedForms::new(big_n, &gens);

    let chars = sp.pair_characters()?;
    let trivial = sp.trivial_set()?;
    let full = |mask: u32| trivial.contains(&chars[mask as usize]);
    let mut forms: BTreeSet<TwistedForm> = BTreeSet::new();
    for ij in 0..1u32 << m {
        for iq in 0..1u32 << m {
            let (b_flag, c_flag) = (full(ij | iq << m), full(iq | ij << m));
            if !b_flag && !c_flag {
                continue;
            }
            let twist_b = chars[(ij | iq << m) as usize].clone();
            let twist_c = vector::neg(&chars[(iq | ij << m) as usize]);
            for xi in 0..1u32 << n {
                for xk in 0..1u32 << n {
                    let mask = xi | ij << n | (xk | iq << n) << big_n;
                    if b_flag {
                        forms.insert((twist_b.clone(), mask));
                    }
                    if c_flag {
                        forms.insert((twist_c.clone(), mask));
                    }
                }
            }
        }
    }
    let (dc, rs) = engine.build(&forms)?;
    if let Err(f) = dc.validate() {
        return Err(Error::internal(format!("the splitting-type differentials violate {f}")));
    }
    if !rs.check(&dc)? {
        return Err(Error::internal("conjugation does not intertwine the splitting-type differentials"));
    }
    Ok((dc, rs))
}

/// `ℂ ⋉ ℂ²` with `α = (e^z, e^{−z})`; flags all pairs (`real`) or only the
/// identically trivial ones.
pub fn splitting_preset(real: bool) -> SplittingData {
    let one = |x: i64| Character { hol: vec![Scalar::int(x)], antihol: vec![Scalar::ZERO] };
    SplittingData {
        n_abelian: 1,
        nilp: LieAlgebra::abelian(2),
        phi: vec![one(1), one(-1)],
        flags: if real { PairFlags::All } else { PairFlags::Identically },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{catalog, invariant_bicomplex};
    use crate::spectral::{classify, ClassifyOptions};

    #[test]
    fn corrections_are_unitary() {
        let a = Character { hol: vec![Scalar::gauss(1, 2)], antihol: vec![Scalar::gauss(3, -1)] };
        let b = a.unitary_correction();
        assert!(b.is_unitary());
        assert!(a.mul(&b.inv()).is_holomorphic());
        let g = a.conj().unitary_correction();
        assert!(g.is_unitary() && a.conj().mul(&g.inv()).is_holomorphic());
    }

    #[test]
    fn no_fibre_is_abelian_invariant_bicomplex() {
        let sp = SplittingData { n_abelian: 2, nilp: LieAlgebra::abelian(0), phi: vec![], flags: PairFlags::All };
        let (dc, _) = build_splitting(&sp).unwrap();
        let (inv, _) = invariant_bicomplex(&catalog::abelian(2)).unwrap();
        assert_eq!(dc.spaces(), inv.spaces());
        assert!(dc.maps(crate::bicomplex::Arrow::Del).is_empty());
    }

    #[test]
    fn presets_are_page1() {
        let mut h01 = Vec::new();
        for real in [true, false] {
            let (dc, rs) = build_splitting(&splitting_preset(real)).unwrap();
            let c = classify(&dc, &ClassifyOptions { real_structure: Some(rs), force_independent: true }).unwrap();
            assert!(c.verdict.page1_by_definition, "real = {real}");
            h01.push(c.table(crate::bicomplex::Flavor::Dolbeault).clone());
            if real {
                assert!(!c.verdict.ddbar_lemma);
            }
        }
        let (real, ident) = (&h01[0], &h01[1]);
        for q in 0..=3 {
            assert!(ident.get((0, q)) <= real.get((0, q)));
        }
        assert!((0..=3).any(|q| ident.get((0, q)) < real.get((0, q))));
    }
}
