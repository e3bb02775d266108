//! Forms `f · ξ` where `ξ` is an invariant monomial in `x_0, …, x_{n−1}`
//! and their conjugates, and `f` is a unitary character with
//! `d log f = h·x − h̄·x̄`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::bicomplex::{Arrow, Bidegree, DoubleComplex, RealStructure};
use crate::error::{Error, Result};
use crate::exact::{vector, Matrix, Scalar, SparseVec};
use crate::lie::exterior::{wedge_sign, Exterior};

/// `(h, monomial)`; bits `0..n` of the monomial are `x_i`, bits `n..2n` are `x̄_i`.
pub type TwistedForm = (SparseVec, u32);

pub struct TwistedForms {
    n: usize,
    ext: Exterior,
    /// `d` of each of the `2n` generators, over degree-two monomials.
    images: Vec<SparseVec>,
}

impl TwistedForms {
    /// `holomorphic[i]` is `d x_i` as a list of `(a, b, c)` meaning
    /// `c · g_a ∧ g_b`, with generator indices in `0..2n`. The antiholomorphic
    /// generators get the conjugate images.
    pub fn new(n: usize, holomorphic: &[Vec<(usize, usize, Scalar)>]) -> Self {
        let ext = Exterior::new(2 * n);
        let bar = |g: usize| if g < n { g + n } else { g - n };
        let mut images = vec![SparseVec::new(); 2 * n];
        for (i, terms) in holomorphic.iter().enumerate() {
            for (a, b, c) in terms {
                let s = wedge_sign(1 << a, 1 << b).expect("distinct generators");
                let at = vector::unit(ext.index(1 << a | 1 << b));
                images[i] = vector::axpy(&images[i], &(&s * c), &at);
                let (ca, cb) = (bar(*a), bar(*b));
                let s = wedge_sign(1 << ca, 1 << cb).expect("distinct generators");
                let at = vector::unit(ext.index(1 << ca | 1 << cb));
                images[i + n] = vector::axpy(&images[i + n], &(&s * &c.conj()), &at);
            }
        }
        TwistedForms { n, ext, images }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self, m: u32) -> Bidegree {
        let low = (1u32 << self.n) - 1;
        ((m & low).count_ones() as i64, (m >> self.n).count_ones() as i64)
    }

    pub fn conj_mask(&self, m: u32) -> u32 {
        let low = (1u32 << self.n) - 1;
        (m & low) << self.n | m >> self.n
    }

    /// `(∂(fξ), ∂̄(fξ))` as combinations of monomials, all with the same `h`.
    fn differentials(&self, (h, m): &TwistedForm) -> Result<[BTreeMap<u32, Scalar>; 2]> {
        let (p, q) = self.bidegree(*m);
        let mut out = [BTreeMap::new(), BTreeMap::new()];
        let mut push = |t: u32, c: Scalar| -> Result<()> {
            let slot = match self.bidegree(t) {
                b if b == (p + 1, q) => 0,
                b if b == (p, q + 1) => 1,
                _ => return Err(Error::internal("an invariant differential leaves bidegrees (1,0) and (0,1)")),
            };
            let e: &mut Scalar = out[slot].entry(t).or_default();
            *e += &c;
            Ok(())
        };
        for (i, c) in h {
            if let Some(s) = wedge_sign(1 << i, *m) {
                push(m | 1 << i, &s * c)?;
            }
            let bit = 1u32 << (i + self.n);
            if let Some(s) = wedge_sign(bit, *m) {
                push(m | bit, -(&s * &c.conj()))?;
            }
        }
        for (t, c) in self.ext.derive_monomial(&self.images, *m) {
            push(t, c)?;
        }
        for o in &mut out {
            o.retain(|_, c| !c.is_zero());
        }
        Ok(out)
    }

    /// Double complex spanned by `forms`, which must be closed under both
    /// differentials and conjugation, together with conjugation as real structure.
    pub fn build(&self, forms: &BTreeSet<TwistedForm>) -> Result<(DoubleComplex, RealStructure)> {
        let mut by_degree: BTreeMap<Bidegree, Vec<&TwistedForm>> = BTreeMap::new();
        for f in forms {
            if f.0.iter().any(|(i, _)| *i >= self.n) {
                return Err(Error::internal("twist covector has more entries than generators"));
            }
            by_degree.entry(self.bidegree(f.1)).or_default().push(f);
        }
        let mut index: HashMap<&TwistedForm, usize> = HashMap::new();
        for fs in by_degree.values() {
            for (i, f) in fs.iter().enumerate() {
                index.insert(f, i);
            }
        }
        let mut dc = DoubleComplex::with_spaces(by_degree.iter().map(|(b, v)| (*b, v.len())));
        let mut sigma = BTreeMap::new();
        for (&(p, q), fs) in &by_degree {
            let mut trip: [Vec<(usize, usize, Scalar)>; 2] = [Vec::new(), Vec::new()];
            let mut conj = Vec::new();
            for (col, f) in fs.iter().enumerate() {
                let ds = self.differentials(f)?;
                for (slot, d) in ds.into_iter().enumerate() {
                    for (t, c) in d {
                        let key = (f.0.clone(), t);
                        let Some(&row) = index.get(&key) else {
                            let (tp, tq) = self.bidegree(t);
                            return Err(Error::internal(format!(
                                "the span is not closed under {} at ({tp},{tq})",
                                if slot == 0 { "del" } else { "delbar" }
                            )));
                        };
                        trip[slot].push((row, col, c));
                    }
                }
                let image = (vector::neg(&f.0), self.conj_mask(f.1));
                let Some(&row) = index.get(&image) else {
                    return Err(Error::internal(format!("the span is not closed under conjugation at ({p},{q})")));
                };
                let sign = if (p * q) % 2 == 0 { Scalar::ONE } else { Scalar::int(-1) };
                conj.push((row, col, sign));
            }
            let [del, delbar] = trip;
            for (arrow, t) in [(Arrow::Del, del), (Arrow::Delbar, delbar)] {
                if t.is_empty() {
                    continue;
                }
                let (dp, dq) = arrow.step();
                let m = Matrix::from_triplets(dc.dim((p + dp, q + dq)), fs.len(), t);
                dc.set_map(arrow, (p, q), m)?;
            }
            sigma.insert((p, q), Matrix::from_triplets(dc.dim((q, p)), fs.len(), conj));
        }
        Ok((dc, RealStructure::new(sigma)))
    }
}
