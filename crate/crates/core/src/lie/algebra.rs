use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exact::{vector, Matrix, Scalar, SparseVec, Subspace};
use crate::text::lines;

/// A finite-dimensional Lie algebra over `ℚ(i)` given by structure constants
/// `[X_i, X_j] = Σ_k c_{ij}^k X_k` on a basis `X_0, …, X_{n−1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

/// Basis triple where the Jacobi identity fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JacobiFailure(pub usize, pub usize, pub usize);

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, brackets: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Adds `c·X_k` to `[X_i, X_j]` (and `−c·X_k` to `[X_j, X_i]`).
    pub fn add_bracket(&mut self, i: usize, j: usize, k: usize, c: &Scalar) -> Result<()> {
        if i >= self.dim || j >= self.dim || k >= self.dim {
            return Err(Error::invalid(format!("bracket index out of range for dimension {}", self.dim)));
        }
        if i == j {
            return Err(Error::invalid(format!("[X_{i}, X_{i}] must vanish")));
        }
        let (a, b, c) = if i < j { (i, j, c.clone()) } else { (j, i, -c) };
        let e = self.brackets.entry((a, b)).or_default();
        *e = vector::axpy(e, &c, &vector::unit(k));
        if e.is_empty() {
            self.brackets.remove(&(a, b));
        }
        Ok(())
    }

    /// `[X_i, X_j]`
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => vector::neg(&self.bracket_basis(j, i)),
            Equal => Vec::new(),
        }
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                if i != j {
                    out = vector::axpy(&out, &(a * b), &self.bracket_basis(*i, *j));
                }
            }
        }
        out
    }

    /// Nonzero structure constants `(i, j, k, c_{ij}^k)` with `i < j`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.brackets.iter().flat_map(|(&(i, j), v)| v.iter().map(move |(k, c)| (i, j, *k, c)))
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `ad_x` with column `j` equal to `[x, X_j]`.
    pub fn ad(&self, x: &SparseVec) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.bracket(x, &vector::unit(j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Conjugate structure constants.
    pub fn conj(&self) -> LieAlgebra {
        LieAlgebra { dim: self.dim, brackets: self.brackets.iter().map(|(k, v)| (*k, vector::conj(v))).collect() }
    }

    pub fn jacobi_failure(&self) -> Option<JacobiFailure> {
        let n = self.dim;
        let u = vector::unit;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let s = vector::add(
                        &vector::add(
                            &self.bracket(&u(i), &self.bracket_basis(j, k)),
                            &self.bracket(&u(j), &self.bracket_basis(k, i)),
                        ),
                        &self.bracket(&u(k), &self.bracket_basis(i, j)),
                    );
                    if !s.is_empty() {
                        return Some(JacobiFailure(i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn validate(&self) -> Result<()> {
        match self.jacobi_failure() {
            None => Ok(()),
            Some(JacobiFailure(i, j, k)) => {
                Err(Error::invalid(format!("Jacobi identity fails for (X_{i}, X_{j}, X_{k})")))
            }
        }
    }

    /// `[a, b]` for subspaces `a`, `b`.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut out = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                out.push(self.bracket(x, y));
            }
        }
        Subspace::span(self.dim, out)
    }

    /// `g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ …` until it stabilises.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![Subspace::full(self.dim)];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_span(last, last);
            if next.dim() == last.dim() {
                return out;
            }
            out.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        let full = Subspace::full(self.dim);
        let mut cur = full.clone();
        loop {
            let next = self.bracket_span(&full, &cur);
            if next.is_zero() {
                return true;
            }
            if next.dim() == cur.dim() {
                return false;
            }
            cur = next;
        }
    }

    /// `B(X_i, X_j) = tr(ad X_i ∘ ad X_j)`
    pub fn killing_form(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.dim).map(|i| self.ad(&vector::unit(i))).collect();
        let mut out = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let prod = ads[i].mul(&ads[j]).expect("square");
                let mut tr = Scalar::ZERO;
                for r in 0..self.dim {
                    tr += &prod.get(r, r);
                }
                out.set(i, j, tr);
            }
        }
        out
    }

    /// Cartan's criterion: the Killing form is nondegenerate.
    pub fn is_semisimple(&self) -> bool {
        self.dim > 0 && self.killing_form().rank() == self.dim
    }

    /// The underlying real Lie algebra with basis `X_0, …, X_{n−1}, iX_0, …, iX_{n−1}`.
    pub fn realify(&self) -> LieAlgebra {
        let n = self.dim;
        let mut out = LieAlgebra::abelian(2 * n);
        // [aX, bY] = ab[X,Y] for a, b ∈ {1, i}
        for (i, j, k, c) in self.structure_constants() {
            let re = Scalar::real(c.re.clone());
            let im = Scalar::real(c.im.clone());
            for (a, b, sign) in [(i, j, 1), (i + n, j + n, -1)] {
                // ±c·X_k
                let s = Scalar::int(sign);
                out.add_bracket(a, b, k, &(&s * &re)).unwrap();
                out.add_bracket(a, b, k + n, &(&s * &im)).unwrap();
            }
            for (a, b) in [(i, j + n), (i + n, j)] {
                // c·iX_k
                out.add_bracket(a, b, k + n, &re).unwrap();
                out.add_bracket(a, b, k, &-im.clone()).unwrap();
            }
        }
        out
    }

    /// Lines `dim <n>` and `bracket <i> <j> <k> <c>`.
    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\n", self.dim);
        for (i, j, k, c) in self.structure_constants() {
            writeln!(s, "bracket {i} {j} {k} {c}").unwrap();
        }
        s
    }

    /// Parses the `dim`/`bracket` lines of `src`, ignoring other keywords.
    pub fn parse_lines(src: &str, skip_unknown: bool) -> Result<LieAlgebra> {
        let mut g: Option<LieAlgebra> = None;
        for line in lines(src) {
            match line.keyword() {
                "dim" => {
                    line.expect_len(2)?;
                    if g.is_some() {
                        return Err(line.tokens[0].error("duplicate dim line"));
                    }
                    g = Some(LieAlgebra::abelian(line.arg(1, "dimension")?.parse("a dimension")?));
                }
                "bracket" => {
                    line.expect_len(5)?;
                    let g = g.as_mut().ok_or_else(|| line.tokens[0].error("bracket before dim"))?;
                    let idx = |i: usize| -> Result<usize> {
                        let t = line.arg(i, "basis index")?;
                        let v: usize = t.parse("a basis index")?;
                        if v >= g.dim {
                            return Err(t.error(format!("index {v} out of range for dimension {}", g.dim)));
                        }
                        Ok(v)
                    };
                    let (i, j, k) = (idx(1)?, idx(2)?, idx(3)?);
                    if i >= j {
                        return Err(line.tokens[1].error("bracket indices must satisfy i < j"));
                    }
                    let c = line.arg(4, "coefficient")?.scalar()?;
                    g.add_bracket(i, j, k, &c)?;
                }
                other if !skip_unknown => return Err(line.tokens[0].error(format!("unknown keyword `{other}`"))),
                _ => {}
            }
        }
        g.ok_or_else(|| Error::parse(1, 1, "missing dim line"))
    }

    pub fn parse(src: &str) -> Result<LieAlgebra> {
        Self::parse_lines(src, false)
    }
}

/// A subalgebra given by spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    pub span: Subspace,
}

impl Subalgebra {
    pub fn new(g: &LieAlgebra, gens: Vec<SparseVec>) -> Result<Subalgebra> {
        let span = Subspace::span(g.dim(), gens);
        let br = g.bracket_span(&span, &span);
        if !span.contains_subspace(&br) {
            return Err(Error::invalid("the given span is not closed under the bracket"));
        }
        Ok(Subalgebra { span })
    }

    pub fn zero(g: &LieAlgebra) -> Subalgebra {
        Subalgebra { span: Subspace::zero(g.dim()) }
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Rows `gen <c_0> … <c_{n−1}>`.
    pub fn parse(g: &LieAlgebra, src: &str) -> Result<Subalgebra> {
        let mut gens = Vec::new();
        for line in lines(src) {
            if line.keyword() != "gen" {
                return Err(line.tokens[0].error(format!("unknown keyword `{}`", line.keyword())));
            }
            line.expect_len(g.dim() + 1)?;
            let v = (1..=g.dim()).map(|i| line.arg(i, "coordinate")?.scalar()).collect::<Result<Vec<_>>>()?;
            gens.push(vector::from_dense(&v));
        }
        Subalgebra::new(g, gens)
    }

    pub fn to_text(&self) -> String {
        let n = self.span.ambient();
        let mut s = String::new();
        for v in self.span.basis() {
            let dense: Vec<String> = vector::to_dense(v, n).iter().map(|x| x.to_string()).collect();
            writeln!(s, "gen {}", dense.join(" ")).unwrap();
        }
        s
    }
}
