use std::collections::BTreeMap;

use super::{Arrow, Bidegree, DoubleComplex, SimpleComplex};
use crate::exact::{Matrix, Scalar};

impl DoubleComplex {
    /// Blockwise direct sum; coordinates of `self` come first at each bidegree.
    pub fn direct_sum(&self, other: &DoubleComplex) -> DoubleComplex {
        let mut out = DoubleComplex::new();
        for b in self.support().chain(other.support()) {
            out.dims.insert(b, self.dim(b) + other.dim(b));
        }
        for arrow in [Arrow::Del, Arrow::Delbar] {
            let srcs: std::collections::BTreeSet<_> =
                self.maps(arrow).keys().chain(other.maps(arrow).keys()).copied().collect();
            for src in srcs {
                let m = Matrix::block_diag(&[&self.map(arrow, src), &other.map(arrow, src)]);
                out.set_map(arrow, src, m).expect("block shapes add up");
            }
        }
        out
    }

    pub fn direct_sum_all<'a>(parts: impl IntoIterator<Item = &'a DoubleComplex>) -> DoubleComplex {
        parts.into_iter().fold(DoubleComplex::new(), |acc, c| acc.direct_sum(c))
    }

    /// `A ⊗ B` with `A^p ⊗ B^q` at `(p,q)`, `∂ = d_A ⊗ 1` and `∂̄ = (−1)^p 1 ⊗ d_B`.
    /// The basis of `A^p ⊗ B^q` is `a_i ⊗ b_j` at index `i · dim B^q + j`.
    pub fn tensor_product(a: &SimpleComplex, b: &SimpleComplex) -> DoubleComplex {
        let mut out = DoubleComplex::new();
        for (&p, &da) in a.dims() {
            for (&q, &db) in b.dims() {
                out.dims.insert((p, q), da * db);
            }
        }
        for &p in a.dims().keys() {
            for &q in b.dims().keys() {
                let dp = a.d(p);
                if !dp.is_zero() {
                    out.set_del((p, q), dp.kron(&Matrix::identity(b.dim(q)))).unwrap();
                }
                let dq = b.d(q);
                if !dq.is_zero() {
                    let sign = if p.rem_euclid(2) == 0 { Scalar::ONE } else { Scalar::int(-1) };
                    out.set_delbar((p, q), Matrix::identity(a.dim(p)).kron(&dq).scale(&sign)).unwrap();
                }
            }
        }
        out
    }
}

impl DoubleComplex {
    /// Splits into the subcomplexes spanned by connected groups of basis
    /// vectors, where two basis vectors are linked if a differential has a
    /// nonzero entry between them. Every invariant computed in this crate is
    /// additive over this splitting.
    pub fn components(&self) -> Vec<DoubleComplex> {
        let mut offset = BTreeMap::new();
        let mut n = 0;
        for (&b, &d) in self.spaces() {
            offset.insert(b, n);
            n += d;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for arrow in [Arrow::Del, Arrow::Delbar] {
            let (dp, dq) = arrow.step();
            for (&(p, q), m) in self.maps(arrow) {
                let (s0, t0) = (offset[&(p, q)], offset[&(p + dp, q + dq)]);
                for (r, c, _) in m.entries() {
                    let (a, b) = (find(&mut parent, s0 + c), find(&mut parent, t0 + r));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        // root -> bidegree -> local indices, ordered by smallest member
        let mut groups: BTreeMap<usize, BTreeMap<Bidegree, Vec<usize>>> = BTreeMap::new();
        for (&b, &d) in self.spaces() {
            for i in 0..d {
                let root = find(&mut parent, offset[&b] + i);
                groups.entry(root).or_default().entry(b).or_default().push(i);
            }
        }
        groups
            .into_values()
            .map(|members| {
                let mut dc = DoubleComplex::with_spaces(members.iter().map(|(b, v)| (*b, v.len())));
                for arrow in [Arrow::Del, Arrow::Delbar] {
                    let (dp, dq) = arrow.step();
                    for (&(p, q), cols) in &members {
                        if let (Some(m), Some(rows)) = (self.maps(arrow).get(&(p, q)), members.get(&(p + dp, q + dq))) {
                            dc.set_map(arrow, (p, q), m.select(rows, cols)).unwrap();
                        }
                    }
                }
                dc
            })
            .collect()
    }
}
