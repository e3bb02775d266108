//! The exterior algebra `Λ V*` on a basis `x^0, …, x^{n−1}` of `V*`, with
//! monomials stored as bitmasks.

use crate::exact::{Matrix, Scalar, SparseVec};

/// Monomial bases of `Λ^k V*` for `k = 0..=n`.
#[derive(Clone, Debug)]
pub struct Exterior {
    n: usize,
    basis: Vec<Vec<u32>>,
    index: Vec<usize>,
}

/// Sign of `x^a ∧ x^b` relative to the sorted monomial, or `None` if they overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<Scalar> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> j).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps % 2 == 0 { Scalar::ONE } else { Scalar::int(-1) })
}

impl Exterior {
    pub fn new(n: usize) -> Self {
        assert!(n <= 20, "exterior algebras are limited to 20 generators");
        let mut basis = vec![Vec::new(); n + 1];
        let mut index = vec![0; 1 << n];
        for m in 0u32..(1 << n) {
            let k = m.count_ones() as usize;
            index[m as usize] = basis[k].len();
            basis[k].push(m);
        }
        Exterior { n, basis, index }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis.get(k).map_or(0, Vec::len)
    }

    pub fn monomials(&self, k: usize) -> &[u32] {
        self.basis.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn index(&self, m: u32) -> usize {
        self.index[m as usize]
    }

    /// `ω ↦ θ ∧ ω` on `Λ^k` for a covector `θ`.
    pub fn wedge_left(&self, theta: &SparseVec, k: usize) -> Matrix {
        let mut trip = Vec::new();
        for (col, &m) in self.monomials(k).iter().enumerate() {
            for (i, c) in theta {
                if let Some(s) = wedge_sign(1 << i, m) {
                    trip.push((self.index(m | 1 << i), col, &s * c));
                }
            }
        }
        Matrix::from_triplets(self.dim(k + 1), self.dim(k), trip)
    }

    /// Interior product with a vector `v ∈ V` on `Λ^k`.
    pub fn interior(&self, v: &SparseVec, k: usize) -> Matrix {
        if k == 0 {
            return Matrix::zeros(0, self.dim(0));
        }
        let mut trip = Vec::new();
        for (col, &m) in self.monomials(k).iter().enumerate() {
            for (i, c) in v {
                let bit = 1u32 << i;
                if m & bit != 0 {
                    let s = wedge_sign(bit, m & !bit).unwrap();
                    trip.push((self.index(m & !bit), col, &s * c));
                }
            }
        }
        Matrix::from_triplets(self.dim(k - 1), self.dim(k), trip)
    }

    /// `D(x^m)` for the derivation of degree one extending `x^j ↦ images[j] ∈ Λ^2`,
    /// where `images[j]` is indexed by the monomials of degree 2.
    pub fn derive_monomial(&self, images: &[SparseVec], m: u32) -> Vec<(u32, Scalar)> {
        let two = self.monomials(2);
        let mut out = Vec::new();
        let mut rest = m;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let bit = 1u32 << j;
            let before = m & (bit - 1);
            let after = m & !(bit | (bit - 1));
            // (−1)^{|before|} before ∧ D(x^j) ∧ after
            let lead = if before.count_ones() % 2 == 0 { Scalar::ONE } else { Scalar::int(-1) };
            for (t, c) in &images[j] {
                let pair = two[*t];
                let (Some(s1), Some(s2)) = (wedge_sign(before, pair), wedge_sign(before | pair, after)) else {
                    continue;
                };
                out.push((before | pair | after, &(&(&lead * &s1) * &s2) * c));
            }
        }
        out
    }

    /// Matrix of [`Exterior::derive_monomial`] on `Λ^k`.
    pub fn derivation(&self, images: &[SparseVec], k: usize) -> Matrix {
        let mut trip = Vec::new();
        for (col, &m) in self.monomials(k).iter().enumerate() {
            for (t, c) in self.derive_monomial(images, m) {
                trip.push((self.index(t), col, c));
            }
        }
        Matrix::from_triplets(self.dim(k + 1), self.dim(k), trip)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_are_binomial() {
        let e = Exterior::new(5);
        let dims: Vec<usize> = (0..=5).map(|k| e.dim(k)).collect();
        assert_eq!(dims, vec![1, 5, 10, 10, 5, 1]);
    }

    #[test]
    fn signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(Scalar::ONE));
        assert_eq!(wedge_sign(0b10, 0b01), Some(Scalar::int(-1)));
        assert_eq!(wedge_sign(0b100, 0b011), Some(Scalar::ONE));
        assert_eq!(wedge_sign(0b1, 0b1), None);
    }

    #[test]
    fn interior_is_antiderivation_squared_zero() {
        let e = Exterior::new(4);
        let v: SparseVec = vec![(0, Scalar::ONE), (2, Scalar::gauss(1, 1))];
        for k in 2..=4 {
            assert!(e.interior(&v, k - 1).mul(&e.interior(&v, k)).unwrap().is_zero());
        }
        let theta: SparseVec = vec![(1, Scalar::int(3)), (3, Scalar::ONE)];
        for k in 0..3 {
            assert!(e.wedge_left(&theta, k + 1).mul(&e.wedge_left(&theta, k)).unwrap().is_zero());
        }
    }
}
