//! Sparse vectors as sorted `(index, value)` lists without stored zeros.

use super::scalar::Scalar;

pub type SparseVec = Vec<(usize, Scalar)>;

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::ZERO; len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn unit(i: usize) -> SparseVec {
    vec![(i, Scalar::ONE)]
}

pub fn get(v: &SparseVec, i: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&i, |(j, _)| *j).ok().map(|k| &v[k].1)
}

pub fn scale(v: &SparseVec, s: &Scalar) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    if s.is_one() {
        return v.clone();
    }
    v.iter().map(|(i, x)| (*i, x * s)).collect()
}

pub fn neg(v: &SparseVec) -> SparseVec {
    v.iter().map(|(i, x)| (*i, -x)).collect()
}

pub fn conj(v: &SparseVec) -> SparseVec {
    v.iter().map(|(i, x)| (*i, x.conj())).collect()
}

/// `a + s·b`
pub fn axpy(a: &SparseVec, s: &Scalar, b: &SparseVec) -> SparseVec {
    if s.is_zero() || b.is_empty() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    axpy(a, &Scalar::ONE, b)
}

pub fn sub(a: &SparseVec, b: &SparseVec) -> SparseVec {
    axpy(a, &Scalar::int(-1), b)
}

/// Bilinear pairing `Σ aᵢ bᵢ` (no conjugation).
pub fn dot(a: &SparseVec, b: &SparseVec) -> Scalar {
    let mut acc = Scalar::ZERO;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Shifts every index by `offset`.
pub fn shift(v: &SparseVec, offset: usize) -> SparseVec {
    v.iter().map(|(i, x)| (i + offset, x.clone())).collect()
}

/// Keeps the entries with index in `[lo, hi)`, re-based to start at 0.
pub fn window(v: &SparseVec, lo: usize, hi: usize) -> SparseVec {
    v.iter().filter(|(i, _)| *i >= lo && *i < hi).map(|(i, x)| (i - lo, x.clone())).collect()
}
