//! Seeded generators of complexes with a known decomposition.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::shape::{model, Indecomposable};
use crate::bicomplex::{Arrow, DoubleComplex};
use crate::exact::{Matrix, Scalar};

const COEFFS: [(i64, i64); 8] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (2, 0)];

/// `count` random parts with nodes in `[0, span]²`, zigzags up to five long.
pub fn random_shapes(rng: &mut impl Rng, count: usize, span: i64) -> Vec<Indecomposable> {
    (0..count)
        .map(|_| {
            if rng.gen_bool(0.25) {
                return Indecomposable::Square((rng.gen_range(0..span), rng.gen_range(0..span)));
            }
            let len = rng.gen_range(1..=5usize);
            let first = if rng.gen_bool(0.5) { Arrow::Del } else { Arrow::Delbar };
            let dels = match first {
                Arrow::Del => len / 2,
                Arrow::Delbar => (len - 1) / 2,
            } as i64;
            let delbars = len as i64 - 1 - dels;
            let p = rng.gen_range(0..=(span - dels).max(0));
            let q = rng.gen_range(delbars.min(span)..=span);
            Indecomposable::zigzag((p, q), len, first)
        })
        .collect()
}

/// Unimodular Gaussian-integer matrix built from elementary row operations.
fn unimodular(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut u = Matrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = *COEFFS.choose(rng).expect("nonempty");
        let c = Scalar::gauss(a, b);
        for (col, x) in u.row(j).clone() {
            u.add_to(i, col, &(&c * &x));
        }
    }
    u
}

/// Conjugates both differentials by a random invertible change of basis at
/// every bidegree.
pub fn shuffle_basis(dc: &DoubleComplex, rng: &mut impl Rng) -> DoubleComplex {
    let mut out = DoubleComplex::with_spaces(dc.spaces().clone());
    let us: std::collections::BTreeMap<_, _> = dc.spaces().iter().map(|(b, n)| (*b, unimodular(rng, *n))).collect();
    for arrow in [Arrow::Del, Arrow::Delbar] {
        for (b, m) in dc.maps(arrow) {
            let (dp, dq) = arrow.step();
            let t = (b.0 + dp, b.1 + dq);
            let inv = us[b].inverse().expect("unimodular");
            let conj = us[&t].mul(m).and_then(|x| x.mul(&inv)).expect("shapes agree");
            out.set_map(arrow, *b, conj).expect("shapes agree");
        }
    }
    out
}

/// Random sum of `count` parts in a scrambled basis, with the parts used.
pub fn random_zigzag_sum(seed: u64, count: usize) -> (DoubleComplex, Vec<Indecomposable>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts = random_shapes(&mut rng, count, 4);
    let dc = shuffle_basis(&model(&parts), &mut rng);
    (dc, parts)
}

/// Like [`random_zigzag_sum`] but using only squares, dots and lines.
pub fn random_page1_complex(seed: u64, count: usize) -> (DoubleComplex, Vec<Indecomposable>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts: Vec<Indecomposable> = std::iter::repeat_with(|| random_shapes(&mut rng, 1, 4).remove(0))
        .filter(Indecomposable::is_page1_shape)
        .take(count)
        .collect();
    let dc = shuffle_basis(&model(&parts), &mut rng);
    (dc, parts)
}
