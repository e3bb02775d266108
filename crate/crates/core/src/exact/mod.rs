//! Exact linear algebra over the Gaussian rationals.

pub mod matrix;
pub mod rational;
pub mod scalar;
pub mod subspace;
pub mod vector;

pub use matrix::{image, kernel, rref, Echelon, Matrix};
pub use rational::Rational;
pub use scalar::Scalar;
pub use subspace::Subspace;
pub use vector::SparseVec;

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn scalar() -> impl Strategy<Value = Scalar> {
        (-3i64..=3, -2i64..=2, prop_oneof![Just(1i64), Just(2), Just(3)])
            .prop_map(|(a, b, d)| Scalar::new(Rational::new(a, d), Rational::from_int(b)))
    }

    fn sparse_scalar() -> impl Strategy<Value = Scalar> {
        prop_oneof![3 => Just(Scalar::ZERO), 2 => scalar()]
    }

    fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(sparse_scalar(), c), r).prop_map(Matrix::from_dense)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(m in matrix(6)) {
            prop_assert_eq!(m.rank() + kernel(&m).dim(), m.cols());
            prop_assert_eq!(image(&m).dim(), m.rank());
            prop_assert_eq!(m.transpose().rank(), m.rank());
        }

        #[test]
        fn rref_is_idempotent(m in matrix(6)) {
            let (r, p) = rref(&m);
            let (rr, pp) = rref(&r);
            prop_assert_eq!(r, rr);
            prop_assert_eq!(p, pp);
        }

        #[test]
        fn kernel_is_annihilated(m in matrix(6)) {
            for v in kernel(&m).basis() {
                prop_assert!(m.apply(v).is_empty());
            }
        }

        #[test]
        fn dimension_formula(a in matrix(5), b in matrix(5)) {
            let n = a.cols().min(b.cols());
            let u = Subspace::span(n, a.row_vectors().iter().map(|r| vector::window(r, 0, n)).collect());
            let w = Subspace::span(n, b.row_vectors().iter().map(|r| vector::window(r, 0, n)).collect());
            let s = u.sum(&w).unwrap();
            let i = u.intersect(&w).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
        }

        #[test]
        fn canonical_under_change_of_spanning_set(m in matrix(5), k in scalar()) {
            let n = m.cols();
            let rows = m.row_vectors().to_vec();
            let a = Subspace::span(n, rows.clone());
            let mut mixed = rows.clone();
            if rows.len() >= 2 {
                mixed[0] = vector::axpy(&rows[0], &k, &rows[1]);
                mixed.reverse();
                mixed.push(vector::add(&rows[0], &rows[1]));
            }
            prop_assert_eq!(a, Subspace::span(n, mixed));
        }

        #[test]
        fn preimage_characterisation(m in matrix(5), t in matrix(5)) {
            let target = Subspace::span(m.rows(), t.row_vectors().iter().map(|r| vector::window(r, 0, m.rows())).collect());
            let pre = target.preimage(&m).unwrap();
            for v in pre.basis() {
                prop_assert!(target.contains(&m.apply(v)));
            }
            // dim pre = dim ker m + dim (im m ∩ target)
            let meet = image(&m).intersect(&target).unwrap();
            prop_assert_eq!(pre.dim(), kernel(&m).dim() + meet.dim());
        }
    }
}
