//! Small named complexes.

use super::{Bidegree, DoubleComplex};
use crate::exact::Matrix;

fn one() -> Matrix {
    Matrix::from_ints(&[&[1]])
}

/// One-dimensional space at `at`, no differentials.
pub fn dot(at: Bidegree) -> DoubleComplex {
    DoubleComplex::with_spaces([(at, 1)])
}

/// `a → ∂a` starting at `at`.
pub fn del_line(at: Bidegree) -> DoubleComplex {
    let (p, q) = at;
    let mut dc = DoubleComplex::with_spaces([(at, 1), ((p + 1, q), 1)]);
    dc.set_del(at, one()).unwrap();
    dc
}

/// `a → ∂̄a` starting at `at`.
pub fn delbar_line(at: Bidegree) -> DoubleComplex {
    let (p, q) = at;
    let mut dc = DoubleComplex::with_spaces([(at, 1), ((p, q + 1), 1)]);
    dc.set_delbar(at, one()).unwrap();
    dc
}

/// `{a, ∂a, ∂̄a, ∂∂̄a}` with generator at `at` and `∂̄(∂a) = −∂∂̄a`.
pub fn square(at: Bidegree) -> DoubleComplex {
    let (p, q) = at;
    let mut dc = DoubleComplex::with_spaces([(at, 1), ((p + 1, q), 1), ((p, q + 1), 1), ((p + 1, q + 1), 1)]);
    dc.set_del(at, one()).unwrap();
    dc.set_delbar(at, one()).unwrap();
    dc.set_del((p, q + 1), one()).unwrap();
    dc.set_delbar((p + 1, q), Matrix::from_ints(&[&[-1]])).unwrap();
    dc
}

/// Generator `a` at `at` with `∂a ≠ 0`, `∂̄a ≠ 0` and `∂∂̄a = 0`.
pub fn wedge(at: Bidegree) -> DoubleComplex {
    let (p, q) = at;
    let mut dc = DoubleComplex::with_spaces([(at, 1), ((p + 1, q), 1), ((p, q + 1), 1)]);
    dc.set_del(at, one()).unwrap();
    dc.set_delbar(at, one()).unwrap();
    dc
}

/// Catalog lookup for the micro complexes, all placed at `(0,0)`.
pub fn by_name(name: &str) -> Option<DoubleComplex> {
    Some(match name {
        "dot" => dot((0, 0)),
        "line" | "del-line" => del_line((0, 0)),
        "delbar-line" => delbar_line((0, 0)),
        "square" => square((0, 0)),
        "wedge" => wedge((0, 0)),
        _ => return None,
    })
}

pub const NAMES: [&str; 5] = ["dot", "line", "delbar-line", "square", "wedge"];
