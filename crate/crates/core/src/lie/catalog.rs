//! Named Lie algebras.

use super::{LieAlgebra, Subalgebra};
use crate::exact::{vector, Scalar};

pub const NAMES: [&str; 5] = ["abelian:1", "abelian:2", "abelian:3", "heisenberg3", "sl2"];

pub fn abelian(n: usize) -> LieAlgebra {
    LieAlgebra::abelian(n)
}

/// `[X_0, X_1] = X_2`; the complex Heisenberg algebra of the Iwasawa manifold.
pub fn heisenberg3() -> LieAlgebra {
    let mut g = LieAlgebra::abelian(3);
    g.add_bracket(0, 1, 2, &Scalar::ONE).unwrap();
    g
}

/// Basis `H, E, F` with `[H,E] = 2E`, `[H,F] = −2F`, `[E,F] = H`.
pub fn sl2() -> LieAlgebra {
    let mut g = LieAlgebra::abelian(3);
    g.add_bracket(0, 1, 1, &Scalar::int(2)).unwrap();
    g.add_bracket(0, 2, 2, &Scalar::int(-2)).unwrap();
    g.add_bracket(1, 2, 0, &Scalar::ONE).unwrap();
    g
}

/// `span{iH, E − F, i(E + F)}` inside the realification of [`sl2`], whose
/// basis is `H, E, F, iH, iE, iF`.
pub fn su2_model() -> Subalgebra {
    let g = sl2().realify();
    let one = Scalar::ONE;
    let gens = vec![
        vector::unit(3),
        vec![(1, one.clone()), (2, Scalar::int(-1))],
        vec![(4, one.clone()), (5, one)],
    ];
    Subalgebra::new(&g, gens).expect("su(2) is closed under the bracket")
}

/// `abelian:<n>`, `heisenberg3` or `sl2`.
pub fn by_name(name: &str) -> Option<LieAlgebra> {
    match name {
        "heisenberg3" => Some(heisenberg3()),
        "sl2" => Some(sl2()),
        _ => name.strip_prefix("abelian:")?.parse().ok().filter(|&n: &usize| n <= 12).map(abelian),
    }
}
