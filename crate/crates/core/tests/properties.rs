mod common;

use std::collections::BTreeMap;

use common::{full_classify, page1_all_routes, random_simple_complex, rng, soundness};
use ddbar::bicomplex::{catalog, DoubleComplex, Flavor};
use ddbar::lie::invariant_bicomplex;
use ddbar::solv::{build_c, random_solvable, FlagSpec};
use ddbar::zigzag::{decompose, model, random_page1_complex, random_zigzag_sum, shuffle_basis};
use proptest::prelude::*;

fn tables(dc: &DoubleComplex) -> BTreeMap<Flavor, BTreeMap<(i64, i64), usize>> {
    Flavor::ALL.iter().map(|&f| (f, dc.cohomology(f).nonzero())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_and_convergence(seed in any::<u64>()) {
        let (dc, _) = random_zigzag_sum(seed, 6);
        let c = full_classify(&dc, None).unwrap();
        prop_assert_eq!(soundness(&dc, &c, false), Ok(()));
    }

    #[test]
    fn tables_add_under_direct_sum(a in any::<u64>(), b in any::<u64>()) {
        let (x, _) = random_zigzag_sum(a, 4);
        let (y, _) = random_zigzag_sum(b, 4);
        let sum = tables(&x.direct_sum(&y));
        let (tx, ty) = (tables(&x), tables(&y));
        for f in Flavor::ALL {
            let mut want = tx[&f].clone();
            for (k, d) in &ty[&f] {
                *want.entry(*k).or_default() += d;
            }
            prop_assert_eq!(&sum[&f], &want);
        }
        let dr = |d: &DoubleComplex| d.de_rham().dims;
        let s = dr(&x.direct_sum(&y));
        for k in s.keys() {
            let get = |m: &BTreeMap<i64, usize>| m.get(k).copied().unwrap_or(0);
            prop_assert_eq!(get(&s), get(&dr(&x)) + get(&dr(&y)));
        }
    }

    #[test]
    fn pages_shrink(seed in any::<u64>()) {
        let (dc, _) = random_zigzag_sum(seed, 6);
        let c = full_classify(&dc, None).unwrap();
        for seq in [&c.f_sequence, &c.fbar_sequence] {
            for w in seq.pages.windows(2) {
                for (b, d) in &w[1].dims {
                    prop_assert!(*d <= w[0].get(*b));
                }
            }
        }
    }

    #[test]
    fn decomposition_round_trip(seed in any::<u64>()) {
        let (dc, parts) = random_zigzag_sum(seed, 10);
        let d = decompose(&dc).unwrap();
        let mut want: BTreeMap<_, usize> = BTreeMap::new();
        for p in &parts {
            *want.entry(p.clone()).or_default() += 1;
        }
        let got: BTreeMap<_, usize> = d.parts.iter().cloned().collect();
        prop_assert_eq!(got, want);
        prop_assert_eq!(tables(&model(&d.ordered)), tables(&dc));
    }

    #[test]
    fn wedge_breaks_page1(seed in any::<u64>()) {
        let (base, _) = random_page1_complex(seed, 5);
        let c = full_classify(&base, None).unwrap();
        prop_assert!(page1_all_routes(&c).unwrap());
        let mixed = shuffle_basis(&base.direct_sum(&catalog::wedge((2, 1))), &mut rng(seed));
        let c = full_classify(&mixed, None).unwrap();
        prop_assert!(!page1_all_routes(&c).unwrap());
    }

    #[test]
    fn ddbar_implies_page1(seed in any::<u64>()) {
        let (dc, _) = random_zigzag_sum(seed, 3);
        let v = full_classify(&dc, None).unwrap().verdict;
        prop_assert!(!v.ddbar_lemma || v.page1_by_definition);
    }

    #[test]
    fn tensor_dolbeault_formula(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, _) = random_simple_complex(&mut r);
        let (b, hb) = random_simple_complex(&mut r);
        let dc = DoubleComplex::tensor_product(&a, &b);
        prop_assert_eq!(dc.ensure_valid(), Ok(()));
        let h = dc.dolbeault();
        for (&p, &da) in a.dims() {
            for &q in b.dims().keys() {
                prop_assert_eq!(h.get((p, q)), da * hb.get(&q).copied().unwrap_or(0));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn invariant_bicomplexes_are_page1_and_symmetric(seed in any::<u64>(), n in 1usize..=4) {
        let g = random_solvable(seed, n).g;
        let (dc, rs) = invariant_bicomplex(&g).unwrap();
        let c = full_classify(&dc, Some(rs)).unwrap();
        prop_assert!(page1_all_routes(&c).unwrap());
        prop_assert_eq!(soundness(&dc, &c, true), Ok(()));
        prop_assert_eq!(c.verdict.degeneration_page_f == 1, g.is_abelian());
        let e2 = c.f_sequence.page(2).map(|p| p.dims.clone()).unwrap_or_default();
        for ((p, q), d) in &e2 {
            prop_assert_eq!(*d, e2.get(&(*q, *p)).copied().unwrap_or(0));
        }
    }

    #[test]
    fn enlarging_flags_never_shrinks_dolbeault(seed in any::<u64>(), n in 2usize..=4) {
        let sd = random_solvable(seed, n);
        let mut narrow = sd.clone();
        narrow.flags = FlagSpec::Identically;
        let mut wide = sd.clone();
        wide.flags = FlagSpec::All;
        let h = |s: &ddbar::solv::SolvData| build_c(s).unwrap().0.dolbeault();
        let (a, b, c) = (h(&narrow), h(&sd), h(&wide));
        for (at, d) in &a.dims {
            prop_assert!(*d <= b.get(*at));
        }
        for (at, d) in &b.dims {
            prop_assert!(*d <= c.get(*at));
        }
    }

    #[test]
    fn built_complexes_are_page1(seed in any::<u64>(), n in 1usize..=4) {
        let sd = random_solvable(seed, n);
        let (dc, rs) = build_c(&sd).unwrap();
        let c = full_classify(&dc, Some(rs)).unwrap();
        prop_assert!(page1_all_routes(&c).unwrap());
        prop_assert_eq!(soundness(&dc, &c, true), Ok(()));
    }
}
