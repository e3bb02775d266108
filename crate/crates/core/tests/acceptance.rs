//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{full_classify, page1_all_routes, random_simple_complex, rng, soundness};
use ddbar::bicomplex::catalog::{del_line, dot, square, wedge};
use ddbar::bicomplex::{Bidegree, DoubleComplex, Flavor, RealStructure};
use ddbar::lie::{catalog, ce_complex, invariant_bicomplex, relative_ce_cohomology, semisimple_e2_model, relative_matches_betti};
use ddbar::solv::{build_c, build_splitting, nakamura_preset, random_solvable, splitting_preset, NakamuraCase};
use ddbar::spectral::page1_by_dims;
use ddbar::zigzag::{decompose, random_page1_complex, random_zigzag_sum, Indecomposable};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table(entries: &[(Bidegree, usize)]) -> BTreeMap<Bidegree, usize> {
    entries.iter().copied().collect()
}

/// Every complex built by the suite, for the soundness criterion.
#[derive(Default)]
struct Corpus(Vec<(String, DoubleComplex, Option<RealStructure>)>);

impl Corpus {
    fn add(&mut self, label: impl Into<String>, dc: &DoubleComplex, rs: Option<&RealStructure>) {
        self.0.push((label.into(), dc.clone(), rs.cloned()));
    }
}

fn micro_complexes(corpus: &mut Corpus) -> Outcome {
    struct Expect {
        name: &'static str,
        dc: DoubleComplex,
        dolbeault: BTreeMap<Bidegree, usize>,
        del: BTreeMap<Bidegree, usize>,
        bott_chern: BTreeMap<Bidegree, usize>,
        aeppli: BTreeMap<Bidegree, usize>,
        de_rham: BTreeMap<i64, usize>,
        criterion_holds: bool,
    }
    let cases = [
        Expect {
            name: "dot",
            dc: dot((1, 1)),
            dolbeault: table(&[((1, 1), 1)]),
            del: table(&[((1, 1), 1)]),
            bott_chern: table(&[((1, 1), 1)]),
            aeppli: table(&[((1, 1), 1)]),
            de_rham: [(2, 1)].into_iter().collect(),
            criterion_holds: true,
        },
        Expect {
            name: "line",
            dc: del_line((0, 0)),
            dolbeault: table(&[((0, 0), 1), ((1, 0), 1)]),
            del: table(&[]),
            bott_chern: table(&[((1, 0), 1)]),
            aeppli: table(&[((0, 0), 1)]),
            de_rham: BTreeMap::new(),
            criterion_holds: true,
        },
        Expect {
            name: "square",
            dc: square((0, 0)),
            dolbeault: table(&[]),
            del: table(&[]),
            bott_chern: table(&[]),
            aeppli: table(&[]),
            de_rham: BTreeMap::new(),
            criterion_holds: true,
        },
        Expect {
            name: "wedge",
            dc: wedge((0, 0)),
            dolbeault: table(&[((1, 0), 1)]),
            del: table(&[((0, 1), 1)]),
            bott_chern: table(&[((1, 0), 1), ((0, 1), 1)]),
            aeppli: table(&[((0, 0), 1)]),
            de_rham: [(1, 1)].into_iter().collect(),
            criterion_holds: false,
        },
    ];
    for e in &cases {
        corpus.add(e.name, &e.dc, None);
        let got = |f: Flavor| e.dc.cohomology(f).nonzero();
        for (f, want) in [
            (Flavor::Dolbeault, &e.dolbeault),
            (Flavor::Del, &e.del),
            (Flavor::BottChern, &e.bott_chern),
            (Flavor::Aeppli, &e.aeppli),
        ] {
            ensure(got(f) == *want, || format!("{}: {f} table {:?}, expected {want:?}", e.name, got(f)))?;
        }
        let dr: BTreeMap<i64, usize> = e.dc.de_rham().dims.into_iter().filter(|(_, d)| *d > 0).collect();
        ensure(dr == e.de_rham, || format!("{}: de Rham {dr:?}", e.name))?;

        let tables: BTreeMap<Flavor, _> = Flavor::ALL.iter().map(|&f| (f, e.dc.cohomology(f))).collect();
        let sum = |f: Flavor, r: i64| tables[&f].degree_sum(r);
        for r in -1..=3 {
            let holds = sum(Flavor::Aeppli, r) + sum(Flavor::BottChern, r) == sum(Flavor::Dolbeault, r) + sum(Flavor::Del, r);
            let want = e.criterion_holds || r != 0;
            ensure(holds == want, || format!("{}: criterion at r = {r} is {holds}", e.name))?;
        }
        ensure(page1_by_dims(&tables, -1..=3) == e.criterion_holds, || format!("{}: page1_by_dims", e.name))?;
    }
    let w = wedge((0, 0));
    let tables: BTreeMap<Flavor, _> = Flavor::ALL.iter().map(|&f| (f, w.cohomology(f))).collect();
    let s = |f: Flavor| tables[&f].degree_sum(0);
    let (lhs, rhs) = (s(Flavor::Aeppli) + s(Flavor::BottChern), s(Flavor::Dolbeault) + s(Flavor::Del));
    ensure((lhs, rhs) == (1, 0), || format!("wedge at r = 0: {lhs} vs {rhs}"))?;

    let c = full_classify(&w, None)?;
    ensure(c.hodge.get((1, 0)) == 1 && c.hodge.get((0, 1)) == 1, || "wedge Hodge pieces".into())?;
    ensure(c.verdict.pure.get(&1) == Some(&false), || "wedge should be impure in degree 1".into())?;
    ensure(!page1_all_routes(&c)?, || "wedge classified page-1".into())?;

    let mix = dot((0, 0)).direct_sum(&del_line((0, 0))).direct_sum(&square((0, 0)));
    corpus.add("dot+line+square", &mix, None);
    let c = full_classify(&mix, None)?;
    ensure(page1_all_routes(&c)? && !c.verdict.ddbar_lemma, || "dot+line+square verdict".into())?;
    let c = full_classify(&square((0, 0)), None)?;
    ensure(page1_all_routes(&c)? && c.verdict.ddbar_lemma, || "square verdict".into())?;
    Ok(format!("h_A + h_BC = 1 vs h_delbar + h_del = 0 for the wedge at r = 0"))
}

fn route_agreement(corpus: &mut Corpus) -> Outcome {
    let start = Instant::now();
    let samples = 200;
    let mut negatives = 0;
    for seed in 0..samples {
        let (dc, parts) = if seed % 2 == 0 { random_page1_complex(seed, 8) } else { random_zigzag_sum(seed, 8) };
        let c = full_classify(&dc, None).map_err(|e| format!("seed {seed}: {e}"))?;
        let p1 = page1_all_routes(&c).map_err(|e| format!("seed {seed}: {e}"))?;
        let d = decompose(&dc).map_err(|e| format!("seed {seed}: {e}"))?;
        let mut want: BTreeMap<Indecomposable, usize> = BTreeMap::new();
        for p in parts {
            *want.entry(p).or_default() += 1;
        }
        let got: BTreeMap<Indecomposable, usize> = d.parts.iter().cloned().collect();
        ensure(got == want, || format!("seed {seed}: recovered {got:?}, generated {want:?}"))?;
        negatives += usize::from(!p1);
        if seed % 20 == 0 {
            corpus.add(format!("zigzag sum {seed}"), &dc, None);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1} s"))?;
    Ok(format!("{samples} samples, {negatives} non-page-1, {secs:.1} s"))
}

fn tensor_products(corpus: &mut Corpus) -> Outcome {
    let mut r = rng(0x7e50);
    let samples = 100;
    for i in 0..samples {
        let (a, _) = random_simple_complex(&mut r);
        let (b, hb) = random_simple_complex(&mut r);
        let dc = DoubleComplex::tensor_product(&a, &b);
        let c = full_classify(&dc, None).map_err(|e| format!("sample {i}: {e}"))?;
        ensure(page1_all_routes(&c)?, || format!("sample {i}: not page-1"))?;
        for (&p, &da) in a.dims() {
            for q in b.dims().keys() {
                let want = da * hb.get(q).copied().unwrap_or(0);
                let got = c.table(Flavor::Dolbeault).get((p, *q));
                ensure(got == want, || format!("sample {i}: h^({p},{q}) = {got}, expected {want}"))?;
            }
        }
        if i % 10 == 0 {
            corpus.add(format!("tensor {i}"), &dc, None);
        }
    }
    Ok(format!("{samples} tensor products"))
}

fn nilpotent_examples(corpus: &mut Corpus) -> Outcome {
    for n in 1..=3 {
        let (dc, rs) = invariant_bicomplex(&catalog::abelian(n)).map_err(|e| e.to_string())?;
        corpus.add(format!("abelian {n}"), &dc, Some(&rs));
        let c = full_classify(&dc, Some(rs))?;
        let v = &c.verdict;
        ensure(v.degeneration_page_f == 1 && v.degeneration_page_fbar == 1 && v.ddbar_lemma, || {
            format!("abelian {n}: {:?}", v.to_lines())
        })?;
    }
    let (dc, rs) = invariant_bicomplex(&catalog::heisenberg3()).map_err(|e| e.to_string())?;
    corpus.add("heisenberg3", &dc, Some(&rs));
    let c = full_classify(&dc, Some(rs))?;
    let v = &c.verdict;
    ensure(v.degeneration_page_f == 2 && v.degeneration_page_fbar == 2, || format!("heisenberg3 pages {:?}", v.to_lines()))?;
    ensure(page1_all_routes(&c)? && !v.ddbar_lemma, || "heisenberg3 verdict".into())?;
    let e1 = c.f_sequence.page(1).ok_or("no E_1")?.degree_sum(1);
    let b1 = c.de_rham.get(1);
    ensure((e1, b1) == (5, 4), || format!("sum E_1 = {e1}, b_1 = {b1}"))?;
    Ok(format!("heisenberg3: sum E_1 = {e1}, b_1 = {b1}"))
}

fn solvable_builds(corpus: &mut Corpus) -> Outcome {
    let mut h01 = Vec::new();
    for case in [NakamuraCase::Identically, NakamuraCase::Real] {
        let (dc, rs) = build_c(&nakamura_preset(case)).map_err(|e| e.to_string())?;
        corpus.add(format!("nakamura {case:?}"), &dc, Some(&rs));
        let c = full_classify(&dc, Some(rs))?;
        ensure(page1_all_routes(&c)?, || format!("nakamura {case:?} not page-1"))?;
        ensure(c.verdict.pure.values().all(|b| *b), || format!("nakamura {case:?} impure"))?;
        h01.push(c.table(Flavor::Dolbeault).get((0, 1)));
    }
    ensure(h01 == [1, 3], || format!("nakamura h^(0,1) = {h01:?}"))?;
    for real in [true, false] {
        let (dc, rs) = build_splitting(&splitting_preset(real)).map_err(|e| e.to_string())?;
        corpus.add(format!("splitting real={real}"), &dc, Some(&rs));
        let c = full_classify(&dc, Some(rs))?;
        ensure(page1_all_routes(&c)?, || format!("splitting real={real} not page-1"))?;
    }
    let samples = 60u64;
    for seed in 0..samples {
        let n = 1 + (seed % 6) as usize;
        let sd = random_solvable(seed, n);
        let (dc, rs) = build_c(&sd).map_err(|e| format!("seed {seed}: {e}"))?;
        let c = full_classify(&dc, Some(rs.clone())).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(page1_all_routes(&c)?, || format!("random solvable seed {seed} (n = {n}) not page-1"))?;
        if seed % 6 == 5 {
            corpus.add(format!("solvable {seed}"), &dc, Some(&rs));
        }
    }
    Ok(format!("h^(0,1) = {} vs {}, {samples} random data sets", h01[0], h01[1]))
}

fn semisimple_model(_: &mut Corpus) -> Outcome {
    let g = catalog::sl2();
    let real = g.realify();
    let k = catalog::su2_model();
    let ce: Vec<usize> = (0..=3).map(|p| ce_complex(&g).unwrap().cohomology_dim(p)).collect();
    ensure(ce == [1, 0, 0, 1], || format!("H(CE(sl2)) = {ce:?}"))?;
    let rel = relative_ce_cohomology(&real, &k).map_err(|e| e.to_string())?;
    let rel: Vec<usize> = (0..=3).map(|j| rel.get(&j).copied().unwrap_or(0)).collect();
    ensure(rel == ce, || format!("H(sl2; su2) = {rel:?}"))?;

    let m = semisimple_e2_model(&g, &[1, 0, 0, 1]).map_err(|e| e.to_string())?;
    ensure(m.symmetric() && m.page1(), || "E_2 model for (1,0,0,1) is asymmetric".into())?;
    ensure(relative_matches_betti(&real, &k, &[1, 0, 0, 1]).map_err(|e| e.to_string())?, || "verdict false for (1,0,0,1)".into())?;
    for r in 1..=3 {
        let betti = [1, r, r, 1];
        let m = semisimple_e2_model(&g, &betti).map_err(|e| e.to_string())?;
        let mut want = Vec::new();
        for p in 0..4i64 {
            for q in p + 1..4i64 {
                if ce[p as usize] * betti[q as usize] != ce[q as usize] * betti[p as usize] {
                    want.push((p, q));
                }
            }
        }
        ensure(m.asymmetric == want, || format!("r = {r}: asymmetric {:?}, expected {want:?}", m.asymmetric))?;
        ensure(!m.page1(), || format!("r = {r}: model claims page-1"))?;
        ensure(!relative_matches_betti(&real, &k, &betti).map_err(|e| e.to_string())?, || format!("r = {r}: verdict true"))?;
    }
    Ok("sl2: H(g;k) = (1,0,0,1), obstruction at (0,1) (0,2) (1,3) (2,3)".into())
}

fn e1_iff_abelian(corpus: &mut Corpus) -> Outcome {
    let mut algebras: Vec<(String, ddbar::lie::LieAlgebra)> = vec![
        ("abelian:1".into(), catalog::abelian(1)),
        ("abelian:2".into(), catalog::abelian(2)),
        ("abelian:3".into(), catalog::abelian(3)),
        ("heisenberg3".into(), catalog::heisenberg3()),
        ("sl2".into(), catalog::sl2()),
    ];
    for seed in 0..30u64 {
        let n = 1 + (seed % 5) as usize;
        algebras.push((format!("solvable seed {seed}"), random_solvable(seed + 1000, n).g));
    }
    let (mut ab, mut non) = (0, 0);
    for (name, g) in &algebras {
        let (dc, rs) = invariant_bicomplex(g).map_err(|e| format!("{name}: {e}"))?;
        let c = full_classify(&dc, Some(rs.clone()))?;
        let e1 = c.verdict.degeneration_page_f == 1;
        ensure(e1 == g.is_abelian(), || format!("{name}: E_1 degeneration {e1}, abelian {}", g.is_abelian()))?;
        if g.is_abelian() {
            ab += 1;
        } else {
            non += 1;
        }
        if name == "sl2" || name.ends_with('7') {
            corpus.add(format!("invariant {name}"), &dc, Some(&rs));
        }
    }
    Ok(format!("{ab} abelian, {non} non-abelian"))
}

fn engine_soundness(corpus: &mut Corpus) -> Outcome {
    for (label, dc, rs) in &corpus.0 {
        let c = full_classify(dc, rs.clone()).map_err(|e| format!("{label}: {e}"))?;
        soundness(dc, &c, rs.is_some()).map_err(|e| format!("{label}: {e}"))?;
    }
    Ok(format!("{} complexes", corpus.0.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Corpus) -> Outcome); 8] = [
        ("1 micro complexes", micro_complexes),
        ("2 route agreement on random zigzag sums", route_agreement),
        ("3 tensor products of simple complexes", tensor_products),
        ("4 nilpotent invariant bicomplexes", nilpotent_examples),
        ("5 solvable builds are page-1", solvable_builds),
        ("6 semisimple E_2 model", semisimple_model),
        ("7 E_1 degeneration iff abelian", e1_iff_abelian),
        ("8 engine soundness", engine_soundness),
    ];
    let mut corpus = Corpus::default();
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut corpus)))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS criterion {name} ({note}; {secs:.2} s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
