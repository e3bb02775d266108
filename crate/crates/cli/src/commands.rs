//! The verbs. Each returns a report or a failure carrying its exit code.

use std::collections::BTreeMap;
use std::path::Path;

use ddbar::bicomplex::{self, DoubleComplex, Flavor, Identity, RealStructure};
use ddbar::lie::{ce_complex, invariant_bicomplex, semisimple_e2_model, LieAlgebra};
use ddbar::solv::{build_c, build_splitting, random_solvable, three_part_summands, Piece};
use ddbar::spectral::{classify as run_classify, spectral_sequence, Classification, ClassifyOptions, Filtration, SpectralSequence};
use ddbar::zigzag::{self, decompose as run_decompose, random_page1_complex, random_zigzag_sum, shuffle_basis, Indecomposable};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::input;
use crate::report::{Report, Table};
use crate::{Failure, Outcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filtrations {
    Column,
    Row,
    Both,
}

impl Filtrations {
    fn selected(self) -> Vec<Filtration> {
        match self {
            Filtrations::Column => vec![Filtration::Column],
            Filtrations::Row => vec![Filtration::Row],
            Filtrations::Both => vec![Filtration::Column, Filtration::Row],
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PageOptions {
    pub filtration: Filtrations,
    pub max_page: Option<usize>,
}

fn cohomology_tables(r: &mut Report, dc: &DoubleComplex) {
    for f in Flavor::ALL {
        r.table(Table::grid(f.label(), &dc.cohomology(f).dims));
    }
    r.table(Table::degrees("de_rham", &dc.de_rham().dims));
}

fn sequence_tables(r: &mut Report, seq: &SpectralSequence, max_page: Option<usize>) {
    let tag = seq.filtration.label();
    for page in seq.pages.iter().filter(|p| max_page.is_none_or(|m| p.r <= m)) {
        r.table(Table::grid(format!("E{}_{tag}", page.r), &page.dims));
        r.table(Table::grid(format!("d{}_{tag}", page.r), &page.dr_ranks));
    }
    r.table(Table::grid(format!("Einf_{tag}"), &seq.e_infinity));
    r.fact(["degeneration", tag, &seq.degeneration_page.to_string()]);
}

fn classification_items(r: &mut Report, c: &Classification, pages: PageOptions) {
    for f in Flavor::ALL {
        r.table(Table::grid(f.label(), &c.table(f).dims));
    }
    r.table(Table::degrees("de_rham", &c.de_rham.dims));
    for f in pages.filtration.selected() {
        let seq = match f {
            Filtration::Column => &c.f_sequence,
            Filtration::Row => &c.fbar_sequence,
        };
        sequence_tables(r, seq, pages.max_page);
    }
    r.table(Table::grid("hodge", &c.hodge.dims));
    for (k, p) in &c.hodge.purity {
        r.fact([
            "purity".to_string(),
            k.to_string(),
            format!("pieces={}", p.sum_of_pieces),
            format!("de_rham={}", p.de_rham),
            format!("direct={}", p.direct),
            format!("spans={}", p.spans),
        ]);
    }
    r.verdict(c.verdict.clone());
}

/// Classification with the shape route from a verified decomposition.
fn full_classification(dc: &DoubleComplex, rs: Option<RealStructure>) -> Outcome<Classification> {
    let mut c = run_classify(dc, &ClassifyOptions { real_structure: rs, force_independent: false })?;
    let d = run_decompose(dc)?;
    let shape = d.page1_by_shape();
    if shape != c.verdict.page1_by_definition {
        return Err(Failure::internal(format!(
            "page-1 by shape is {shape} but by definition is {}",
            c.verdict.page1_by_definition
        )));
    }
    c.verdict.page1_by_shape = Some(shape);
    Ok(c)
}

fn identity_token(i: Identity) -> &'static str {
    match i {
        Identity::DelSquared => "del_squared",
        Identity::DelbarSquared => "delbar_squared",
        Identity::Anticommute => "anticommute",
    }
}

fn validity(r: &mut Report, dc: &DoubleComplex) -> Outcome<()> {
    match dc.validate() {
        Ok(()) => {
            r.fact(["valid", "true"]);
            Ok(())
        }
        Err(f) => {
            r.fact(["valid", "false"]);
            r.fact(["failure".to_string(), identity_token(f.identity).to_string(), f.at.0.to_string(), f.at.1.to_string()]);
            Err(Failure::validation(format!("axiom fails: {f}")).with_report(r.clone()))
        }
    }
}

fn load(verb: &str, arg: &str) -> Outcome<(Report, DoubleComplex, Option<RealStructure>)> {
    let src = input::read(arg)?;
    let (dc, rs) = input::bicomplex(&src)?;
    Ok((Report::new(verb, &src.label, &src.bytes), dc, rs))
}

pub fn validate(arg: &str) -> Outcome<Report> {
    let (mut r, dc, rs) = load("validate", arg)?;
    validity(&mut r, &dc)?;
    r.fact(["spaces", &dc.spaces().len().to_string()]);
    r.fact(["total_dim", &dc.total_dim().to_string()]);
    if let Some(rs) = rs {
        r.fact(["real_structure", &rs.check(&dc)?.to_string()]);
    }
    Ok(r)
}

pub fn cohomology(arg: &str) -> Outcome<Report> {
    let (mut r, dc, _) = load("cohomology", arg)?;
    validity(&mut r, &dc)?;
    cohomology_tables(&mut r, &dc);
    Ok(r)
}

pub fn fss(arg: &str, pages: PageOptions) -> Outcome<Report> {
    let (mut r, dc, _) = load("fss", arg)?;
    validity(&mut r, &dc)?;
    for f in pages.filtration.selected() {
        sequence_tables(&mut r, &spectral_sequence(&dc, f)?, pages.max_page);
    }
    Ok(r)
}

pub fn classify(arg: &str, pages: PageOptions) -> Outcome<Report> {
    let (mut r, dc, rs) = load("classify", arg)?;
    validity(&mut r, &dc)?;
    let c = full_classification(&dc, rs)?;
    classification_items(&mut r, &c, pages);
    Ok(r)
}

pub fn decompose(arg: &str) -> Outcome<Report> {
    let (mut r, dc, _) = load("decompose", arg)?;
    validity(&mut r, &dc)?;
    let d = run_decompose(&dc)?;
    for line in d.report_lines() {
        r.fact(line.split(' '));
    }
    r.fact(["page1_shape", &d.page1_by_shape().to_string()]);
    Ok(r)
}

fn lie_facts(r: &mut Report, g: &LieAlgebra) -> Outcome<()> {
    r.fact(["dim", &g.dim().to_string()]);
    if let Some(f) = g.jacobi_failure() {
        r.fact(["jacobi".to_string(), "fails".to_string(), f.0.to_string(), f.1.to_string(), f.2.to_string()]);
        return Err(Failure::validation(format!("Jacobi identity fails on X_{}, X_{}, X_{}", f.0, f.1, f.2)).with_report(r.clone()));
    }
    r.fact(["jacobi", "holds"]);
    r.fact(["abelian", &g.is_abelian().to_string()]);
    r.fact(["nilpotent", &g.is_nilpotent().to_string()]);
    r.fact(["solvable", &g.is_solvable().to_string()]);
    r.fact(["semisimple", &g.is_semisimple().to_string()]);
    Ok(())
}

pub fn lie(arg: &str, sub: Option<&str>, pages: PageOptions) -> Outcome<Report> {
    let src = input::read_lie(arg)?;
    let g = input::lie_algebra(&src)?;
    let mut r = Report::new("lie", &src.label, &src.bytes);
    lie_facts(&mut r, &g)?;
    r.table(Table::degrees("ce", &ce_complex(&g)?.cohomology()));
    if let Some(sub) = sub {
        let (k, ambient) = input::subalgebra(sub, &g)?;
        r.fact(["subalgebra_dim", &k.dim().to_string()]);
        r.table(Table::degrees("relative", &input::relative(&ambient, &k)?));
    }
    let (dc, rs) = invariant_bicomplex(&g)?;
    let c = full_classification(&dc, Some(rs))?;
    classification_items(&mut r, &c, pages);
    Ok(r)
}

fn piece_label(p: Piece) -> &'static str {
    match p {
        Piece::Both => "both",
        Piece::Holomorphic => "holomorphic",
        Piece::Antiholomorphic => "antiholomorphic",
    }
}

pub fn solv(arg: &str, pages: PageOptions) -> Outcome<Report> {
    let src = input::read(arg)?;
    let sd = input::solv(&src)?;
    let mut r = Report::new("solv", &src.label, &src.bytes);
    lie_facts(&mut r, &sd.g)?;
    let (dc, rs) = build_c(&sd)?;
    r.fact(["total_dim", &dc.total_dim().to_string()]);
    for s in three_part_summands(&sd)? {
        let twist: Vec<String> = (0..sd.g.dim())
            .map(|i| s.twist.iter().find(|(j, _)| *j == i).map_or("0".into(), |(_, c)| c.to_string()))
            .collect();
        r.fact(["summand", &twist.join(","), piece_label(s.piece), &s.complex.total_dim().to_string()]);
    }
    let c = full_classification(&dc, Some(rs))?;
    classification_items(&mut r, &c, pages);
    Ok(r)
}

pub fn splitting(arg: &str, pages: PageOptions) -> Outcome<Report> {
    let src = input::read(arg)?;
    let sp = input::splitting(&src)?;
    let mut r = Report::new("splitting", &src.label, &src.bytes);
    r.fact(["abelian", &sp.n_abelian.to_string()]);
    r.fact(["fibre_dim", &sp.nilp.dim().to_string()]);
    let (dc, rs) = build_splitting(&sp)?;
    r.fact(["total_dim", &dc.total_dim().to_string()]);
    let c = full_classification(&dc, Some(rs))?;
    classification_items(&mut r, &c, pages);
    Ok(r)
}

pub fn ssmodel(algebra: &str, betti: &[usize], sub: Option<&str>) -> Outcome<Report> {
    let src = input::read_lie(algebra)?;
    let g = input::lie_algebra(&src)?;
    let betti_text: Vec<String> = betti.iter().map(usize::to_string).collect();
    let mut bytes = src.bytes.clone();
    bytes.extend_from_slice(format!("\nbetti {}\n", betti_text.join(",")).as_bytes());
    let mut r = Report::new("ssmodel", &src.label, &bytes);
    r.fact(["betti", &betti_text.join(",")]);
    if g.jacobi_failure().is_some() || !g.is_semisimple() {
        return Err(Failure::validation("the E_2 model needs a semisimple Lie algebra"));
    }
    let m = semisimple_e2_model(&g, betti)?;
    r.table(Table::grid("E2", &m.dims));
    r.fact(["degeneration", "F", &m.degeneration_page.to_string()]);
    for (p, q) in &m.asymmetric {
        r.fact(["asymmetric".to_string(), p.to_string(), q.to_string()]);
    }
    r.fact(["symmetric", &m.symmetric().to_string()]);
    let sub = sub.or((g == ddbar::lie::catalog::sl2()).then_some("catalog:su2"));
    if let Some(sub) = sub {
        let (k, ambient) = input::subalgebra(sub, &g)?;
        let rel = input::relative(&ambient, &k)?;
        r.table(Table::degrees("relative", &rel));
        let verdict = ddbar::lie::relative_matches_betti(&ambient, &k, betti)?;
        r.fact(["relative_matches_betti", &verdict.to_string()]);
        let ce = ce_complex(&g)?.cohomology();
        if rel == ce && verdict != m.page1() {
            return Err(Failure::internal("relative cohomology criterion disagrees with the symmetry of the E_2 model"));
        }
    }
    r.fact(["page1", &m.page1().to_string()]);
    Ok(r)
}

/// Outcome of one selftest sample.
struct Sample {
    label: String,
    complex: DoubleComplex,
    expected: bool,
}

fn check_sample(s: &Sample, parts: Option<&[Indecomposable]>, rs: Option<RealStructure>) -> Result<bool, String> {
    let c = run_classify(&s.complex, &ClassifyOptions { real_structure: rs, force_independent: true }).map_err(|e| e.to_string())?;
    let d = run_decompose(&s.complex).map_err(|e| e.to_string())?;
    let v = &c.verdict;
    let shape = d.page1_by_shape();
    if v.page1_by_definition != v.page1_by_dims || v.page1_by_dims != shape {
        return Err(format!("routes disagree: definition {}, dims {}, shape {shape}", v.page1_by_definition, v.page1_by_dims));
    }
    if let Some(parts) = parts {
        let mut want: BTreeMap<&Indecomposable, usize> = BTreeMap::new();
        for p in parts {
            *want.entry(p).or_default() += 1;
        }
        let got: BTreeMap<&Indecomposable, usize> = d.parts.iter().map(|(p, m)| (p, *m)).collect();
        if got != want {
            return Err("decomposition does not recover the generating parts".into());
        }
    }
    if shape != s.expected {
        return Err(format!("page-1 is {shape}, expected {}", s.expected));
    }
    Ok(shape)
}

pub fn selftest(seed: u64, count: usize, dump: &Path) -> Outcome<Report> {
    let args = format!("selftest seed={seed} count={count}");
    let mut r = Report::new("selftest", &format!("seed:{seed}"), args.as_bytes());
    r.fact(["seed", &seed.to_string()]);
    r.fact(["count", &count.to_string()]);
    let (mut positives, mut negatives) = (0usize, 0usize);
    let control = count / 2;
    for i in 0..count {
        let s = seed.wrapping_add(i as u64);
        let (sample, parts, rs) = if i == control {
            let (base, _) = random_page1_complex(s, 5);
            let mixed = base.direct_sum(&bicomplex::catalog::wedge((1, 1)));
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let complex = shuffle_basis(&mixed, &mut rng);
            (Sample { label: format!("sample {i} (injected wedge)"), complex, expected: false }, None, None)
        } else if i % 10 == 9 {
            let sd = random_solvable(s, 1 + i % 4);
            let (complex, rs) = build_c(&sd).map_err(Failure::from)?;
            (Sample { label: format!("sample {i} (solvable)"), complex, expected: true }, None, Some(rs))
        } else {
            let (complex, parts) = if i % 2 == 0 { random_page1_complex(s, 8) } else { random_zigzag_sum(s, 8) };
            let expected = zigzag::page1_by_shape(&parts);
            (Sample { label: format!("sample {i}"), complex, expected }, Some(parts), None)
        };
        match check_sample(&sample, parts.as_deref(), rs) {
            Ok(true) => positives += 1,
            Ok(false) => negatives += 1,
            Err(why) => {
                std::fs::write(dump, bicomplex::io::write(&sample.complex))
                    .map_err(|e| Failure::internal(format!("{}: {why}; dump to {} failed: {e}", sample.label, dump.display())))?;
                r.fact(["counterexample".to_string(), i.to_string(), dump.display().to_string()]);
                r.fact(["status", "fail"]);
                return Err(Failure::internal(format!("{}: {why}; complex written to {}", sample.label, dump.display())).with_report(r));
            }
        }
        if i == control {
            r.fact(["negative_control", &i.to_string(), "page1", "false"]);
        }
    }
    r.fact(["page1_true", &positives.to_string()]);
    r.fact(["page1_false", &negatives.to_string()]);
    r.fact(["status", "pass"]);
    Ok(r)
}
