//! Resolving a path or `catalog:` name into a typed input plus the bytes that
//! identify it in the provenance hash.

use std::fs;

use ddbar::bicomplex::{self, DoubleComplex, RealStructure};
use ddbar::lie::{self, catalog as lie_catalog, invariant_bicomplex, LieAlgebra, Subalgebra};
use ddbar::solv::{build_c, build_splitting, nakamura_preset, splitting_preset, NakamuraCase, SolvData, SplittingData};

use crate::{Failure, Outcome};

pub struct Source {
    pub label: String,
    pub bytes: Vec<u8>,
    /// File contents; `None` for catalog names.
    pub text: Option<String>,
}

fn catalog_name(arg: &str) -> Option<&str> {
    arg.strip_prefix("catalog:")
}

pub fn read(arg: &str) -> Outcome<Source> {
    if catalog_name(arg).is_some() {
        return Ok(Source { label: arg.into(), bytes: arg.as_bytes().to_vec(), text: None });
    }
    let text = fs::read_to_string(arg).map_err(|e| Failure::parse(format!("cannot read `{arg}`: {e}")))?;
    Ok(Source { label: arg.into(), bytes: text.clone().into_bytes(), text: Some(text) })
}

fn unknown(arg: &str, kind: &str, names: &[String]) -> Failure {
    Failure::parse(format!("unknown {kind} catalog entry `{arg}`; known: {}", names.join(", ")))
}

pub fn bicomplex_names() -> Vec<String> {
    let mut v: Vec<String> = bicomplex::catalog::NAMES.iter().map(|n| format!("catalog:{n}")).collect();
    v.extend(lie_catalog::NAMES.iter().map(|n| format!("catalog:{n}-invariant")));
    v.extend(["nakamura-identically", "nakamura-real", "splitting-real", "splitting-identically"].map(|n| format!("catalog:{n}")));
    v
}

/// A bicomplex file, a micro complex, or a built complex with its real structure.
pub fn bicomplex(src: &Source) -> Outcome<(DoubleComplex, Option<RealStructure>)> {
    let Some(name) = catalog_name(&src.label) else {
        return Ok((bicomplex::io::parse(src.text.as_deref().unwrap_or(""))?, None));
    };
    if let Some(dc) = bicomplex::catalog::by_name(name) {
        return Ok((dc, None));
    }
    if let Some(alg) = name.strip_suffix("-invariant").and_then(lie_catalog::by_name) {
        let (dc, rs) = invariant_bicomplex(&alg)?;
        return Ok((dc, Some(rs)));
    }
    if name.starts_with("nakamura-") {
        let (dc, rs) = build_c(&solv(src)?)?;
        return Ok((dc, Some(rs)));
    }
    if name.starts_with("splitting-") {
        let (dc, rs) = build_splitting(&splitting(src)?)?;
        return Ok((dc, Some(rs)));
    }
    Err(unknown(&src.label, "bicomplex", &bicomplex_names()))
}

pub fn lie_algebra(src: &Source) -> Outcome<LieAlgebra> {
    let name = catalog_name(&src.label).unwrap_or(&src.label);
    if let Some(g) = lie_catalog::by_name(name) {
        return Ok(g);
    }
    match &src.text {
        Some(t) => Ok(LieAlgebra::parse(t)?),
        None => Err(unknown(&src.label, "Lie algebra", &lie_catalog::NAMES.map(String::from))),
    }
}

/// Reads a Lie algebra argument that may be a bare catalog name.
pub fn read_lie(arg: &str) -> Outcome<Source> {
    if lie_catalog::by_name(arg).is_some() {
        return Ok(Source { label: arg.into(), bytes: arg.as_bytes().to_vec(), text: None });
    }
    read(arg)
}

/// Subalgebra of `g` or of its realification, whichever matches the rows.
/// `catalog:su2` is the compact form inside the realified `sl2`.
pub fn subalgebra(arg: &str, g: &LieAlgebra) -> Outcome<(Subalgebra, LieAlgebra)> {
    if arg == "catalog:su2" {
        if *g != lie_catalog::sl2() {
            return Err(Failure::validation("catalog:su2 is a subalgebra of the realified sl2 only"));
        }
        return Ok((lie_catalog::su2_model(), g.realify()));
    }
    let text = fs::read_to_string(arg).map_err(|e| Failure::parse(format!("cannot read `{arg}`: {e}")))?;
    let width = ddbar::text::lines(&text).first().map(|l| l.tokens.len() - 1);
    let ambient = if width == Some(2 * g.dim()) && g.dim() > 0 { g.realify() } else { g.clone() };
    Ok((Subalgebra::parse(&ambient, &text)?, ambient))
}

pub fn solv(src: &Source) -> Outcome<SolvData> {
    match (catalog_name(&src.label), &src.text) {
        (Some("nakamura-identically"), _) => Ok(nakamura_preset(NakamuraCase::Identically)),
        (Some("nakamura-real"), _) => Ok(nakamura_preset(NakamuraCase::Real)),
        (None, Some(t)) => Ok(SolvData::parse(t)?),
        _ => Err(unknown(&src.label, "solvable", &["catalog:nakamura-identically".into(), "catalog:nakamura-real".into()])),
    }
}

pub fn splitting(src: &Source) -> Outcome<SplittingData> {
    match (catalog_name(&src.label), &src.text) {
        (Some("splitting-real"), _) => Ok(splitting_preset(true)),
        (Some("splitting-identically"), _) => Ok(splitting_preset(false)),
        (None, Some(t)) => Ok(SplittingData::parse(t)?),
        _ => Err(unknown(&src.label, "splitting", &["catalog:splitting-real".into(), "catalog:splitting-identically".into()])),
    }
}

pub fn relative(g: &LieAlgebra, k: &Subalgebra) -> Outcome<std::collections::BTreeMap<i64, usize>> {
    Ok(lie::relative_ce_cohomology(g, k)?)
}
