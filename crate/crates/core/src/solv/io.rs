//! Text formats for solvable and splitting-type data.
//!
//! ```text
//! dim 3
//! bracket 0 1 1 1
//! weight 1 0 1          # a_1(X_0) = 1
//! gamma_trivial { 1 2 }
//! ```
//!
//! ```text
//! abelian 1
//! dim 2
//! phi 0 1 0             # α_0: hol exponents, then antihol exponents
//! gamma_trivial { 0 ; 1 }
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{FlagSpec, PairFlags, SolvData, SplittingData};
use super::splitting::Character;
use crate::error::{Error, Result};
use crate::exact::{vector, Scalar};
use crate::lie::LieAlgebra;
use crate::text::{lines, Line, Token};

enum Gamma {
    All,
    Identically,
    Sets(Vec<Vec<BTreeSet<usize>>>),
}

fn parse_gamma(line: &Line, groups: usize, acc: &mut Option<Gamma>) -> Result<()> {
    let first = line.arg(1, "`all`, `identically` or `{`")?;
    let kw = match first.text {
        "all" | "identically" => {
            line.expect_len(2)?;
            Some(first.text)
        }
        "{" => None,
        other => return Err(first.error(format!("expected `all`, `identically` or `{{`, found `{other}`"))),
    };
    let conflict = |t: &Token| t.error("gamma_trivial keywords cannot be mixed with explicit sets");
    match (kw, acc.as_mut()) {
        (Some("all"), None) => *acc = Some(Gamma::All),
        (Some("identically"), None) => *acc = Some(Gamma::Identically),
        (Some(_), Some(_)) => return Err(conflict(&first)),
        (None, Some(Gamma::All | Gamma::Identically)) => return Err(conflict(&first)),
        (None, _) => {
            let close = line.tokens.last().expect("nonempty");
            if close.text != "}" || line.tokens.len() < 3 {
                return Err(Error::parse(line.number, line.end_col, "expected a closing `}`"));
            }
            let mut sets = vec![BTreeSet::new()];
            for t in &line.tokens[2..line.tokens.len() - 1] {
                if t.text == ";" {
                    sets.push(BTreeSet::new());
                } else {
                    sets.last_mut().unwrap().insert(t.parse::<usize>("an index")?);
                }
            }
            if sets.len() != groups {
                return Err(first.error(format!("expected {groups} index group(s) separated by `;`")));
            }
            match acc {
                Some(Gamma::Sets(v)) => v.push(sets),
                _ => *acc = Some(Gamma::Sets(vec![sets])),
            }
        }
        (Some(_), None) => unreachable!(),
    }
    Ok(())
}

fn write_set(s: &BTreeSet<usize>) -> String {
    s.iter().map(|i| format!(" {i}")).collect()
}

impl SolvData {
    pub fn parse(src: &str) -> Result<SolvData> {
        let g = LieAlgebra::parse_lines(src, true)?;
        let n = g.dim();
        let mut weights = vec![Vec::new(); n];
        let mut gamma = None;
        for line in lines(src) {
            match line.keyword() {
                "dim" | "bracket" => {}
                "weight" => {
                    line.expect_len(4)?;
                    let idx = |i: usize| -> Result<usize> {
                        let t = line.arg(i, "basis index")?;
                        let v: usize = t.parse("a basis index")?;
                        if v >= n {
                            return Err(t.error(format!("index {v} out of range for dimension {n}")));
                        }
                        Ok(v)
                    };
                    let (i, j) = (idx(1)?, idx(2)?);
                    let c = line.arg(3, "coefficient")?.scalar()?;
                    weights[i] = vector::axpy(&weights[i], &c, &vector::unit(j));
                }
                "gamma_trivial" => parse_gamma(&line, 1, &mut gamma)?,
                other => return Err(line.tokens[0].error(format!("unknown keyword `{other}`"))),
            }
        }
        let flags = match gamma {
            None | Some(Gamma::Identically) => FlagSpec::Identically,
            Some(Gamma::All) => FlagSpec::All,
            Some(Gamma::Sets(v)) => FlagSpec::Subsets(v.into_iter().map(|mut s| s.remove(0)).collect()),
        };
        Ok(SolvData { g, weights, flags })
    }

    pub fn to_text(&self) -> String {
        let mut s = self.g.to_text();
        for (i, w) in self.weights.iter().enumerate() {
            for (j, c) in w {
                writeln!(s, "weight {i} {j} {c}").unwrap();
            }
        }
        match &self.flags {
            FlagSpec::All => s.push_str("gamma_trivial all\n"),
            FlagSpec::Identically => s.push_str("gamma_trivial identically\n"),
            FlagSpec::Subsets(sets) => {
                for set in sets {
                    writeln!(s, "gamma_trivial {{{} }}", write_set(set)).unwrap();
                }
            }
        }
        s
    }
}

impl SplittingData {
    pub fn parse(src: &str) -> Result<SplittingData> {
        let mut n = None;
        let mut gamma = None;
        let mut phi_lines = Vec::new();
        for line in lines(src) {
            match line.keyword() {
                "dim" | "bracket" => {}
                "abelian" => {
                    line.expect_len(2)?;
                    n = Some(line.arg(1, "dimension")?.parse::<usize>("a dimension")?);
                }
                "phi" => phi_lines.push(line),
                "gamma_trivial" => parse_gamma(&line, 2, &mut gamma)?,
                other => return Err(line.tokens[0].error(format!("unknown keyword `{other}`"))),
            }
        }
        let n = n.ok_or_else(|| Error::parse(1, 1, "missing abelian line"))?;
        let nilp = if lines(src).iter().any(|l| l.keyword() == "dim") {
            LieAlgebra::parse_lines(src, true)?
        } else {
            LieAlgebra::abelian(0)
        };
        let mut phi = vec![Character::trivial(n); nilp.dim()];
        for line in phi_lines {
            line.expect_len(2 + 2 * n)?;
            let t = line.arg(1, "generator index")?;
            let j: usize = t.parse("a generator index")?;
            if j >= nilp.dim() {
                return Err(t.error(format!("index {j} out of range for {} generators", nilp.dim())));
            }
            let xs = (2..2 + 2 * n).map(|i| line.arg(i, "exponent")?.scalar()).collect::<Result<Vec<Scalar>>>()?;
            phi[j] = Character { hol: xs[..n].to_vec(), antihol: xs[n..].to_vec() };
        }
        let flags = match gamma {
            None | Some(Gamma::Identically) => PairFlags::Identically,
            Some(Gamma::All) => PairFlags::All,
            Some(Gamma::Sets(v)) => PairFlags::Pairs(
                v.into_iter()
                    .map(|mut s| {
                        let l = s.pop().unwrap();
                        (s.pop().unwrap(), l)
                    })
                    .collect(),
            ),
        };
        Ok(SplittingData { n_abelian: n, nilp, phi, flags })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("abelian {}\n", self.n_abelian);
        s.push_str(&self.nilp.to_text());
        for (j, c) in self.phi.iter().enumerate() {
            let xs: Vec<String> = c.hol.iter().chain(&c.antihol).map(|x| x.to_string()).collect();
            writeln!(s, "phi {j} {}", xs.join(" ")).unwrap();
        }
        match &self.flags {
            PairFlags::All => s.push_str("gamma_trivial all\n"),
            PairFlags::Identically => s.push_str("gamma_trivial identically\n"),
            PairFlags::Pairs(pairs) => {
                for (j, l) in pairs {
                    writeln!(s, "gamma_trivial {{{} ;{} }}", write_set(j), write_set(l)).unwrap();
                }
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::super::{nakamura_preset, random_solvable, splitting_preset, NakamuraCase};
    use super::*;

    #[test]
    fn solv_round_trip() {
        for sd in [nakamura_preset(NakamuraCase::Identically), nakamura_preset(NakamuraCase::Real), random_solvable(5, 4)] {
            assert_eq!(SolvData::parse(&sd.to_text()).unwrap(), sd);
        }
        let sd = SolvData::parse("dim 3\nbracket 0 1 1 1\nbracket 0 2 2 -1\nweight 1 0 1\nweight 2 0 -1\ngamma_trivial { 1 2 }\n")
            .unwrap();
        assert_eq!(sd.flags, FlagSpec::Subsets(vec![[1, 2].into_iter().collect()]));
        sd.validate().unwrap();
    }

    #[test]
    fn splitting_round_trip() {
        for sp in [splitting_preset(true), splitting_preset(false)] {
            assert_eq!(SplittingData::parse(&sp.to_text()).unwrap(), sp);
        }
        let sp = SplittingData::parse("abelian 1\ndim 2\nphi 0 1 0\nphi 1 -1 0\ngamma_trivial { ; 0 1 }\n").unwrap();
        assert_eq!(sp.flags, PairFlags::Pairs(vec![(BTreeSet::new(), [0, 1].into_iter().collect())]));
        sp.validate().unwrap();
    }

    #[test]
    fn mixing_keywords_rejected() {
        let err = SolvData::parse("dim 1\ngamma_trivial all\ngamma_trivial { 0 }\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }
}
