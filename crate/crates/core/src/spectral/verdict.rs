use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::text::lines;

/// Classification record for a double complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub degeneration_page_f: usize,
    pub degeneration_page_fbar: usize,
    pub pure: BTreeMap<i64, bool>,
    pub ddbar_lemma: bool,
    pub page1_by_definition: bool,
    pub page1_by_dims: bool,
    /// Filled in once a decomposition into indecomposables is known.
    pub page1_by_shape: Option<bool>,
    pub e1_degenerate: bool,
}

impl Verdict {
    /// Machine lines, one field per line.
    pub fn to_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("degeneration_F {}", self.degeneration_page_f),
            format!("degeneration_Fbar {}", self.degeneration_page_fbar),
        ];
        out.extend(self.pure.iter().map(|(k, b)| format!("pure {k} {b}")));
        out.push(format!("ddbar {}", self.ddbar_lemma));
        out.push(format!("page1_def {}", self.page1_by_definition));
        out.push(format!("page1_dims {}", self.page1_by_dims));
        out.push(format!(
            "page1_shape {}",
            match self.page1_by_shape {
                Some(b) => b.to_string(),
                None => "na".into(),
            }
        ));
        out
    }

    /// Inverse of [`Verdict::to_lines`].
    pub fn parse(src: &str) -> Result<Verdict> {
        let mut v = Verdict {
            degeneration_page_f: 0,
            degeneration_page_fbar: 0,
            pure: BTreeMap::new(),
            ddbar_lemma: false,
            page1_by_definition: false,
            page1_by_dims: false,
            page1_by_shape: None,
            e1_degenerate: false,
        };
        let mut seen = Vec::new();
        for line in lines(src) {
            let kw = line.keyword();
            let arg = |i: usize| line.arg(i, "value");
            match kw {
                "degeneration_F" => v.degeneration_page_f = arg(1)?.parse("a page index")?,
                "degeneration_Fbar" => v.degeneration_page_fbar = arg(1)?.parse("a page index")?,
                "pure" => {
                    v.pure.insert(arg(1)?.parse("a degree")?, arg(2)?.parse("true or false")?);
                }
                "ddbar" => v.ddbar_lemma = arg(1)?.parse("true or false")?,
                "page1_def" => v.page1_by_definition = arg(1)?.parse("true or false")?,
                "page1_dims" => v.page1_by_dims = arg(1)?.parse("true or false")?,
                "page1_shape" => {
                    let t = arg(1)?;
                    v.page1_by_shape = if t.text == "na" { None } else { Some(t.parse("true, false or na")?) };
                }
                _ => return Err(line.tokens[0].error(format!("unknown verdict field `{kw}`"))),
            }
            seen.push(kw);
        }
        for need in ["degeneration_F", "degeneration_Fbar", "ddbar", "page1_def", "page1_dims", "page1_shape"] {
            if !seen.contains(&need) {
                return Err(Error::parse(0, 0, format!("missing verdict field `{need}`")));
            }
        }
        v.e1_degenerate = v.degeneration_page_f == 1;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_round_trip() {
        let v = Verdict {
            degeneration_page_f: 2,
            degeneration_page_fbar: 1,
            pure: [(0, true), (1, false)].into_iter().collect(),
            ddbar_lemma: false,
            page1_by_definition: false,
            page1_by_dims: false,
            page1_by_shape: Some(false),
            e1_degenerate: false,
        };
        let text = v.to_lines().join("\n");
        assert_eq!(Verdict::parse(&text).unwrap(), v);
        assert!(text.contains("pure 1 false"));
    }
}
