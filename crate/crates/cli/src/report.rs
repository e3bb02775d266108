//! Reports: a machine section of keyword lines, and a text rendering that adds
//! `#` decoration lines (grids, headers) around the same machine lines.
//!
//! ```text
//! report classify
//! input catalog:wedge
//! sha256 5c1e…
//! version 0.1.0
//! table dolbeault 2
//! cell 1 0 1
//! end
//! fact zigzag 1 0 1 delbar del
//! verdict
//! degeneration_F 2
//! …
//! end
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ddbar::bicomplex::Bidegree;
use ddbar::spectral::Verdict;
use ddbar::text::lines;
use ddbar::{Error, Result};
use sha2::{Digest, Sha256};

/// Counts keyed by a degree (`arity` 1) or a bidegree (`arity` 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub label: String,
    pub arity: usize,
    pub cells: BTreeMap<Vec<i64>, usize>,
}

impl Table {
    pub fn grid(label: impl Into<String>, dims: &BTreeMap<Bidegree, usize>) -> Table {
        Table { label: label.into(), arity: 2, cells: dims.iter().map(|(&(p, q), &d)| (vec![p, q], d)).collect() }
    }

    pub fn degrees(label: impl Into<String>, dims: &BTreeMap<i64, usize>) -> Table {
        Table { label: label.into(), arity: 1, cells: dims.iter().map(|(&k, &d)| (vec![k], d)).collect() }
    }

    /// `p` left to right, `q` bottom to top.
    fn drawing(&self) -> Vec<String> {
        if self.arity != 2 || self.cells.is_empty() {
            let row: Vec<String> = self.cells.iter().map(|(k, d)| format!("{}:{d}", k[0])).collect();
            return vec![format!("#   {}", if row.is_empty() { "(empty)".into() } else { row.join("  ") })];
        }
        let ps = self.cells.keys().map(|k| k[0]);
        let qs = self.cells.keys().map(|k| k[1]);
        let (p0, p1) = (ps.clone().min().unwrap(), ps.max().unwrap());
        let (q0, q1) = (qs.clone().min().unwrap(), qs.max().unwrap());
        let width = self.cells.values().map(|d| d.to_string().len()).max().unwrap_or(1).max(p1.to_string().len()).max(p0.to_string().len());
        let qw = q0.to_string().len().max(q1.to_string().len());
        let mut out = Vec::new();
        for q in (q0..=q1).rev() {
            let mut s = format!("#   {q:>qw$} |");
            for p in p0..=p1 {
                match self.cells.get(&vec![p, q]) {
                    Some(d) => write!(s, " {d:>width$}").unwrap(),
                    None => write!(s, " {:>width$}", ".").unwrap(),
                }
            }
            out.push(s);
        }
        let span = (p1 - p0 + 1) as usize * (width + 1);
        out.push(format!("#   {:qw$} +{}", "", "-".repeat(span)));
        let mut axis = format!("#   {:qw$}  ", "");
        for p in p0..=p1 {
            write!(axis, "{p:>width$} ").unwrap();
        }
        out.push(axis.trim_end().to_string());
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Table(Table),
    /// A keyword line such as `square 0 0 1` or `asymmetric 0 1`.
    Fact(Vec<String>),
    Verdict(Verdict),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub verb: String,
    pub input: String,
    pub sha256: String,
    pub version: String,
    pub items: Vec<Item>,
}

pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

const RESERVED: [&str; 8] = ["report", "input", "sha256", "version", "table", "cell", "end", "verdict"];

impl Report {
    pub fn new(verb: &str, input: &str, bytes: &[u8]) -> Report {
        Report {
            verb: verb.into(),
            input: input.into(),
            sha256: digest(bytes),
            version: env!("CARGO_PKG_VERSION").into(),
            items: Vec::new(),
        }
    }

    pub fn table(&mut self, t: Table) {
        self.items.push(Item::Table(t));
    }

    pub fn fact<S: ToString>(&mut self, words: impl IntoIterator<Item = S>) {
        let words: Vec<String> = words.into_iter().map(|w| w.to_string()).collect();
        assert!(!words.is_empty() && !RESERVED.contains(&words[0].as_str()), "bad fact keyword");
        self.items.push(Item::Fact(words));
    }

    pub fn verdict(&mut self, v: Verdict) {
        self.items.push(Item::Verdict(v));
    }

    /// Value of the first fact with this keyword.
    pub fn get_fact(&self, key: &str) -> Option<&[String]> {
        self.items.iter().find_map(|i| match i {
            Item::Fact(w) if w[0] == key => Some(&w[1..]),
            _ => None,
        })
    }

    pub fn get_table(&self, label: &str) -> Option<&Table> {
        self.items.iter().find_map(|i| match i {
            Item::Table(t) if t.label == label => Some(t),
            _ => None,
        })
    }

    pub fn get_verdict(&self) -> Option<&Verdict> {
        self.items.iter().find_map(|i| match i {
            Item::Verdict(v) => Some(v),
            _ => None,
        })
    }

    fn render(&self, decorate: bool) -> String {
        let mut s = String::new();
        let mut line = |l: String| {
            s.push_str(&l);
            s.push('\n');
        };
        line(format!("report {}", self.verb));
        line(format!("input {}", self.input));
        line(format!("sha256 {}", self.sha256));
        line(format!("version {}", self.version));
        for item in &self.items {
            match item {
                Item::Table(t) => {
                    if decorate {
                        line(format!("# {}", t.label));
                        for d in t.drawing() {
                            line(d);
                        }
                    }
                    line(format!("table {} {}", t.label, t.arity));
                    for (k, d) in &t.cells {
                        let key: Vec<String> = k.iter().map(i64::to_string).collect();
                        line(format!("cell {} {d}", key.join(" ")));
                    }
                    line("end".into());
                }
                Item::Fact(w) => line(w.join(" ")),
                Item::Verdict(v) => {
                    if decorate {
                        line("# verdict".into());
                    }
                    line("verdict".into());
                    for l in v.to_lines() {
                        line(l);
                    }
                    line("end".into());
                }
            }
        }
        s
    }

    pub fn to_machine(&self) -> String {
        self.render(false)
    }

    pub fn to_text(&self) -> String {
        self.render(true)
    }

    /// Reads either rendering back; decoration lines are comments.
    pub fn parse(src: &str) -> Result<Report> {
        let all = lines(src);
        let mut it = all.iter().peekable();
        let mut header = |kw: &str| -> Result<String> {
            let l = it.next().ok_or_else(|| Error::parse(0, 0, format!("missing `{kw}` line")))?;
            if l.keyword() != kw || l.tokens.len() < 2 {
                return Err(l.tokens[0].error(format!("expected `{kw} <value>`")));
            }
            Ok(l.tokens[1..].iter().map(|t| t.text).collect::<Vec<_>>().join(" "))
        };
        let verb = header("report")?;
        let input = header("input")?;
        let sha256 = header("sha256")?;
        let version = header("version")?;
        let mut items = Vec::new();
        while let Some(l) = it.next() {
            match l.keyword() {
                "table" => {
                    l.expect_len(3)?;
                    let label = l.tokens[1].text.to_string();
                    let arity: usize = l.tokens[2].parse("an arity")?;
                    let mut cells = BTreeMap::new();
                    loop {
                        let c = it.next().ok_or_else(|| Error::parse(l.number, 1, "unterminated table"))?;
                        match c.keyword() {
                            "end" => break,
                            "cell" => {
                                c.expect_len(arity + 2)?;
                                let key = (1..=arity).map(|i| c.tokens[i].parse("an index")).collect::<Result<Vec<i64>>>()?;
                                cells.insert(key, c.tokens[arity + 1].parse("a count")?);
                            }
                            other => return Err(c.tokens[0].error(format!("unexpected `{other}` in a table"))),
                        }
                    }
                    items.push(Item::Table(Table { label, arity, cells }));
                }
                "verdict" => {
                    let mut body = String::new();
                    loop {
                        let c = it.next().ok_or_else(|| Error::parse(l.number, 1, "unterminated verdict"))?;
                        if c.keyword() == "end" {
                            break;
                        }
                        body.push_str(&c.tokens.iter().map(|t| t.text).collect::<Vec<_>>().join(" "));
                        body.push('\n');
                    }
                    items.push(Item::Verdict(Verdict::parse(&body)?));
                }
                kw if RESERVED.contains(&kw) => return Err(l.tokens[0].error(format!("unexpected `{kw}`"))),
                _ => items.push(Item::Fact(l.tokens.iter().map(|t| t.text.to_string()).collect())),
            }
        }
        Ok(Report { verb, input, sha256, version, items })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("cohomology", "catalog:wedge", b"catalog:wedge");
        r.table(Table::grid("dolbeault", &[((0, 0), 0), ((1, 0), 1), ((0, 1), 0)].into_iter().collect()));
        r.table(Table::degrees("de_rham", &[(0, 0), (1, 1)].into_iter().collect()));
        r.fact(["zigzag", "1", "0", "1", "delbar", "del"]);
        r
    }

    #[test]
    fn text_is_machine_plus_comments() {
        let r = sample();
        let text = r.to_text();
        let stripped: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        assert_eq!(stripped, r.to_machine());
        assert_eq!(Report::parse(&text).unwrap(), r);
        assert_eq!(Report::parse(&r.to_machine()).unwrap().to_machine(), r.to_machine());
    }

    #[test]
    fn grid_orientation() {
        let t = Table::grid("t", &[((0, 0), 1), ((1, 0), 2), ((0, 1), 3)].into_iter().collect());
        let d = t.drawing();
        assert_eq!(d[0], "#   1 | 3 .");
        assert_eq!(d[1], "#   0 | 1 2");
    }
}
