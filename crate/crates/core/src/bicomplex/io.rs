//! Line-oriented bicomplex files.
//!
//! ```text
//! space <p> <q> <dim>
//! del <p> <q> <row> <col> <scalar>
//! delbar <p> <q> <row> <col> <scalar>
//! ```
//!
//! Matrices are keyed by their source bidegree. The writer emits one line per
//! nonzero space and nonzero entry, sorted bytewise.

use std::collections::{BTreeMap, HashSet};

use super::{Arrow, Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::text::{lines, Line};

type Entries = BTreeMap<(Arrow, Bidegree), Vec<(usize, usize, Scalar)>>;

pub fn parse(src: &str) -> Result<DoubleComplex> {
    let all = lines(src);
    let mut dc = DoubleComplex::new();
    let mut declared = HashSet::new();
    let mut entries: Entries = BTreeMap::new();
    let mut seen = HashSet::new();
    for line in &all {
        match line.keyword() {
            "space" => {
                line.expect_len(4)?;
                let at = bidegree(line)?;
                let d: usize = line.arg(3, "dimension")?.parse("a dimension")?;
                if !declared.insert(at) {
                    return Err(line.tokens[0].error(format!("space ({},{}) declared twice", at.0, at.1)));
                }
                dc.dims.insert(at, d);
            }
            kw @ ("del" | "delbar") => {
                line.expect_len(6)?;
                let arrow = if kw == "del" { Arrow::Del } else { Arrow::Delbar };
                let at = bidegree(line)?;
                let row: usize = line.arg(3, "row")?.parse("a row index")?;
                let col: usize = line.arg(4, "column")?.parse("a column index")?;
                let x = line.arg(5, "scalar")?.scalar()?;
                if !seen.insert((arrow, at, row, col)) {
                    return Err(line.tokens[0].error(format!("duplicate {kw} entry ({row},{col}) at ({},{})", at.0, at.1)));
                }
                entries.entry((arrow, at)).or_default().push((row, col, x));
            }
            other => return Err(line.tokens[0].error(format!("unknown keyword `{other}`"))),
        }
    }
    dc.dims.retain(|_, d| *d > 0);
    for ((arrow, (p, q)), es) in entries {
        let (dp, dq) = arrow.step();
        let (rows, cols) = (dc.dim((p + dp, q + dq)), dc.dim((p, q)));
        for (r, c, _) in &es {
            if *r >= rows || *c >= cols {
                return Err(Error::Structure {
                    p,
                    q,
                    msg: format!("entry ({r},{c}) outside the {rows}x{cols} matrix"),
                });
            }
        }
        dc.set_map(arrow, (p, q), Matrix::from_triplets(rows, cols, es))?;
    }
    Ok(dc)
}

fn bidegree(line: &Line<'_>) -> Result<Bidegree> {
    Ok((line.arg(1, "p")?.parse("an integer p")?, line.arg(2, "q")?.parse("an integer q")?))
}

/// Canonical text form; `parse(&write(dc)) == dc`.
pub fn write(dc: &DoubleComplex) -> String {
    let mut out: Vec<String> = dc.dims.iter().map(|((p, q), d)| format!("space {p} {q} {d}")).collect();
    for (arrow, name) in [(Arrow::Del, "del"), (Arrow::Delbar, "delbar")] {
        for ((p, q), m) in dc.maps(arrow) {
            for (r, c, x) in m.entries() {
                out.push(format!("{name} {p} {q} {r} {c} {x}"));
            }
        }
    }
    out.sort_unstable();
    let mut s = out.join("\n");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::super::catalog;
    use super::*;

    #[test]
    fn square_round_trip() {
        let s = catalog::square((0, 0));
        let text = write(&s);
        assert_eq!(
            text,
            "del 0 0 0 0 1\ndel 0 1 0 0 1\ndelbar 0 0 0 0 1\ndelbar 1 0 0 0 -1\n\
             space 0 0 1\nspace 0 1 1\nspace 1 0 1\nspace 1 1 1\n"
        );
        let back = parse(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(write(&back), text);
    }

    #[test]
    fn comments_and_order_are_ignored() {
        let dc = parse("# a wedge\ndel 0 0 0 0 1\nspace 0 0 1\nspace 1 0 1 # the del image\n").unwrap();
        assert_eq!(dc, catalog::del_line((0, 0)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("space 0 0 1\nspace 0 x 1\n") {
            Err(Error::Parse { line: 2, col: 9, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("space 0 0 1\ndel 0 0 0 0 1/0\n") {
            Err(Error::Parse { line: 2, col: 13, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("space 0 0 1\ndel 0 0 0 0 1\n"), Err(Error::Structure { .. })));
        assert!(matches!(parse("bogus 1\n"), Err(Error::Parse { line: 1, col: 1, .. })));
    }
}
