use std::fmt;

use crate::bicomplex::{Arrow, Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::text::lines;

/// An indecomposable bounded double complex.
///
/// A zigzag is written from its end with the smallest `p` (largest `q` among
/// those), each step moving either right along `∂` or down against `∂̄`:
/// `Del` is `(+1, 0)` and `Delbar` is `(0, −1)`. Steps alternate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indecomposable {
    Square(Bidegree),
    Zigzag { start: Bidegree, steps: Vec<Arrow> },
}

impl Indecomposable {
    pub fn dot(at: Bidegree) -> Self {
        Indecomposable::Zigzag { start: at, steps: vec![] }
    }

    /// Zigzag of `len ≥ 1` nodes whose first step (if any) is `first`.
    pub fn zigzag(start: Bidegree, len: usize, first: Arrow) -> Self {
        let steps = (0..len.saturating_sub(1))
            .map(|i| match (first, i % 2) {
                (Arrow::Del, 0) | (Arrow::Delbar, 1) => Arrow::Del,
                _ => Arrow::Delbar,
            })
            .collect();
        Indecomposable::Zigzag { start, steps }
    }

    /// Number of one-dimensional pieces.
    pub fn len(&self) -> usize {
        match self {
            Indecomposable::Square(_) => 4,
            Indecomposable::Zigzag { steps, .. } => steps.len() + 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_square(&self) -> bool {
        matches!(self, Indecomposable::Square(_))
    }

    /// Squares, dots and lines.
    pub fn is_page1_shape(&self) -> bool {
        self.is_square() || self.len() <= 2
    }

    /// Bidegrees of the pieces in path order (for a square: generator,
    /// `∂`-image, `∂̄`-image, top corner).
    pub fn nodes(&self) -> Vec<Bidegree> {
        match self {
            Indecomposable::Square((p, q)) => vec![(*p, *q), (p + 1, *q), (*p, q + 1), (p + 1, q + 1)],
            Indecomposable::Zigzag { start, steps } => {
                let mut out = vec![*start];
                let mut cur = *start;
                for s in steps {
                    cur = match s {
                        Arrow::Del => (cur.0 + 1, cur.1),
                        Arrow::Delbar => (cur.0, cur.1 - 1),
                    };
                    out.push(cur);
                }
                out
            }
        }
    }

    /// Whether the steps alternate, as they must for a zigzag.
    pub fn is_well_formed(&self) -> bool {
        match self {
            Indecomposable::Square(_) => true,
            Indecomposable::Zigzag { steps, .. } => steps.windows(2).all(|w| w[0] != w[1]),
        }
    }

    /// `(source node, target node, arrow, coefficient)` for every nonzero
    /// matrix entry of the model, indices into [`Indecomposable::nodes`].
    pub fn arrows(&self) -> Vec<(usize, usize, Arrow, Scalar)> {
        match self {
            Indecomposable::Square(_) => vec![
                (0, 1, Arrow::Del, Scalar::ONE),
                (0, 2, Arrow::Delbar, Scalar::ONE),
                (2, 3, Arrow::Del, Scalar::ONE),
                (1, 3, Arrow::Delbar, Scalar::int(-1)),
            ],
            Indecomposable::Zigzag { steps, .. } => steps
                .iter()
                .enumerate()
                .map(|(i, s)| match s {
                    Arrow::Del => (i, i + 1, Arrow::Del, Scalar::ONE),
                    Arrow::Delbar => (i + 1, i, Arrow::Delbar, Scalar::ONE),
                })
                .collect(),
        }
    }
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indecomposable::Square((p, q)) => write!(f, "square({p},{q})"),
            Indecomposable::Zigzag { start: (p, q), steps } => {
                write!(f, "zigzag({p},{q}")?;
                for s in steps {
                    f.write_str(match s {
                        Arrow::Del => " del",
                        Arrow::Delbar => " delbar",
                    })?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Where each node of each part sits in the model basis.
pub(crate) fn node_slots(parts: &[Indecomposable]) -> (DoubleComplex, Vec<Vec<usize>>) {
    let mut dc = DoubleComplex::new();
    let mut counts = std::collections::BTreeMap::<Bidegree, usize>::new();
    let mut slots = Vec::with_capacity(parts.len());
    for part in parts {
        let mut s = Vec::new();
        for b in part.nodes() {
            let c = counts.entry(b).or_default();
            s.push(*c);
            *c += 1;
        }
        slots.push(s);
    }
    for (b, d) in &counts {
        dc.set_space(*b, *d);
    }
    (dc, slots)
}

/// Direct sum of the given parts, in order; at each bidegree the basis lists
/// the pieces of earlier parts first.
pub fn model(parts: &[Indecomposable]) -> DoubleComplex {
    let (mut dc, slots) = node_slots(parts);
    let mut entries: std::collections::BTreeMap<(Arrow, Bidegree), Vec<(usize, usize, Scalar)>> = Default::default();
    for (part, slot) in parts.iter().zip(&slots) {
        let nodes = part.nodes();
        for (a, b, arrow, x) in part.arrows() {
            entries.entry((arrow, nodes[a])).or_default().push((slot[b], slot[a], x));
        }
    }
    for ((arrow, src), es) in entries {
        let (dp, dq) = arrow.step();
        let m = Matrix::from_triplets(dc.dim((src.0 + dp, src.1 + dq)), dc.dim(src), es);
        dc.set_map(arrow, src, m).expect("model shapes are consistent");
    }
    dc
}

/// `true` iff every part is a square, dot or line.
pub fn page1_by_shape<'a>(parts: impl IntoIterator<Item = &'a Indecomposable>) -> bool {
    parts.into_iter().all(Indecomposable::is_page1_shape)
}

/// Report lines `square <p> <q> <mult>` and `zigzag <mult> <p0> <q0> <step…>`.
pub fn report_lines(parts: &[(Indecomposable, usize)]) -> Vec<String> {
    parts
        .iter()
        .map(|(part, m)| match part {
            Indecomposable::Square((p, q)) => format!("square {p} {q} {m}"),
            Indecomposable::Zigzag { start: (p, q), steps } => {
                let mut s = format!("zigzag {m} {p} {q}");
                for st in steps {
                    s.push_str(match st {
                        Arrow::Del => " del",
                        Arrow::Delbar => " delbar",
                    });
                }
                s
            }
        })
        .collect()
}

/// Inverse of [`report_lines`].
pub fn parse_report(src: &str) -> Result<Vec<(Indecomposable, usize)>> {
    let mut out = Vec::new();
    for line in lines(src) {
        match line.keyword() {
            "square" => {
                line.expect_len(4)?;
                let p = line.arg(1, "p")?.parse("an integer")?;
                let q = line.arg(2, "q")?.parse("an integer")?;
                let m = line.arg(3, "multiplicity")?.parse("a count")?;
                out.push((Indecomposable::Square((p, q)), m));
            }
            "zigzag" => {
                let m = line.arg(1, "multiplicity")?.parse("a count")?;
                let p = line.arg(2, "p0")?.parse("an integer")?;
                let q = line.arg(3, "q0")?.parse("an integer")?;
                let steps = line.tokens[4..]
                    .iter()
                    .map(|t| match t.text {
                        "del" => Ok(Arrow::Del),
                        "delbar" => Ok(Arrow::Delbar),
                        other => Err(t.error(format!("expected del or delbar, found `{other}`"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                let part = Indecomposable::Zigzag { start: (p, q), steps };
                if !part.is_well_formed() {
                    return Err(Error::parse(line.number, 1, "zigzag steps must alternate"));
                }
                out.push((part, m));
            }
            other => return Err(line.tokens[0].error(format!("unknown part `{other}`"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::catalog;

    #[test]
    fn models_match_catalog() {
        assert_eq!(model(&[Indecomposable::Square((0, 0))]), catalog::square((0, 0)));
        assert_eq!(model(&[Indecomposable::dot((2, 1))]), catalog::dot((2, 1)));
        assert_eq!(model(&[Indecomposable::zigzag((0, 0), 2, Arrow::Del)]), catalog::del_line((0, 0)));
        assert_eq!(model(&[Indecomposable::zigzag((0, 1), 2, Arrow::Delbar)]), catalog::delbar_line((0, 0)));
        assert_eq!(model(&[Indecomposable::zigzag((0, 1), 3, Arrow::Delbar)]), catalog::wedge((0, 0)));
    }

    #[test]
    fn long_zigzags_validate() {
        for len in 1..=6 {
            for first in [Arrow::Del, Arrow::Delbar] {
                let z = Indecomposable::zigzag((0, 3), len, first);
                assert!(z.is_well_formed());
                let m = model(&[z.clone(), z]);
                assert!(m.validate().is_ok());
                assert_eq!(m.total_dim(), 2 * len);
            }
        }
    }

    #[test]
    fn shape_test() {
        let line = Indecomposable::zigzag((0, 0), 2, Arrow::Del);
        let wedge = Indecomposable::zigzag((0, 1), 3, Arrow::Delbar);
        let sq = Indecomposable::Square((0, 0));
        assert!(page1_by_shape(&[Indecomposable::dot((0, 0)), line, sq]));
        assert!(!page1_by_shape(&[Indecomposable::dot((0, 0)), wedge]));
        assert!(page1_by_shape(&[]));
    }

    #[test]
    fn report_round_trip() {
        let parts = vec![
            (Indecomposable::Square((0, 0)), 2),
            (Indecomposable::zigzag((0, 1), 3, Arrow::Delbar), 1),
            (Indecomposable::dot((1, 1)), 4),
        ];
        let text = report_lines(&parts).join("\n");
        assert_eq!(text, "square 0 0 2\nzigzag 1 0 1 delbar del\nzigzag 4 1 1");
        assert_eq!(parse_report(&text).unwrap(), parts);
    }
}
