//! Constructive splitting of a double complex into squares and zigzags.
//!
//! Squares are split off first together with a complementary subcomplex on
//! which `∂∂̄` vanishes. That complement is then cut into strips between
//! neighbouring antidiagonals; each strip is a representation of an
//! alternating type-A quiver and is decomposed into intervals by a left to
//! right sweep. The result is certified by conjugating both differentials
//! into the block model.

use std::collections::{BTreeMap, HashMap};

use super::shape::{model, node_slots, Indecomposable};
use crate::bicomplex::{Arrow, Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::exact::matrix::rref_rows;
use crate::exact::{kernel, vector, Matrix, Scalar, SparseVec, Subspace};

/// Indecomposable parts with multiplicities and the adapted bases.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Parts grouped with multiplicities, in increasing order.
    pub parts: Vec<(Indecomposable, usize)>,
    /// Parts in the order of the adapted basis, so that `model(&ordered)`
    /// is the conjugated complex.
    pub ordered: Vec<Indecomposable>,
    /// Per bidegree, the matrix taking input coordinates to adapted ones.
    pub change_of_basis: BTreeMap<Bidegree, Matrix>,
}

impl Decomposition {
    pub fn count(&self, part: &Indecomposable) -> usize {
        self.parts.iter().find(|(p, _)| p == part).map_or(0, |(_, m)| *m)
    }

    pub fn page1_by_shape(&self) -> bool {
        super::shape::page1_by_shape(self.parts.iter().map(|(p, _)| p))
    }

    pub fn report_lines(&self) -> Vec<String> {
        super::shape::report_lines(&self.parts)
    }
}

fn apply(dc: &DoubleComplex, arrow: Arrow, at: Bidegree, v: &SparseVec) -> SparseVec {
    match dc.maps(arrow).get(&at) {
        Some(m) => m.apply(v),
        None => Vec::new(),
    }
}

fn plus(b: Bidegree, d: (i64, i64)) -> Bidegree {
    (b.0 + d.0, b.1 + d.1)
}

/// The four kinds of square pieces sitting at one bidegree.
#[derive(Default)]
struct SquareParts {
    gen: Vec<SparseVec>,
    del: Vec<SparseVec>,
    delbar: Vec<SparseVec>,
    top: Vec<SparseVec>,
}

impl SquareParts {
    fn all(&self) -> impl Iterator<Item = &SparseVec> {
        self.gen.iter().chain(&self.del).chain(&self.delbar).chain(&self.top)
    }
}

/// Coordinates on the top-corner pieces in a basis adapted to the square part.
struct TopDual {
    rows: Vec<SparseVec>,
}

impl TopDual {
    fn eval(&self, j: usize, x: &SparseVec) -> Scalar {
        vector::dot(&self.rows[j], x)
    }
}

struct Node {
    part: Indecomposable,
    vectors: Vec<SparseVec>,
}

/// Splits off squares; returns them and a basis of a complementary
/// subcomplex at every bidegree.
fn split_squares(dc: &DoubleComplex) -> Result<(Vec<Node>, BTreeMap<Bidegree, Vec<SparseVec>>)> {
    let mut gens: BTreeMap<Bidegree, Vec<SparseVec>> = BTreeMap::new();
    for b in dc.support() {
        let m = dc.ddbar(b);
        if !m.is_zero() {
            gens.insert(b, kernel(&m).standard_complement());
        }
    }
    let mut nodes = Vec::new();
    let mut parts: BTreeMap<Bidegree, SquareParts> = BTreeMap::new();
    for (&b, ws) in &gens {
        for w in ws {
            let d = apply(dc, Arrow::Del, b, w);
            let db = apply(dc, Arrow::Delbar, b, w);
            let top = apply(dc, Arrow::Del, plus(b, (0, 1)), &db);
            parts.entry(b).or_default().gen.push(w.clone());
            parts.entry(plus(b, (1, 0))).or_default().del.push(d.clone());
            parts.entry(plus(b, (0, 1))).or_default().delbar.push(db.clone());
            parts.entry(plus(b, (1, 1))).or_default().top.push(top.clone());
            nodes.push(Node { part: Indecomposable::Square(b), vectors: vec![w.clone(), d, db, top] });
        }
    }

    let empty = SquareParts::default();
    let sq = |b: Bidegree| parts.get(&b).unwrap_or(&empty);
    let mut duals: BTreeMap<Bidegree, TopDual> = BTreeMap::new();
    let mut complements: BTreeMap<Bidegree, Vec<SparseVec>> = BTreeMap::new();
    for (b, n) in dc.spaces() {
        let here = sq(*b);
        let span = Subspace::span(*n, here.all().cloned().collect());
        let s_count = here.all().count();
        if span.dim() != s_count {
            return Err(Error::internal(format!("square pieces at ({},{}) are dependent", b.0, b.1)));
        }
        let comp = span.standard_complement();
        if !here.top.is_empty() {
            let cols: Vec<SparseVec> = here.all().cloned().chain(comp.iter().cloned()).collect();
            let inv = Matrix::from_columns(*n, &cols)
                .inverse()
                .ok_or_else(|| Error::internal(format!("adapted basis at ({},{}) is singular", b.0, b.1)))?;
            let first = s_count - here.top.len();
            duals.insert(*b, TopDual { rows: (first..s_count).map(|r| inv.row(r).clone()).collect() });
        }
        complements.insert(*b, comp);
    }

    // T = ker π where π is the chain projection onto the square part
    let mut rest = BTreeMap::new();
    for (&b, comp) in &complements {
        let mut basis = Vec::with_capacity(comp.len());
        for c in comp {
            let mut proj: SparseVec = Vec::new();
            if let Some(dual) = duals.get(&plus(b, (1, 1))) {
                let x = apply(dc, Arrow::Del, plus(b, (0, 1)), &apply(dc, Arrow::Delbar, b, c));
                for (j, w) in sq(b).gen.iter().enumerate() {
                    proj = vector::axpy(&proj, &dual.eval(j, &x), w);
                }
            }
            if let Some(dual) = duals.get(&plus(b, (0, 1))) {
                let x = apply(dc, Arrow::Delbar, b, c);
                for (j, v) in sq(b).del.iter().enumerate() {
                    proj = vector::axpy(&proj, &-dual.eval(j, &x), v);
                }
            }
            if let Some(dual) = duals.get(&plus(b, (1, 0))) {
                let x = apply(dc, Arrow::Del, b, c);
                for (j, v) in sq(b).delbar.iter().enumerate() {
                    proj = vector::axpy(&proj, &dual.eval(j, &x), v);
                }
            }
            if let Some(dual) = duals.get(&b) {
                for (j, v) in sq(b).top.iter().enumerate() {
                    proj = vector::axpy(&proj, &dual.eval(j, c), v);
                }
            }
            basis.push(vector::sub(c, &proj));
        }
        rest.insert(b, basis);
    }
    Ok((nodes, rest))
}

struct Interval {
    start: usize,
    source: bool,
    vecs: Vec<SparseVec>,
}

impl Interval {
    /// Adding interval `J` into `I` keeps the family an interval
    /// decomposition iff `key(J) ≤ key(I)`.
    fn key(&self) -> (u8, i64) {
        if self.source {
            (0, -(self.start as i64))
        } else {
            (1, self.start as i64)
        }
    }
}

/// `I += c·J` on the overlap of the two intervals up to position `upto`.
fn add_into(iv: &mut [Interval], target: usize, src: usize, c: &Scalar, upto: usize) {
    let lo = iv[target].start.max(iv[src].start);
    for pos in lo..=upto {
        let add = iv[src].vecs[pos - iv[src].start].clone();
        let slot = &mut iv[target].vecs[pos - iv[target].start];
        *slot = vector::axpy(slot, c, &add);
    }
}

/// Per bidegree of the complement: sources (a complement of the cycles) and
/// targets (the span of incoming images).
struct StripData {
    sources: BTreeMap<Bidegree, Vec<SparseVec>>,
    targets: BTreeMap<Bidegree, Subspace>,
}

/// Decomposes the strip between antidiagonals `k` and `k + 1`.
fn sweep_strip(dc: &DoubleComplex, data: &StripData, k: i64) -> Result<Vec<Node>> {
    let s_at = |p: i64| (p, k - p);
    let t_at = |p: i64| (p, k + 1 - p);
    let ps: Vec<i64> = data
        .sources
        .iter()
        .filter(|(b, v)| b.0 + b.1 == k && !v.is_empty())
        .map(|(b, _)| b.0)
        .chain(data.targets.iter().filter(|(b, s)| b.0 + b.1 == k + 1 && !s.is_zero()).map(|(b, _)| b.0))
        .collect();
    let (Some(&p0), Some(&p1)) = (ps.iter().min(), ps.iter().max()) else { return Ok(vec![]) };
    let empty_sources = Vec::new();
    let sources = |p: i64| data.sources.get(&s_at(p)).unwrap_or(&empty_sources);
    let targets = |p: i64| data.targets.get(&t_at(p)).cloned().unwrap_or_else(|| Subspace::zero(dc.dim(t_at(p))));

    let mut iv: Vec<Interval> = Vec::new();
    let mut alive: Vec<usize> = Vec::new();
    let mut done: Vec<usize> = Vec::new();
    let by_key = |iv: &[Interval], ids: &mut Vec<usize>| ids.sort_by_key(|&i| (iv[i].key(), i));

    for p in p0..=p1 {
        let pos_t = 2 * (p - p0) as usize;
        // s_{p−1} → t_p along ∂
        by_key(&iv, &mut alive);
        let mut kept: HashMap<usize, (usize, SparseVec)> = HashMap::new();
        let mut next = Vec::new();
        for &id in &alive {
            let v = iv[id].vecs.last().expect("alive intervals are nonempty").clone();
            let mut img = apply(dc, Arrow::Del, s_at(p - 1), &v);
            loop {
                let Some((piv, lead)) = img.last().cloned() else {
                    done.push(id);
                    break;
                };
                if let Some((j, w)) = kept.get(&piv) {
                    let c = -(&lead * &vector::get(w, piv).expect("pivot entry").inv().expect("nonzero"));
                    img = vector::axpy(&img, &c, w);
                    add_into(&mut iv, id, *j, &c, pos_t.wrapping_sub(1));
                } else {
                    kept.insert(piv, (id, img.clone()));
                    iv[id].vecs.push(img);
                    next.push(id);
                    break;
                }
            }
        }
        let tgt = targets(p);
        let images = Subspace::span(tgt.ambient(), kept.values().map(|(_, w)| w.clone()).collect());
        if !tgt.contains_subspace(&images) {
            return Err(Error::internal(format!("del image escapes the target space at ({},{})", p, k + 1 - p)));
        }
        for v in tgt.complement_basis(&images) {
            next.push(iv.len());
            iv.push(Interval { start: pos_t, source: false, vecs: vec![v] });
        }
        alive = next;

        // s_p → t_p along ∂̄
        let pos_s = pos_t + 1;
        by_key(&iv, &mut alive);
        let cs = sources(p);
        let n = alive.len();
        let ambient = dc.dim(t_at(p));
        let basis: Vec<SparseVec> = alive.iter().map(|&i| iv[i].vecs.last().unwrap().clone()).collect();
        let images: Vec<SparseVec> = cs.iter().map(|c| apply(dc, Arrow::Delbar, s_at(p), c)).collect();
        let coords = Matrix::from_columns(ambient, &basis)
            .solve(&Matrix::from_columns(ambient, &images))
            .ok_or_else(|| Error::internal(format!("delbar image escapes the target space at ({},{})", p, k + 1 - p)))?;
        // reduce with pivots on the largest key
        let reversed: Vec<SparseVec> = coords
            .columns()
            .into_iter()
            .map(|col| {
                let mut r: SparseVec = col.into_iter().map(|(j, x)| (n - 1 - j, x)).collect();
                r.reverse();
                r
            })
            .collect();
        let (rows, pivots) = rref_rows(reversed, n);
        let mut next = Vec::new();
        let mut is_pivot = vec![false; n];
        for (row, &pv) in rows.iter().zip(&pivots) {
            let target = alive[n - 1 - pv];
            is_pivot[n - 1 - pv] = true;
            for (j, x) in row {
                if *j != pv {
                    add_into(&mut iv, target, alive[n - 1 - j], x, pos_t);
                }
            }
            let mut u: SparseVec = row.iter().map(|(j, x)| (n - 1 - j, x.clone())).collect();
            u.reverse();
            let y = coords
                .solve(&Matrix::from_columns(n, &[u]))
                .ok_or_else(|| Error::internal("lost a delbar preimage"))?;
            let mut x: SparseVec = Vec::new();
            for (i, c) in cs.iter().enumerate() {
                x = vector::axpy(&x, &y.get(i, 0), c);
            }
            iv[target].vecs.push(x);
            next.push(target);
        }
        for (slot, &id) in alive.iter().enumerate() {
            if !is_pivot[slot] {
                done.push(id);
            }
        }
        for kv in kernel(&coords).into_basis() {
            let mut x: SparseVec = Vec::new();
            for (i, c) in &kv {
                x = vector::axpy(&x, c, &cs[*i]);
            }
            next.push(iv.len());
            iv.push(Interval { start: pos_s, source: true, vecs: vec![x] });
        }
        alive = next;
    }
    done.extend(alive);
    done.sort_unstable();

    Ok(done
        .into_iter()
        .map(|id| {
            let it = &iv[id];
            let p = p0 + (it.start / 2) as i64;
            let (start, first) = if it.start % 2 == 0 { (t_at(p), Arrow::Delbar) } else { (s_at(p), Arrow::Del) };
            Node { part: Indecomposable::zigzag(start, it.vecs.len(), first), vectors: it.vecs.clone() }
        })
        .collect())
}

/// Decomposes `dc` into squares and zigzags and certifies the result.
pub fn decompose(dc: &DoubleComplex) -> Result<Decomposition> {
    dc.ensure_valid()?;
    let (mut nodes, rest) = split_squares(dc)?;

    let mut data = StripData { sources: BTreeMap::new(), targets: BTreeMap::new() };
    let mut cycles: BTreeMap<Bidegree, Subspace> = BTreeMap::new();
    for (&b, ts) in &rest {
        if ts.is_empty() {
            continue;
        }
        let (down, right) = (dc.dim(plus(b, (1, 0))), dc.dim(plus(b, (0, 1))));
        let cols: Vec<SparseVec> = ts
            .iter()
            .map(|t| {
                let mut v = apply(dc, Arrow::Del, b, t);
                v.extend(vector::shift(&apply(dc, Arrow::Delbar, b, t), down));
                v
            })
            .collect();
        let kern = kernel(&Matrix::from_columns(down + right, &cols));
        let mut is_cycle_pivot = vec![false; ts.len()];
        for &p in kern.pivots() {
            is_cycle_pivot[p] = true;
        }
        let src: Vec<SparseVec> = (0..ts.len()).filter(|&i| !is_cycle_pivot[i]).map(|i| ts[i].clone()).collect();
        let z: Vec<SparseVec> = kern
            .basis()
            .iter()
            .map(|kv| kv.iter().fold(Vec::new(), |acc, (i, c)| vector::axpy(&acc, c, &ts[*i])))
            .collect();
        data.sources.insert(b, src);
        cycles.insert(b, Subspace::span(dc.dim(b), z));
    }
    for &b in rest.keys() {
        let mut incoming = Vec::new();
        for (arrow, from) in [(Arrow::Del, plus(b, (-1, 0))), (Arrow::Delbar, plus(b, (0, -1)))] {
            if let Some(ts) = rest.get(&from) {
                incoming.extend(ts.iter().map(|t| apply(dc, arrow, from, t)));
            }
        }
        let img = Subspace::span(dc.dim(b), incoming);
        let z = cycles.get(&b).cloned().unwrap_or_else(|| Subspace::zero(dc.dim(b)));
        if !z.contains_subspace(&img) {
            return Err(Error::internal(format!("images are not cycles at ({},{})", b.0, b.1)));
        }
        for v in z.complement_basis(&img) {
            nodes.push(Node { part: Indecomposable::dot(b), vectors: vec![v] });
        }
        let n_src = data.sources.get(&b).map_or(0, Vec::len);
        if n_src + z.dim() != rest[&b].len() {
            return Err(Error::internal(format!("complement does not split at ({},{})", b.0, b.1)));
        }
        data.targets.insert(b, img);
    }

    let degrees: Vec<i64> = dc.total_degrees().into_iter().collect();
    if let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) {
        for k in lo..hi {
            nodes.extend(sweep_strip(dc, &data, k)?);
        }
    }

    nodes.sort_by(|a, b| a.part.cmp(&b.part));
    let ordered: Vec<Indecomposable> = nodes.iter().map(|n| n.part.clone()).collect();
    let (shell, slots) = node_slots(&ordered);
    if shell.spaces() != dc.spaces() {
        return Err(Error::internal("part dimensions do not add up to the complex"));
    }
    let mut columns: BTreeMap<Bidegree, Vec<SparseVec>> =
        dc.spaces().iter().map(|(b, d)| (*b, vec![Vec::new(); *d])).collect();
    for (node, slot) in nodes.iter().zip(&slots) {
        for ((b, v), s) in node.part.nodes().into_iter().zip(&node.vectors).zip(slot) {
            columns.get_mut(&b).unwrap()[*s] = v.clone();
        }
    }
    let mut adapted: BTreeMap<Bidegree, Matrix> = BTreeMap::new();
    let mut change_of_basis = BTreeMap::new();
    for (b, cols) in columns {
        let m = Matrix::from_columns(dc.dim(b), &cols);
        let inv = m.inverse().ok_or_else(|| Error::internal(format!("adapted basis at ({},{}) is singular", b.0, b.1)))?;
        adapted.insert(b, m);
        change_of_basis.insert(b, inv);
    }
    let target = model(&ordered);
    for arrow in [Arrow::Del, Arrow::Delbar] {
        for &b in dc.spaces().keys() {
            let t = plus(b, arrow.step());
            if dc.dim(t) == 0 {
                continue;
            }
            let conj = change_of_basis[&t].mul(&dc.map(arrow, b))?.mul(&adapted[&b])?;
            if conj != target.map(arrow, b) {
                return Err(Error::internal(format!(
                    "conjugated {} differs from the block model at ({},{})",
                    if arrow == Arrow::Del { "del" } else { "delbar" },
                    b.0,
                    b.1
                )));
            }
        }
    }

    let mut parts: Vec<(Indecomposable, usize)> = Vec::new();
    for part in &ordered {
        match parts.last_mut() {
            Some((p, m)) if p == part => *m += 1,
            _ => parts.push((part.clone(), 1)),
        }
    }
    Ok(Decomposition { parts, ordered, change_of_basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::catalog;
    use crate::zigzag::{random_page1_complex, random_zigzag_sum};

    fn sorted(mut v: Vec<Indecomposable>) -> Vec<Indecomposable> {
        v.sort();
        v
    }

    #[test]
    fn catalog_entries() {
        let d = decompose(&catalog::square((1, 0))).unwrap();
        assert_eq!(d.parts, vec![(Indecomposable::Square((1, 0)), 1)]);
        let d = decompose(&catalog::wedge((0, 0))).unwrap();
        assert_eq!(d.parts, vec![(Indecomposable::zigzag((0, 1), 3, Arrow::Delbar), 1)]);
        assert!(!d.page1_by_shape());
        let d = decompose(&catalog::del_line((2, 2))).unwrap();
        assert_eq!(d.parts, vec![(Indecomposable::zigzag((2, 2), 2, Arrow::Del), 1)]);
    }

    #[test]
    fn three_dots() {
        let dc = DoubleComplex::direct_sum_all(&[catalog::dot((0, 0)), catalog::dot((0, 0)), catalog::dot((1, 2))]);
        let d = decompose(&dc).unwrap();
        assert_eq!(d.count(&Indecomposable::dot((0, 0))), 2);
        assert_eq!(d.count(&Indecomposable::dot((1, 2))), 1);
    }

    #[test]
    fn long_zigzag_recovered() {
        let parts = vec![
            Indecomposable::zigzag((0, 3), 4, Arrow::Delbar),
            Indecomposable::zigzag((0, 3), 5, Arrow::Del),
            Indecomposable::Square((0, 0)),
        ];
        let d = decompose(&model(&parts)).unwrap();
        assert_eq!(d.ordered, sorted(parts));
    }

    #[test]
    fn scrambled_sums_recovered() {
        for seed in 0..200 {
            let (dc, parts) = random_zigzag_sum(seed, 12);
            let d = decompose(&dc).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            assert_eq!(d.ordered, sorted(parts), "seed {seed}");
        }
    }

    #[test]
    fn page1_shapes_recovered() {
        for seed in 0..10 {
            let (dc, parts) = random_page1_complex(seed, 6);
            let d = decompose(&dc).unwrap();
            assert!(d.page1_by_shape());
            assert_eq!(d.ordered, sorted(parts));
        }
    }
}
