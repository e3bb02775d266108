#![allow(dead_code)]

use std::collections::BTreeMap;

use ddbar::bicomplex::{DoubleComplex, Flavor, RealStructure, SimpleComplex};
use ddbar::exact::{Matrix, Scalar};
use ddbar::spectral::{classify, Classification, ClassifyOptions};
use ddbar::zigzag::decompose;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Classification with the shape route filled in.
pub fn full_classify(dc: &DoubleComplex, rs: Option<RealStructure>) -> Result<Classification, String> {
    let mut c = classify(dc, &ClassifyOptions { real_structure: rs, force_independent: false }).map_err(|e| e.to_string())?;
    let d = decompose(dc).map_err(|e| e.to_string())?;
    c.verdict.page1_by_shape = Some(d.page1_by_shape());
    Ok(c)
}

/// All three page-1 routes, which must agree.
pub fn page1_all_routes(c: &Classification) -> Result<bool, String> {
    let v = &c.verdict;
    let shape = v.page1_by_shape.ok_or("shape route missing")?;
    if v.page1_by_definition != v.page1_by_dims || v.page1_by_dims != shape {
        return Err(format!(
            "routes disagree: definition {}, dims {}, shape {shape}",
            v.page1_by_definition, v.page1_by_dims
        ));
    }
    Ok(shape)
}

fn rank(m: &Matrix) -> usize {
    if m.is_zero() {
        0
    } else {
        m.rank()
    }
}

/// `dim H^k(Tot)` from ranks of the total differential.
pub fn de_rham_by_ranks(dc: &DoubleComplex) -> BTreeMap<i64, usize> {
    let tot = |k: i64| -> usize { dc.spaces().iter().filter(|((p, q), _)| p + q == k).map(|(_, d)| d).sum() };
    let degrees = dc.total_degrees();
    degrees
        .iter()
        .map(|&k| (k, tot(k) - rank(&dc.total_differential(k)) - rank(&dc.total_differential(k - 1))))
        .collect()
}

/// Convergence, Euler characteristic and real-structure symmetry.
pub fn soundness(dc: &DoubleComplex, c: &Classification, real: bool) -> Result<(), String> {
    let hdr = de_rham_by_ranks(dc);
    for (&k, &h) in &hdr {
        if c.de_rham.get(k) != h {
            return Err(format!("H^{k}_dR is {} but ranks give {h}", c.de_rham.get(k)));
        }
        for seq in [&c.f_sequence, &c.fbar_sequence] {
            if seq.e_infinity_sum(k) != h {
                return Err(format!("E_inf in degree {k} sums to {} but H^{k}_dR = {h}", seq.e_infinity_sum(k)));
            }
        }
    }
    let sign = |k: i64| if k % 2 == 0 { 1 } else { -1 };
    let chi_h: i64 = hdr.iter().map(|(k, h)| sign(*k) * *h as i64).sum();
    let chi_a: i64 = dc.spaces().iter().map(|((p, q), d)| sign(p + q) * *d as i64).sum();
    if chi_h != chi_a {
        return Err(format!("Euler characteristic {chi_h} from cohomology, {chi_a} from spaces"));
    }
    if real {
        for &(p, q) in dc.spaces().keys() {
            let t = |f: Flavor, b| c.table(f).get(b);
            if t(Flavor::Dolbeault, (p, q)) != t(Flavor::Del, (q, p))
                || t(Flavor::BottChern, (p, q)) != t(Flavor::BottChern, (q, p))
                || t(Flavor::Aeppli, (p, q)) != t(Flavor::Aeppli, (q, p))
            {
                return Err(format!("real-structure symmetry fails at ({p},{q})"));
            }
        }
    }
    Ok(())
}

/// Invertible lower-times-upper triangular Gaussian-integer matrix.
pub fn unimodular(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, Scalar::gauss(rng.gen_range(-1..=1), rng.gen_range(-1..=1)));
            u.set(j, i, Scalar::gauss(rng.gen_range(-1..=1), rng.gen_range(-1..=1)));
        }
    }
    l.mul(&u).unwrap()
}

/// Random bounded cochain complex in a scrambled basis, together with its
/// cohomology as fixed by construction.
pub fn random_simple_complex(rng: &mut impl Rng) -> (SimpleComplex, BTreeMap<i64, usize>) {
    let top = rng.gen_range(0..=3i64);
    let points: Vec<usize> = (0..=top).map(|_| rng.gen_range(0..=2)).collect();
    let pairs: Vec<usize> = (0..top).map(|_| rng.gen_range(0..=2)).collect();
    let dim = |k: i64| -> usize {
        let k = k as usize;
        points[k] + pairs.get(k).copied().unwrap_or(0) + if k > 0 { pairs[k - 1] } else { 0 }
    };
    let mut c = SimpleComplex::new((0..=top).map(|k| (k, dim(k))));
    let bases: Vec<Matrix> = (0..=top).map(|k| unimodular(rng, dim(k))).collect();
    for k in 0..top {
        // basis of degree k: points, then sources of pairs k, then targets of pairs k−1
        let mut d = Matrix::zeros(dim(k + 1), dim(k));
        let src0 = points[k as usize];
        let tgt0 = points[k as usize + 1] + pairs.get(k as usize + 1).copied().unwrap_or(0);
        for j in 0..pairs[k as usize] {
            d.set(tgt0 + j, src0 + j, Scalar::ONE);
        }
        let inv = bases[k as usize].inverse().unwrap();
        let scrambled = bases[k as usize + 1].mul(&d).unwrap().mul(&inv).unwrap();
        c.set_d(k, scrambled).unwrap();
    }
    let h = (0..=top).filter(|&k| points[k as usize] > 0).map(|k| (k, points[k as usize])).collect();
    (c, h)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
