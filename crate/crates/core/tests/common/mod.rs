#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use dualcover::braidmono::{crossings_to_braid, BraidWord};
use dualcover::curvegeom::{singular_points, PlaneCurve, SingKind};
use dualcover::exactpoly::Polynomial;
use dualcover::monorep::Perm;
use dualcover::numtrack::{generic_frame, loop_system, track_loop, BranchValue, LoopSystem, PencilFrame};

pub const CORPUS: [&str; 6] = [
    "conic",
    "fermat-cubic",
    "random-cubic",
    "nodal-cubic",
    "smooth-quartic",
    "fermat-quartic",
];

pub fn corpus(name: &str) -> PlaneCurve {
    let path = format!("{}/../../data/curves/{name}.poly", env!("CARGO_MANIFEST_DIR"));
    PlaneCurve::from_file_text(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

pub fn rep_path(name: &str) -> String {
    format!("{}/../../data/reps/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

/// A generic pencil for projecting `c` itself, with its loop system.
pub fn source_frame(c: &PlaneCurve, seed: u64) -> Result<(PencilFrame, Vec<BranchValue>, LoopSystem), String> {
    let sp = singular_points(c).map_err(|e| e.to_string())?;
    let nodes = sp.iter().filter(|p| p.kind == SingKind::Node).count();
    let (fr, bv) = generic_frame(c, seed, nodes, 0).map_err(|e| e.to_string())?;
    let values: Vec<_> = bv.iter().map(|b| b.value).collect();
    let ls = loop_system(&values, fr.base(), seed).map_err(|e| e.to_string())?;
    Ok((fr, bv, ls))
}

/// Each petal tracked backwards gives the inverse braid, and the composite
/// loop gives the product of the petal braids with trivial permutation and
/// exponent sum `d(d - 1)`.
pub fn check_loops(c: &PlaneCurve, seed: u64) -> Result<(), String> {
    let (fr, _, ls) = source_frame(c, seed)?;
    let d = c.degree() as usize;
    let mut product = BraidWord::identity(d);
    for (k, arc) in ls.arcs.iter().enumerate() {
        let fwd = track_loop(c, &fr, arc).map_err(|e| e.to_string())?;
        let back = track_loop(c, &fr, &arc.reversed()).map_err(|e| e.to_string())?;
        let fwd = crossings_to_braid(&fwd).map_err(|e| e.to_string())?;
        let back = crossings_to_braid(&back).map_err(|e| e.to_string())?;
        if !back.equals(&fwd.inverse()) {
            return Err(format!("petal {k}: reversed loop is not the inverse"));
        }
        product = product.mul(&fwd);
    }
    let all = track_loop(c, &fr, &ls.composite()).map_err(|e| e.to_string())?;
    if all.permutation.iter().enumerate().any(|(i, &j)| i != j) {
        return Err("composite loop permutes the roots".into());
    }
    let whole = crossings_to_braid(&all).map_err(|e| e.to_string())?;
    let full = (d * (d - 1)) as i64;
    if whole.exponent_sum() != full {
        return Err(format!("composite exponent sum {} instead of {full}", whole.exponent_sum()));
    }
    if !whole.equals(&product) {
        return Err("composite loop differs from the product of the petals".into());
    }
    Ok(())
}

/// Around every simple branch value the roots undergo a transposition; around
/// a line through a node they return to themselves.
pub fn check_simple_ramification(c: &PlaneCurve, seed: u64) -> Result<(), String> {
    let (fr, bv, ls) = source_frame(c, seed)?;
    for (k, arc) in ls.arcs.iter().enumerate() {
        let t = track_loop(c, &fr, arc).map_err(|e| e.to_string())?;
        let perm = Perm::from_images(t.permutation).map_err(|e| e.to_string())?;
        let ok = if bv[k].multiplicity == 1 {
            perm.is_transposition()
        } else {
            perm.is_identity()
        };
        if !ok {
            return Err(format!("petal {k} (multiplicity {}) acts by {perm}", bv[k].multiplicity));
        }
    }
    Ok(())
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        let piv = a[c][c].clone();
        d *= &piv;
        for r in c + 1..n {
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    d
}

/// Coefficients in the first variable (low to high) after setting the
/// second to `y0`.
pub fn specialize(p: &Polynomial, y0: &BigRational) -> Vec<BigRational> {
    let deg = p.degree_in(0) as usize;
    let mut c = vec![BigRational::zero(); deg + 1];
    for (m, a) in p.terms() {
        let mut t = a.clone();
        for _ in 0..m.0[1] {
            t *= y0;
        }
        c[m.0[0] as usize] += t;
    }
    c
}

/// Determinant of the Sylvester matrix of two univariate polynomials given
/// by coefficients from low to high degree.
pub fn sylvester_det(f: &[BigRational], g: &[BigRational]) -> BigRational {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut a = vec![vec![BigRational::zero(); size]; size];
    for r in 0..n {
        for (j, c) in f.iter().rev().enumerate() {
            a[r][r + j] = c.clone();
        }
    }
    for r in 0..m {
        for (j, c) in g.iter().rev().enumerate() {
            a[n + r][r + j] = c.clone();
        }
    }
    det(a)
}

/// Brute-force count of transitive transposition tuples of length `m` in
/// `S_k` with product one, up to simultaneous conjugation.
pub fn brute_force_classes(k: usize, m: usize) -> usize {
    let trans: Vec<Vec<usize>> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .map(|(a, b)| {
            let mut p: Vec<usize> = (0..k).collect();
            p.swap(a, b);
            p
        })
        .collect();
    let perms = all_perms(k);
    let mut seen = std::collections::BTreeSet::new();
    let mut idx = vec![0usize; m];
    loop {
        let tuple: Vec<&Vec<usize>> = idx.iter().map(|&i| &trans[i]).collect();
        if product_is_identity(&tuple, k) && transitive(&tuple, k) {
            let canon = perms
                .iter()
                .map(|g| tuple.iter().map(|t| conjugate(t, g)).collect::<Vec<_>>())
                .min()
                .unwrap();
            seen.insert(canon);
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return seen.len();
            }
            idx[pos] += 1;
            if idx[pos] < trans.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn all_perms(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(k - 1) {
        for i in 0..k {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

fn product_is_identity(t: &[&Vec<usize>], k: usize) -> bool {
    let mut x: Vec<usize> = (0..k).collect();
    for p in t {
        x = x.iter().map(|&i| p[i]).collect();
    }
    x.iter().enumerate().all(|(i, &j)| i == j)
}

fn transitive(t: &[&Vec<usize>], k: usize) -> bool {
    let mut reach = vec![false; k];
    reach[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for p in t {
            for i in 0..k {
                if reach[i] && !reach[p[i]] {
                    reach[p[i]] = true;
                    changed = true;
                }
            }
        }
    }
    reach.iter().all(|&r| r)
}

/// `g t g^-1` on images.
fn conjugate(t: &[usize], g: &[usize]) -> Vec<usize> {
    let mut out = vec![0; t.len()];
    for i in 0..t.len() {
        out[g[i]] = g[t[i]];
    }
    out
}
