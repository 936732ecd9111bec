//! Simply branched covers of the line: Riemann–Hurwitz bookkeeping, exact
//! counts of transposition tuples up to conjugation, enumeration of
//! canonical representatives, and classification of all covers with the
//! branch locus of a braid monodromy factorization.

pub mod characters;
mod enumerate;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::braidmono::BraidMonodromyFactorization;
use crate::monorep::{verdict, MonodromyRep, Outcome, Perm, RepError, VerdictMeta};

use characters::{character, class_size, dimension, factorial, partitions};
pub use enumerate::{enumerate_classes, enumerate_classes_with_budget, DEFAULT_BUDGET};

pub const MAX_SHEETS: usize = 6;
pub const MAX_LENGTH: usize = 20;

#[derive(Debug, Error)]
pub enum HurwitzError {
    #[error("branch count {0} is odd")]
    Parity(usize),
    #[error("{m} branch points are too few for a connected {k}-sheeted cover")]
    NegativeGenus { k: usize, m: usize },
    #[error("degree must be at least 1")]
    Degree,
    #[error("bound exceeded: {0}")]
    Bound(String),
    #[error("enumeration budget exceeded after {0} nodes")]
    Budget(u64),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Genus of a connected `k`-sheeted cover of the line simply branched over
/// `m` points.
pub fn rh_genus(k: usize, m: usize) -> Result<usize, HurwitzError> {
    if m % 2 == 1 {
        return Err(HurwitzError::Parity(m));
    }
    if k == 0 || m + 2 < 2 * k {
        return Err(HurwitzError::NegativeGenus { k, m });
    }
    Ok((m + 2 - 2 * k) / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliDimensions {
    /// Dimension of the space of degree `d` plane curves modulo `PGL_3`.
    pub m_d: i64,
    /// Number of critical values of a generic projection, `d(d-1)`.
    pub critical_values: u64,
}

pub fn moduli_dimensions(d: u32) -> Result<ModuliDimensions, HurwitzError> {
    if d == 0 {
        return Err(HurwitzError::Degree);
    }
    let d = d as i64;
    Ok(ModuliDimensions {
        m_d: (d * d + 3 * d - 6) / 2,
        critical_values: (d * (d - 1)) as u64,
    })
}

fn check_bounds(k: usize, m: usize) -> Result<(), HurwitzError> {
    if k > MAX_SHEETS || m > MAX_LENGTH {
        return Err(HurwitzError::Bound(format!(
            "k = {k}, m = {m} (limits {MAX_SHEETS} sheets, length {MAX_LENGTH})"
        )));
    }
    Ok(())
}

/// Number of `m`-tuples of transpositions of `S_n` with product one, by the
/// Frobenius formula: `sum_lambda dim^2 f_lambda^m / n!` where `f_lambda` is
/// the central character of the class of transpositions.
pub fn identity_product_tuples(n: usize, m: usize) -> BigInt {
    let pairs = (n * n.saturating_sub(1) / 2) as i64;
    let mut tau = vec![1; n];
    if n >= 2 {
        tau.truncate(n - 1);
        tau[0] = 2;
    }
    let mut total = BigInt::zero();
    for l in partitions(n) {
        let d = dimension(&l);
        let f = if n >= 2 {
            let num = pairs * character(&l, &tau);
            debug_assert_eq!(num % d, 0);
            num / d
        } else {
            0
        };
        total += BigInt::from(d * d) * num_traits::pow(BigInt::from(f), m);
    }
    let (q, r) = total.div_rem(&BigInt::from(factorial(n)));
    debug_assert!(r.is_zero());
    q
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * (n - i) / (i + 1);
    }
    b
}

/// Transitive tuples among [`identity_product_tuples`], for all `n <= k`,
/// `j <= m`: the orbit of the first point is split off, which inverts the
/// exponential relation between all and connected covers.
fn transitive_table(k: usize, m: usize) -> Vec<Vec<BigInt>> {
    let all: Vec<Vec<BigInt>> = (0..=k)
        .map(|n| (0..=m).map(|j| identity_product_tuples(n, j)).collect())
        .collect();
    let mut t = vec![vec![BigInt::zero(); m + 1]; k + 1];
    for n in 1..=k {
        for j in 0..=m {
            let mut v = all[n][j].clone();
            for s in 1..=n {
                for i in 0..=j {
                    if (s, i) == (n, j) || t[s][i].is_zero() {
                        continue;
                    }
                    v -= binomial(n - 1, s - 1) * binomial(j, i) * &t[s][i] * &all[n - s][j - i];
                }
            }
            t[n][j] = v;
        }
    }
    t
}

pub fn transitive_tuples(k: usize, m: usize) -> BigInt {
    transitive_table(k, m)[k][m].clone()
}

/// Set partitions of `{0, .., k-1}` as block labels (restricted growth).
fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    fn rec(labels: &mut Vec<usize>, k: usize, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if labels.len() == k {
            out.push(labels.clone());
            return;
        }
        for b in 0..=blocks {
            labels.push(b);
            rec(labels, k, blocks.max(b + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), k, 0, &mut out);
    out
}

/// `S_k` with its elements indexed and right multiplication by
/// transpositions tabulated.
pub(crate) struct SymGroup {
    pub k: usize,
    pub elems: Vec<Perm>,
    pub trans: Vec<Perm>,
    /// `step[e][t]` is the index of `elems[e].then(trans[t])`.
    pub step: Vec<Vec<usize>>,
    pub identity: usize,
}

impl SymGroup {
    pub fn new(k: usize) -> Self {
        let elems = Perm::all(k);
        let index: HashMap<Perm, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut trans: Vec<Perm> = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| Perm::transposition(k, a, b)))
            .collect();
        trans.sort();
        let step = elems
            .iter()
            .map(|e| trans.iter().map(|t| index[&e.then(t)]).collect())
            .collect();
        SymGroup {
            k,
            identity: index[&Perm::identity(k)],
            elems,
            trans,
            step,
        }
    }

    /// Tuples of length `m` drawn from the transpositions `allowed` (indices
    /// into `trans`) with product one.
    fn identity_product_count(&self, allowed: &[usize], m: usize) -> u128 {
        let mut v = vec![0u128; self.elems.len()];
        v[self.identity] = 1;
        for _ in 0..m {
            let mut w = vec![0u128; v.len()];
            for (e, &c) in v.iter().enumerate() {
                if c != 0 {
                    for &t in allowed {
                        w[self.step[e][t]] += c;
                    }
                }
            }
            v = w;
        }
        v[self.identity]
    }

    /// Transitive identity-product tuples fixed by conjugation with `g`,
    /// counted by Möbius inversion over the set-partition lattice.
    fn fixed_transitive(&self, g: &Perm, m: usize) -> BigInt {
        let mut by_mask: HashMap<Vec<usize>, BigInt> = HashMap::new();
        for labels in set_partitions(self.k) {
            let r = labels.iter().max().map_or(0, |b| b + 1);
            let mu = factorial(r - 1) as i64 * if r % 2 == 1 { 1 } else { -1 };
            let allowed: Vec<usize> = (0..self.trans.len())
                .filter(|&t| {
                    let mv = self.trans[t].moved();
                    labels[mv[0]] == labels[mv[1]] && self.trans[t].commutes_with(g)
                })
                .collect();
            *by_mask.entry(allowed).or_insert_with(BigInt::zero) += mu;
        }
        let mut total = BigInt::zero();
        for (allowed, coeff) in by_mask {
            if !coeff.is_zero() {
                total += coeff * BigInt::from(self.identity_product_count(&allowed, m));
            }
        }
        total
    }
}

/// Counts behind [`count_classes`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCount {
    pub sheets: usize,
    pub length: usize,
    /// All tuples of transpositions with product one.
    pub identity_product: String,
    /// Those generating a transitive group.
    pub transitive: String,
    /// Transitive tuples up to simultaneous conjugation.
    pub classes: u128,
}

/// Transitive identity-product transposition tuples of length `m` in
/// `S_k`, up to simultaneous conjugation. Exact throughout: characters for
/// the total, inclusion–exclusion for transitivity, and Burnside over all
/// conjugacy classes with fixed points counted directly.
pub fn count_classes(k: usize, m: usize) -> Result<u128, HurwitzError> {
    Ok(class_count(k, m)?.classes)
}

pub fn class_count(k: usize, m: usize) -> Result<ClassCount, HurwitzError> {
    check_bounds(k, m)?;
    let transitive = transitive_tuples(k, m);
    let mut burnside = transitive.clone();
    if k >= 2 {
        let group = SymGroup::new(k);
        for mu in partitions(k) {
            if mu.iter().all(|&p| p == 1) {
                continue;
            }
            let mut images = Vec::with_capacity(k);
            let mut start = 0;
            for &p in &mu {
                images.extend((start..start + p).map(|i| if i + 1 == start + p { start } else { i + 1 }));
                start += p;
            }
            let g = Perm::from_images(images).expect("cycle type representative");
            burnside += BigInt::from(class_size(&mu)) * group.fixed_transitive(&g, m);
        }
    }
    let (classes, rem) = burnside.div_rem(&BigInt::from(factorial(k)));
    if !rem.is_zero() {
        return Err(HurwitzError::Rep(RepError::Integrity(format!(
            "Burnside sum {burnside} not divisible by {k}!"
        ))));
    }
    Ok(ClassCount {
        sheets: k,
        length: m,
        identity_product: identity_product_tuples(k, m).to_string(),
        transitive: transitive.to_string(),
        classes: classes.to_u128().expect("class count fits in u128"),
    })
}

/// A connected simply branched cover of the line, by its canonical
/// monodromy tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HurwitzClass {
    pub sheets: usize,
    pub length: usize,
    pub representative: MonodromyRep,
    pub genus: usize,
    /// No relabelling of the sheets other than the identity commutes with
    /// every image.
    pub automorphism_free: bool,
}

impl HurwitzClass {
    pub(crate) fn new(rep: MonodromyRep) -> Self {
        let (k, m) = (rep.sheets(), rep.images().len());
        let automorphism_free = Perm::all(k)
            .iter()
            .filter(|g| !g.is_identity())
            .all(|g| rep.images().iter().any(|p| !p.commutes_with(g)));
        HurwitzClass {
            sheets: k,
            length: m,
            genus: rh_genus(k, m).unwrap_or(0),
            representative: rep,
            automorphism_free,
        }
    }
}

/// One row of [`classify_classes_over`].
#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub representative: MonodromyRep,
    pub extends: bool,
    pub good: usize,
    pub bad: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassTable {
    pub sheets: usize,
    pub length: usize,
    pub rows: Vec<ClassRow>,
}

impl ClassTable {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.rows.iter().filter(|r| r.outcome == outcome).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} classes of {}-sheeted covers with {} branch points\n",
            self.rows.len(),
            self.sheets,
            self.length
        );
        for o in [
            Outcome::EquivalentToProjection,
            Outcome::ExtendsSingularTotalSpace,
            Outcome::ExcludedCase,
            Outcome::NotExtendable,
        ] {
            s += &format!("  {o:?}: {}\n", self.count(o));
        }
        for r in self.rows.iter().filter(|r| r.extends) {
            let gens: Vec<String> = r.representative.images().iter().map(|p| p.to_string()).collect();
            s += &format!("  {} good {} bad {} -> {:?}\n", gens.join(" "), r.good, r.bad, r.outcome);
        }
        s
    }
}

/// Run the extendability verdict on every class of `k`-sheeted covers
/// branched over the branch values of `fact`.
pub fn classify_classes_over(
    fact: &BraidMonodromyFactorization,
    k: usize,
    meta: &VerdictMeta,
) -> Result<ClassTable, HurwitzError> {
    let m = fact.strands;
    let mut rows = Vec::new();
    for class in enumerate_classes(k, m)? {
        let v = verdict(&class.representative, fact, meta)?;
        let bad = v.bad_points().count();
        rows.push(ClassRow {
            extends: v.factors_through_plane,
            good: v.points.len() - bad,
            bad,
            outcome: v.outcome,
            representative: class.representative,
        });
    }
    Ok(ClassTable { sheets: k, length: m, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_formula() {
        assert_eq!(rh_genus(3, 6).unwrap(), 1);
        assert_eq!(rh_genus(4, 12).unwrap(), 3);
        assert_eq!(rh_genus(2, 2).unwrap(), 0);
        assert!(matches!(rh_genus(3, 5), Err(HurwitzError::Parity(5))));
        assert!(matches!(rh_genus(4, 4), Err(HurwitzError::NegativeGenus { .. })));
    }

    #[test]
    fn moduli() {
        let v: Vec<(i64, u64)> = (3..=5)
            .map(|d| {
                let m = moduli_dimensions(d).unwrap();
                (m.m_d, m.critical_values)
            })
            .collect();
        assert_eq!(v, [(6, 6), (11, 12), (17, 20)]);
        assert!(moduli_dimensions(0).is_err());
    }

    #[test]
    fn frobenius_small_cases() {
        // (1 2)^m = 1 exactly when m is even
        assert_eq!(identity_product_tuples(2, 4), BigInt::from(1));
        assert_eq!(identity_product_tuples(2, 3), BigInt::from(0));
        // pairs (t, t) in S_3
        assert_eq!(identity_product_tuples(3, 2), BigInt::from(3));
        assert_eq!(identity_product_tuples(1, 0), BigInt::from(1));
    }

    #[test]
    fn set_partition_counts() {
        let bell: Vec<usize> = (0..=6).map(|k| set_partitions(k).len()).collect();
        assert_eq!(bell, [1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn known_class_counts() {
        assert_eq!(count_classes(2, 2).unwrap(), 1);
        assert_eq!(count_classes(2, 6).unwrap(), 1);
        assert_eq!(count_classes(3, 4).unwrap(), 4);
        assert_eq!(count_classes(3, 6).unwrap(), 40);
        assert_eq!(count_classes(4, 6).unwrap(), 120);
        assert_eq!(count_classes(3, 5).unwrap(), 0);
        assert_eq!(count_classes(4, 4).unwrap(), 0);
    }

    #[test]
    fn genus_zero_matches_closed_form() {
        // connected genus 0 covers: k^(k-3) (2k-2)! / k!
        for k in 3..=6usize {
            let closed = (k as u128).pow(k as u32 - 3) * factorial(2 * k - 2) / factorial(k);
            assert_eq!(count_classes(k, 2 * k - 2).unwrap(), closed, "k = {k}");
        }
    }

    #[test]
    fn bounds_enforced() {
        assert!(matches!(count_classes(7, 4), Err(HurwitzError::Bound(_))));
        assert!(matches!(count_classes(3, 22), Err(HurwitzError::Bound(_))));
    }
}
