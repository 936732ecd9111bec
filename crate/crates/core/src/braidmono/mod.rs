//! Braid words from tracked strands and braid monodromy factorizations.

pub mod free;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curvegeom::PlaneCurve;
use crate::numtrack::{self, loop_system, BranchValue, PencilFrame, Path, Piece, TrackError, TrackedStrands};

pub use free::{braid_action, braid_action_on_meridian, FreeWord};

#[derive(Debug, Error)]
pub enum BraidError {
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error("generator index {0} out of range for {1} strands")]
    Index(usize, usize),
    #[error("braid word does not match the tracked strand permutation")]
    PermutationMismatch,
    #[error("factor {index} is not a power of a single half twist: {word}")]
    BandForm { index: usize, word: String },
    #[error("factor {index}: tracking gives exponent {tracked}, geometry gives {expected}")]
    KindMismatch { index: usize, tracked: i64, expected: u32 },
    #[error("full twist check failed: {0}")]
    FullTwist(String),
    #[error("factor index {0} out of range")]
    FactorIndex(usize),
}

/// A word in the Artin generators; letter `(i, s)` is `sigma_i^s`, the
/// counterclockwise half twist of positions `i, i + 1` for `s = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i8)>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    strands: usize,
    /// `i` for `sigma_i`, `-i` for its inverse.
    letters: Vec<i64>,
}

impl From<BraidWord> for RawBraid {
    fn from(b: BraidWord) -> Self {
        RawBraid {
            strands: b.strands,
            letters: b.letters.iter().map(|&(i, s)| i as i64 * s as i64).collect(),
        }
    }
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = BraidError;

    fn try_from(r: RawBraid) -> Result<Self, BraidError> {
        let letters = r
            .letters
            .iter()
            .map(|&l| (l.unsigned_abs() as usize, if l < 0 { -1 } else { 1 }))
            .collect();
        BraidWord::new(r.strands, letters)
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Result<Self, BraidError> {
        let mut w = BraidWord::identity(strands);
        for (i, s) in letters {
            if i == 0 || i >= strands || (s != 1 && s != -1) {
                return Err(BraidError::Index(i, strands));
            }
            w.push((i, s));
        }
        Ok(w)
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// `sigma_i^e`.
    pub fn sigma(strands: usize, i: usize, e: i32) -> Result<Self, BraidError> {
        let s = if e < 0 { -1 } else { 1 };
        BraidWord::new(strands, vec![(i, s); e.unsigned_abs() as usize])
    }

    fn push(&mut self, l: (usize, i8)) {
        if self.letters.last() == Some(&(l.0, -l.1)) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &BraidWord) -> BraidWord {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        (0..k).fold(BraidWord::identity(self.strands), |acc, _| acc.mul(self))
    }

    /// `self * x * self^-1`.
    pub fn conjugate(&self, x: &BraidWord) -> BraidWord {
        self.mul(x).mul(&self.inverse())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, s)| s as i64).sum()
    }

    /// The strand starting at position `p` (0-based) ends at position
    /// `permutation()[p]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.strands).collect();
        for &(i, _) in &self.letters {
            order.swap(i - 1, i);
        }
        let mut out = vec![0; self.strands];
        for (p, &k) in order.iter().enumerate() {
            out[k] = p;
        }
        out
    }

    /// Equality in the braid group, decided through the (faithful) action
    /// on the free group.
    pub fn equals(&self, other: &BraidWord) -> bool {
        self.strands == other.strands && braid_action(self) == braid_action(other)
    }

    /// `Delta^2`, the full twist.
    pub fn full_twist(strands: usize) -> BraidWord {
        let mut w = BraidWord::identity(strands);
        for _ in 0..strands {
            for i in 1..strands {
                w.push((i, 1));
            }
        }
        w
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(i, s)| if s > 0 { format!("s{i}") } else { format!("s{i}^-1") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Letters in time order. Fails if the word's permutation disagrees with the
/// tracked one.
pub fn crossings_to_braid(strands: &TrackedStrands) -> Result<BraidWord, BraidError> {
    let m = strands.start.len();
    let w = BraidWord::new(m, strands.crossings.iter().map(|c| (c.position, c.sign)).collect())?;
    if w.permutation() != strands.permutation {
        return Err(BraidError::PermutationMismatch);
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LocalKind {
    Tangency,
    NodeLine,
    CuspLine,
}

impl LocalKind {
    pub fn exponent(self) -> u32 {
        match self {
            LocalKind::Tangency => 1,
            LocalKind::NodeLine => 2,
            LocalKind::CuspLine => 3,
        }
    }

    fn from_exponent(e: i64) -> Option<LocalKind> {
        match e {
            1 => Some(LocalKind::Tangency),
            2 => Some(LocalKind::NodeLine),
            3 => Some(LocalKind::CuspLine),
            _ => None,
        }
    }
}

/// Kind of a conjugate of `sigma_1^e`, read off the exponent sum and the
/// permutation (a transposition for odd `e`, trivial for even `e`).
pub fn local_braid_kind(factor: &BraidWord) -> Result<LocalKind, BraidError> {
    let bad = || BraidError::BandForm {
        index: 0,
        word: factor.to_string(),
    };
    let e = factor.exponent_sum();
    let kind = LocalKind::from_exponent(e).ok_or_else(bad)?;
    let moved = factor.permutation().iter().enumerate().filter(|(p, &q)| *p != q).count();
    if moved != if e % 2 == 1 { 2 } else { 0 } {
        return Err(bad());
    }
    Ok(kind)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BraidMonodromyFactorization {
    pub strands: usize,
    pub factors: Vec<BraidWord>,
    pub local_kinds: Vec<LocalKind>,
    /// Factor `k` is `conjugators[k] * sigma_{cores[k]}^{e} * conjugators[k]^-1`.
    pub conjugators: Vec<BraidWord>,
    pub cores: Vec<usize>,
    pub branch_values: Vec<(f64, f64)>,
    pub frame: PencilFrame,
}

impl BraidMonodromyFactorization {
    pub fn product(&self) -> BraidWord {
        self.factors
            .iter()
            .fold(BraidWord::identity(self.strands), |acc, f| acc.mul(f))
    }

    /// Exponent sum `m(m - 1)` and trivial permutation of the product.
    pub fn check_full_twist(&self) -> Result<(), BraidError> {
        let p = self.product();
        let m = self.strands as i64;
        if p.exponent_sum() != m * (m - 1) {
            return Err(BraidError::FullTwist(format!(
                "exponent sum {} instead of {}",
                p.exponent_sum(),
                m * (m - 1)
            )));
        }
        if p.permutation().iter().enumerate().any(|(i, &j)| i != j) {
            return Err(BraidError::FullTwist("product permutes the strands".into()));
        }
        Ok(())
    }

    pub fn count(&self, kind: LocalKind) -> usize {
        self.local_kinds.iter().filter(|&&k| k == kind).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("factorization serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// `(.., b_i, b_{i+1}, ..) -> (.., b_i b_{i+1} b_i^-1, b_i, ..)`, 0-based `i`.
pub fn hurwitz_move(fact: &BraidMonodromyFactorization, i: usize) -> Result<BraidMonodromyFactorization, BraidError> {
    if i + 1 >= fact.factors.len() {
        return Err(BraidError::FactorIndex(i));
    }
    let (a, b) = (i, i + 1);
    let mut out = fact.clone();
    let bi = &fact.factors[a];
    out.factors[a] = bi.conjugate(&fact.factors[b]);
    out.factors[b] = bi.clone();
    out.conjugators[a] = bi.mul(&fact.conjugators[b]);
    out.conjugators[b] = fact.conjugators[a].clone();
    out.cores.swap(a, b);
    out.local_kinds.swap(a, b);
    out.branch_values.swap(a, b);
    Ok(out)
}

/// Inverse of [`hurwitz_move`]:
/// `(.., b_i, b_{i+1}, ..) -> (.., b_{i+1}, b_{i+1}^-1 b_i b_{i+1}, ..)`.
pub fn hurwitz_move_inverse(
    fact: &BraidMonodromyFactorization,
    i: usize,
) -> Result<BraidMonodromyFactorization, BraidError> {
    if i + 1 >= fact.factors.len() {
        return Err(BraidError::FactorIndex(i));
    }
    let (a, b) = (i, i + 1);
    let mut out = fact.clone();
    let bj = &fact.factors[b];
    out.factors[a] = bj.clone();
    out.factors[b] = bj.inverse().conjugate(&fact.factors[a]);
    out.conjugators[a] = fact.conjugators[b].clone();
    out.conjugators[b] = bj.inverse().mul(&fact.conjugators[a]);
    out.cores.swap(a, b);
    out.local_kinds.swap(a, b);
    out.branch_values.swap(a, b);
    Ok(out)
}

struct PetalBraid {
    conjugator: BraidWord,
    core: usize,
    exponent: i64,
    pure: bool,
    circle: BraidWord,
}

/// Track one petal, shrinking the circle until its braid is literally a
/// conjugate of a positive power of one generator.
fn petal_braid(fam: &numtrack::PolyFamily, petal: &Path, direction: f64) -> Result<PetalBraid, BraidError> {
    let (base, center, radius) = match (petal.pieces[0], petal.pieces[1]) {
        (Piece::Segment { from, .. }, Piece::Arc { center, radius, .. }) => (
            Complex64::new(from.0, from.1),
            Complex64::new(center.0, center.1),
            radius,
        ),
        _ => unreachable!("petals are stem, circle, stem"),
    };
    let mut last = None;
    for shrink in [1.0, 0.1, 0.01] {
        let pb = petal_braid_once(fam, &numtrack::petal(base, center, radius * shrink), direction)?;
        if pb.pure {
            return Ok(pb);
        }
        last = Some(pb);
    }
    Ok(last.expect("at least one attempt"))
}

fn petal_braid_once(fam: &numtrack::PolyFamily, petal: &Path, direction: f64) -> Result<PetalBraid, BraidError> {
    let stem = Path {
        pieces: vec![petal.pieces[0]],
    };
    let circle = Path {
        pieces: vec![petal.pieces[1]],
    };
    let start = fam.roots_at(stem.start(), direction)?;
    let a = numtrack::track(fam, &stem, &start, direction)?;
    let conjugator = BraidWord::new(start.len(), a.crossings.iter().map(|c| (c.position, c.sign)).collect())?;
    let mut entry = a.end.clone();
    numtrack::track::sort_along(&mut entry, direction);
    let c = numtrack::track(fam, &circle, &entry, direction)?;
    let circle = crossings_to_braid(&c)?;
    let split = band_split(&circle);
    let (conjugator, core, pure) = match split {
        Some((b, i)) => (conjugator.mul(&b), i, true),
        None => (conjugator, 0, false),
    };
    Ok(PetalBraid {
        conjugator,
        core,
        exponent: circle.exponent_sum(),
        pure,
        circle,
    })
}

/// Write `w` as `b * sigma_i^e * b^-1` with `e` its exponent sum: first by
/// the literal shape of the letters, then with `b` a prefix of `w` and
/// equality checked in the braid group.
fn band_split(w: &BraidWord) -> Option<(BraidWord, usize)> {
    if let Some(s) = literal_band_split(w) {
        return Some(s);
    }
    let e = w.exponent_sum();
    if !(1..=3).contains(&e) {
        return None;
    }
    for p in 0..=w.len() {
        let b = BraidWord::new(w.strands(), w.letters()[..p].to_vec()).ok()?;
        for i in 1..w.strands() {
            let core = BraidWord::sigma(w.strands(), i, e as i32).ok()?;
            if b.conjugate(&core).equals(w) {
                return Some((b, i));
            }
        }
    }
    None
}

fn literal_band_split(w: &BraidWord) -> Option<(BraidWord, usize)> {
    let l = w.letters();
    let n = l.len();
    for p in 0..n / 2 + 1 {
        let (head, rest) = l.split_at(p);
        if rest.len() < p + 1 {
            break;
        }
        let (mid, tail) = rest.split_at(rest.len() - p);
        let i = mid[0].0;
        if mid.iter().all(|&x| x == (i, 1)) && tail.iter().rev().zip(head).all(|(a, b)| a.0 == b.0 && a.1 == -b.1) {
            return Some((BraidWord::new(w.strands(), head.to_vec()).ok()?, i));
        }
    }
    None
}

/// Braid monodromy of `c` for the frame, with branch values from
/// [`numtrack::branch_values`].
pub fn braid_monodromy(c: &PlaneCurve, frame: &PencilFrame) -> Result<BraidMonodromyFactorization, BraidError> {
    let bv = numtrack::branch_values(c, frame)?;
    braid_monodromy_with(c, frame, &bv)
}

/// Braid monodromy for known branch values (in loop order). Petals are
/// tracked in parallel; kinds come from the discriminant multiplicities and
/// must agree with the tracked exponents.
pub fn braid_monodromy_with(
    c: &PlaneCurve,
    frame: &PencilFrame,
    bv: &[BranchValue],
) -> Result<BraidMonodromyFactorization, BraidError> {
    let fam = frame.family(c)?;
    let m = fam.degree();
    let values: Vec<Complex64> = bv.iter().map(|b| b.value).collect();
    let ls = loop_system(&values, frame.base(), frame.seed)?;
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(ls.arcs.len().max(1));
    let results: Vec<Result<PetalBraid, BraidError>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let (fam, arcs) = (&fam, &ls.arcs);
                s.spawn(move || {
                    (t..arcs.len())
                        .step_by(threads)
                        .map(|k| (k, petal_braid(fam, &arcs[k], frame.direction)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let mut all: Vec<_> = handles.into_iter().flat_map(|h| h.join().expect("petal thread")).collect();
        all.sort_by_key(|(k, _)| *k);
        all.into_iter().map(|(_, r)| r).collect()
    });

    let mut fact = BraidMonodromyFactorization {
        strands: m,
        factors: Vec::new(),
        local_kinds: Vec::new(),
        conjugators: Vec::new(),
        cores: Vec::new(),
        branch_values: ls.branch_values.clone(),
        frame: frame.clone(),
    };
    for (k, r) in results.into_iter().enumerate() {
        let pb = r?;
        let b = &bv[ls.order[k]];
        if !pb.pure {
            return Err(BraidError::BandForm {
                index: k,
                word: pb.circle.to_string(),
            });
        }
        if pb.exponent != b.multiplicity as i64 {
            return Err(BraidError::KindMismatch {
                index: k,
                tracked: pb.exponent,
                expected: b.multiplicity,
            });
        }
        let kind = LocalKind::from_exponent(pb.exponent).expect("checked exponent");
        let core = BraidWord::sigma(m, pb.core, pb.exponent as i32)?;
        fact.factors.push(pb.conjugator.conjugate(&core));
        fact.local_kinds.push(kind);
        fact.conjugators.push(pb.conjugator);
        fact.cores.push(pb.core);
    }
    fact.check_full_twist()?;
    Ok(fact)
}
