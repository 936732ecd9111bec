//! Permutation representations of the fundamental group of a punctured
//! line, the relations imposed by a braid monodromy factorization, and the
//! extendability verdict.

pub mod perm;
mod projection;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braidmono::{braid_action_on_meridian, BraidError, BraidMonodromyFactorization, BraidWord, FreeWord, LocalKind};
use crate::curvegeom::CurveError;
use crate::numtrack::TrackError;

pub use perm::Perm;
pub use projection::projection_monodromy;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("representation has {generators} generators, factorization has {strands} strands")]
    Mismatch { strands: usize, generators: usize },
    #[error("factor {0} is a simple tangency")]
    Tangency(usize),
    #[error("factor index {0} out of range")]
    Index(usize),
    #[error("integrity violation: {0}")]
    Integrity(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("search space too large: {0}")]
    SearchBound(String),
}

/// Images of the standard generators `x_1..x_m` (in loop order) acting on
/// `sheets` points; a path acts on the right, so a word is evaluated left to
/// right with [`Perm::then`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawRep", into = "RawRep")]
pub struct MonodromyRep {
    sheets: usize,
    images: Vec<Perm>,
}

#[derive(Serialize, Deserialize)]
struct RawRep {
    sheets: usize,
    generators: Vec<String>,
}

impl From<MonodromyRep> for RawRep {
    fn from(r: MonodromyRep) -> Self {
        RawRep {
            sheets: r.sheets,
            generators: r.images.iter().map(|p| p.to_string()).collect(),
        }
    }
}

impl TryFrom<RawRep> for MonodromyRep {
    type Error = RepError;

    fn try_from(r: RawRep) -> Result<Self, RepError> {
        let images = r
            .generators
            .iter()
            .map(|g| Perm::parse(g, r.sheets))
            .collect::<Result<Vec<_>, _>>()?;
        MonodromyRep::new(r.sheets, images)
    }
}

impl MonodromyRep {
    /// Checks that the images act on `sheets` points and that their product
    /// is the identity.
    pub fn new(sheets: usize, images: Vec<Perm>) -> Result<Self, RepError> {
        if images.iter().any(|p| p.degree() != sheets) {
            return Err(RepError::Format(format!("images must act on {sheets} points")));
        }
        let prod = images.iter().fold(Perm::identity(sheets), |a, p| a.then(p));
        if !prod.is_identity() {
            return Err(RepError::Format(format!("product of the images is {prod}, not the identity")));
        }
        Ok(MonodromyRep { sheets, images })
    }

    /// The one-sheeted cover.
    pub fn trivial(generators: usize) -> Self {
        MonodromyRep {
            sheets: 1,
            images: vec![Perm::identity(1); generators],
        }
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    pub fn is_simply_ramified(&self) -> bool {
        self.images.iter().all(Perm::is_transposition)
    }

    pub fn is_transitive(&self) -> bool {
        let mut reach = vec![false; self.sheets];
        let mut stack = vec![0];
        reach[0] = true;
        while let Some(i) = stack.pop() {
            for p in &self.images {
                let j = p.image(i);
                if !reach[j] {
                    reach[j] = true;
                    stack.push(j);
                }
            }
        }
        reach.into_iter().all(|r| r)
    }

    pub fn evaluate(&self, w: &FreeWord) -> Perm {
        let inv: Vec<Perm> = self.images.iter().map(Perm::inverse).collect();
        w.evaluate(&self.images, &inv, Perm::identity(self.sheets), |a, b| a.then(b))
    }

    pub fn conjugated(&self, g: &Perm) -> MonodromyRep {
        MonodromyRep {
            sheets: self.sheets,
            images: self.images.iter().map(|p| p.conjugate_by(g)).collect(),
        }
    }

    /// Lexicographically least image tuple over all relabellings of the
    /// sheets.
    pub fn canonical(&self) -> MonodromyRep {
        let mut best = self.clone();
        for g in Perm::all(self.sheets) {
            let c = self.conjugated(&g);
            if c.images < best.images {
                best = c;
            }
        }
        best
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rep serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, RepError> {
        serde_json::from_str(s).map_err(|e| RepError::Format(e.to_string()))
    }
}

/// Images of `x_1..x_m` under `rho o h_beta`, letter by letter: the last
/// letter of the braid acts first on the representation.
fn act(images: &[Perm], braid: &BraidWord) -> Vec<Perm> {
    let mut g = images.to_vec();
    for &(i, s) in braid.letters().iter().rev() {
        let (a, b) = (g[i - 1].clone(), g[i].clone());
        if s > 0 {
            g[i - 1] = a.then(&b).then(&a.inverse());
            g[i] = a;
        } else {
            g[i - 1] = b.clone();
            g[i] = b.inverse().then(&a).then(&b);
        }
    }
    g
}

fn check_sizes(rep: &MonodromyRep, fact: &BraidMonodromyFactorization) -> Result<(), RepError> {
    if rep.images.len() != fact.strands {
        return Err(RepError::Mismatch {
            strands: fact.strands,
            generators: rep.images.len(),
        });
    }
    Ok(())
}

/// Whether every relation `h_beta(x_j) = x_j` of the factorization holds in
/// the representation, that is, whether the cover of the line extends over
/// the plane minus the curve.
pub fn check_extension(rep: &MonodromyRep, fact: &BraidMonodromyFactorization) -> Result<bool, RepError> {
    check_sizes(rep, fact)?;
    Ok(fact.factors.iter().all(|b| act(&rep.images, b) == rep.images))
}

/// Same check through explicit free-group words.
pub fn check_extension_words(rep: &MonodromyRep, fact: &BraidMonodromyFactorization) -> Result<bool, RepError> {
    check_sizes(rep, fact)?;
    for b in &fact.factors {
        for j in 1..=fact.strands {
            if rep.evaluate(&braid_action_on_meridian(b, j)?) != rep.images[j - 1] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The two local meridians of the node or cusp of factor `i` (0-based):
/// the generators at the colliding positions, transported back along the
/// petal's stem.
pub fn local_meridian_pair(fact: &BraidMonodromyFactorization, i: usize) -> Result<(FreeWord, FreeWord), RepError> {
    let kind = *fact.local_kinds.get(i).ok_or(RepError::Index(i))?;
    if kind == LocalKind::Tangency {
        return Err(RepError::Tangency(i));
    }
    let back = fact.conjugators[i].inverse();
    let p = fact.cores[i];
    Ok((braid_action_on_meridian(&back, p)?, braid_action_on_meridian(&back, p + 1)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointClass {
    Good,
    Bad,
}

/// Good or bad node or cusp: a node is good when its meridians act by
/// disjoint transpositions and bad when by equal ones; a cusp is good when
/// they act by non-commuting transpositions and bad when by equal ones.
pub fn classify_branch_point(
    rep: &MonodromyRep,
    fact: &BraidMonodromyFactorization,
    i: usize,
) -> Result<PointClass, RepError> {
    check_sizes(rep, fact)?;
    let (a, b) = local_meridian_pair(fact, i)?;
    let (u, v) = (rep.evaluate(&a), rep.evaluate(&b));
    if !u.is_transposition() || !v.is_transposition() {
        return Err(RepError::Integrity(format!("meridians of factor {i} act by {u} and {v}")));
    }
    if u == v {
        return Ok(PointClass::Bad);
    }
    let disjoint = u.moved().iter().all(|p| !v.moved().contains(p));
    match (fact.local_kinds[i], disjoint) {
        (LocalKind::NodeLine, true) | (LocalKind::CuspLine, false) => Ok(PointClass::Good),
        (kind, _) => Err(RepError::Integrity(format!("{kind:?} meridians act by {u} and {v}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    NotExtendable,
    ExtendsSingularTotalSpace,
    EquivalentToProjection,
    ExcludedCase,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchPointStatus {
    /// 0-based factor index.
    pub factor: usize,
    pub branch_value: (f64, f64),
    pub kind: LocalKind,
    pub class: PointClass,
    pub meridian_images: (String, String),
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendabilityVerdict {
    pub factors_through_plane: bool,
    /// Every node and cusp line with its class.
    pub points: Vec<BranchPointStatus>,
    pub outcome: Outcome,
    pub notes: Vec<String>,
}

impl ExtendabilityVerdict {
    pub fn bad_points(&self) -> impl Iterator<Item = &BranchPointStatus> {
        self.points.iter().filter(|p| p.class == PointClass::Bad)
    }
}

/// Facts about the source curve the verdict depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictMeta {
    pub degree: u32,
    pub nodes: usize,
    pub generic: bool,
}

/// Decide what the cover `rep` of the line extends to.
pub fn verdict(
    rep: &MonodromyRep,
    fact: &BraidMonodromyFactorization,
    meta: &VerdictMeta,
) -> Result<ExtendabilityVerdict, RepError> {
    check_sizes(rep, fact)?;
    if !meta.generic {
        return Err(RepError::Refused("the curve is not general enough".into()));
    }
    if meta.degree <= 2 {
        return Err(RepError::Refused(format!("curve degree {} must exceed 2", meta.degree)));
    }
    if !rep.is_simply_ramified() {
        return Err(RepError::Refused("some generator does not act by a transposition".into()));
    }
    if !rep.is_transitive() {
        return Err(RepError::Refused("the cover is not connected".into()));
    }
    let mut notes = Vec::new();
    if !check_extension(rep, fact)? {
        notes.push("relations_fail".to_string());
        return Ok(ExtendabilityVerdict {
            factors_through_plane: false,
            points: Vec::new(),
            outcome: Outcome::NotExtendable,
            notes,
        });
    }
    notes.push("relations_hold".to_string());
    let mut points = Vec::new();
    for (i, &kind) in fact.local_kinds.iter().enumerate() {
        if kind == LocalKind::Tangency {
            continue;
        }
        let class = classify_branch_point(rep, fact, i)?;
        let (a, b) = local_meridian_pair(fact, i)?;
        points.push(BranchPointStatus {
            factor: i,
            branch_value: fact.branch_values[i],
            kind,
            class,
            meridian_images: (rep.evaluate(&a).to_string(), rep.evaluate(&b).to_string()),
        });
        if class == PointClass::Bad {
            notes.push(match kind {
                LocalKind::NodeLine => format!("bad_node:{i}:A1"),
                _ => format!("bad_cusp:{i}:A2"),
            });
        }
    }
    let outcome = if meta.degree == 3 && meta.nodes == 0 && rep.sheets == 4 {
        notes.push("excluded:smooth_cubic_degree_4".to_string());
        Outcome::ExcludedCase
    } else if points.iter().all(|p| p.class == PointClass::Good) {
        Outcome::EquivalentToProjection
    } else {
        Outcome::ExtendsSingularTotalSpace
    };
    Ok(ExtendabilityVerdict {
        factors_through_plane: true,
        points,
        outcome,
        notes,
    })
}

pub const DEFAULT_MAX_SHEETS: usize = 6;
const SEARCH_LIMIT: f64 = 5e7;

/// All connected, simply ramified `k`-sheeted covers satisfying the
/// relations of the factorization, one per conjugacy class, in canonical
/// form and sorted.
pub fn rep_search(fact: &BraidMonodromyFactorization, k: usize) -> Result<Vec<MonodromyRep>, RepError> {
    rep_search_bounded(fact, k, DEFAULT_MAX_SHEETS)
}

pub fn rep_search_bounded(
    fact: &BraidMonodromyFactorization,
    k: usize,
    max_sheets: usize,
) -> Result<Vec<MonodromyRep>, RepError> {
    let m = fact.strands;
    if k > max_sheets {
        return Err(RepError::SearchBound(format!("{k} sheets exceeds the bound {max_sheets}")));
    }
    if k < 2 || m < 2 {
        return Ok(Vec::new());
    }
    let trans: Vec<Perm> = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| Perm::transposition(k, a, b)))
        .collect();
    let size = (trans.len() as f64).powi(m as i32 - 2);
    if size > SEARCH_LIMIT {
        return Err(RepError::SearchBound(format!(
            "{} candidate tuples for {m} generators and {k} sheets",
            size
        )));
    }
    let mut found = BTreeSet::new();
    // every simply ramified cover is conjugate to one with x_1 -> (1 2)
    let mut tuple = vec![trans[0].clone()];
    let mut idx = vec![0usize; m.saturating_sub(2)];
    loop {
        tuple.truncate(1);
        tuple.extend(idx.iter().map(|&i| trans[i].clone()));
        let prod = tuple.iter().fold(Perm::identity(k), |a, p| a.then(p));
        let last = prod.inverse();
        if last.is_transposition() {
            tuple.push(last);
            let rep = MonodromyRep {
                sheets: k,
                images: tuple.clone(),
            };
            if rep.is_transitive() && check_extension(&rep, fact)? {
                found.insert(rep.canonical());
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(found.into_iter().collect());
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

#[cfg(test)]
mod tests {
    use super::*;

    fn t(k: usize, a: usize, b: usize) -> Perm {
        Perm::transposition(k, a - 1, b - 1)
    }

    fn b(m: usize, l: &[(usize, i8)]) -> BraidWord {
        BraidWord::new(m, l.to_vec()).unwrap()
    }

    #[test]
    fn product_identity_enforced() {
        assert!(MonodromyRep::new(3, vec![t(3, 1, 2), t(3, 2, 3)]).is_err());
        assert!(MonodromyRep::new(2, vec![t(2, 1, 2), t(2, 1, 2)]).is_ok());
    }

    #[test]
    fn tuple_action_matches_words() {
        let rep = MonodromyRep::new(3, vec![t(3, 1, 2), t(3, 2, 3), t(3, 2, 3), t(3, 1, 2)]).unwrap();
        for br in [b(4, &[(1, 1)]), b(4, &[(2, -1), (3, 1), (1, 1)]), b(4, &[(3, 1), (3, 1), (2, -1)])] {
            let by_words: Vec<Perm> = (1..=4)
                .map(|j| rep.evaluate(&braid_action_on_meridian(&br, j).unwrap()))
                .collect();
            assert_eq!(act(rep.images(), &br), by_words);
        }
    }

    #[test]
    fn json_cycle_notation() {
        let rep = MonodromyRep::new(3, vec![t(3, 1, 2), t(3, 1, 2)]).unwrap();
        let s = serde_json::to_string(&rep).unwrap();
        assert_eq!(s, r#"{"sheets":3,"generators":["(1 2)","(1 2)"]}"#);
        assert_eq!(MonodromyRep::from_json(&s).unwrap(), rep);
        assert!(MonodromyRep::from_json(r#"{"sheets":3,"generators":["(1 2)","(2 3)"]}"#).is_err());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let rep = MonodromyRep::new(4, vec![t(4, 3, 4), t(4, 2, 3), t(4, 2, 3), t(4, 3, 4)]).unwrap();
        let c = rep.canonical();
        assert_eq!(c.canonical(), c);
        assert_eq!(c.images()[0], t(4, 3, 4));
        assert!(!c.is_transitive());
    }

    fn toy_fact(factors: Vec<BraidWord>, kinds: Vec<LocalKind>, conj: Vec<BraidWord>, cores: Vec<usize>) -> BraidMonodromyFactorization {
        let n = factors.len();
        BraidMonodromyFactorization {
            strands: factors[0].strands(),
            factors,
            local_kinds: kinds,
            conjugators: conj,
            cores,
            branch_values: vec![(0.0, 0.0); n],
            frame: crate::numtrack::PencilFrame {
                plane: crate::curvegeom::Plane::Dual,
                matrix: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                basepoint: (0.0, 1.0),
                direction: 0.0,
                seed: 0,
            },
        }
    }

    #[test]
    fn cusp_classification() {
        // a single cusp factor sigma_1^3 on two strands
        let f = toy_fact(
            vec![BraidWord::sigma(2, 1, 3).unwrap()],
            vec![LocalKind::CuspLine],
            vec![BraidWord::identity(2)],
            vec![1],
        );
        let bad = MonodromyRep::new(2, vec![t(2, 1, 2), t(2, 1, 2)]).unwrap();
        assert!(check_extension(&bad, &f).unwrap());
        assert_eq!(classify_branch_point(&bad, &f, 0).unwrap(), PointClass::Bad);
        let (a, c) = local_meridian_pair(&f, 0).unwrap();
        assert_eq!((a, c), (FreeWord::generator(1), FreeWord::generator(2)));

        let f3 = toy_fact(
            vec![BraidWord::sigma(4, 1, 3).unwrap()],
            vec![LocalKind::CuspLine],
            vec![BraidWord::identity(4)],
            vec![1],
        );
        let good = MonodromyRep::new(3, vec![t(3, 1, 2), t(3, 2, 3), t(3, 2, 3), t(3, 1, 2)]).unwrap();
        assert!(check_extension(&good, &f3).unwrap());
        assert_eq!(classify_branch_point(&good, &f3, 0).unwrap(), PointClass::Good);
    }

    #[test]
    fn node_classification() {
        let f = toy_fact(
            vec![BraidWord::sigma(4, 2, 2).unwrap()],
            vec![LocalKind::NodeLine],
            vec![BraidWord::identity(4)],
            vec![2],
        );
        let good = MonodromyRep::new(4, vec![t(4, 1, 2), t(4, 1, 2), t(4, 3, 4), t(4, 3, 4)]).unwrap();
        // x2 -> (1 2) and x3 -> (3 4) commute
        assert!(check_extension(&good, &f).unwrap());
        assert_eq!(classify_branch_point(&good, &f, 0).unwrap(), PointClass::Good);
        let bad = MonodromyRep::new(2, vec![t(2, 1, 2); 4]).unwrap();
        assert_eq!(classify_branch_point(&bad, &f, 0).unwrap(), PointClass::Bad);
        assert!(matches!(local_meridian_pair(&toy_fact(
            vec![b(4, &[(1, 1)])], vec![LocalKind::Tangency], vec![BraidWord::identity(4)], vec![1]), 0),
            Err(RepError::Tangency(0))));
    }

    #[test]
    fn trivial_cover_extends() {
        let f = toy_fact(
            vec![BraidWord::sigma(3, 1, 3).unwrap(), b(3, &[(2, 1)])],
            vec![LocalKind::CuspLine, LocalKind::Tangency],
            vec![BraidWord::identity(3); 2],
            vec![1, 2],
        );
        assert!(check_extension(&MonodromyRep::trivial(3), &f).unwrap());
    }
}
