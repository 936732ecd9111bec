//! Backtracking enumeration of canonical transposition tuples.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::{check_bounds, HurwitzClass, HurwitzError, SymGroup};
use crate::monorep::MonodromyRep;

/// Search nodes visited before giving up.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

struct Ctx<'a> {
    group: &'a SymGroup,
    m: usize,
    /// `conj[g][t]`: index of `trans[t]` conjugated by `elems[g]`.
    conj: Vec<Vec<usize>>,
    /// `k - #cycles`, the fewest transpositions with the given product.
    dist: Vec<usize>,
    budget: u64,
    visited: &'a AtomicU64,
    exhausted: &'a AtomicBool,
}

#[derive(Clone)]
struct State {
    tuple: Vec<usize>,
    product: usize,
    /// Relabellings under which the tuple so far is unchanged.
    tied: Vec<usize>,
    component: Vec<usize>,
}

impl Ctx<'_> {
    /// `None` when appending `t` cannot lead to a canonical tuple with
    /// product one.
    fn extend(&self, s: &State, t: usize) -> Option<State> {
        let product = self.group.step[s.product][t];
        let left = self.m - s.tuple.len() - 1;
        let d = self.dist[product];
        if d > left || (left - d) % 2 == 1 {
            return None;
        }
        let mut tied = Vec::with_capacity(s.tied.len());
        for &g in &s.tied {
            let c = self.conj[g][t];
            if c < t {
                return None;
            }
            if c == t {
                tied.push(g);
            }
        }
        let mut component = s.component.clone();
        let mv = self.group.trans[t].moved();
        let (a, b) = (component[mv[0]], component[mv[1]]);
        if a != b {
            for c in component.iter_mut() {
                if *c == b {
                    *c = a;
                }
            }
        }
        let mut labels = component.clone();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() - 1 > left {
            return None;
        }
        let mut tuple = s.tuple.clone();
        tuple.push(t);
        Some(State {
            tuple,
            product,
            tied,
            component,
        })
    }

    fn dfs(&self, s: &State, out: &mut Vec<Vec<usize>>) {
        if self.exhausted.load(Ordering::Relaxed) {
            return;
        }
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return;
        }
        if s.tuple.len() == self.m {
            out.push(s.tuple.clone());
            return;
        }
        for t in 0..self.group.trans.len() {
            if let Some(n) = self.extend(s, t) {
                self.dfs(&n, out);
            }
        }
    }
}

/// Canonical representatives of all classes, in lexicographic order.
pub fn enumerate_classes(k: usize, m: usize) -> Result<Vec<HurwitzClass>, HurwitzError> {
    enumerate_classes_with_budget(k, m, DEFAULT_BUDGET)
}

pub fn enumerate_classes_with_budget(k: usize, m: usize, budget: u64) -> Result<Vec<HurwitzClass>, HurwitzError> {
    check_bounds(k, m)?;
    if k <= 1 {
        return Ok(if k == 1 && m == 0 {
            vec![HurwitzClass::new(MonodromyRep::trivial(0))]
        } else {
            Vec::new()
        });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let group = SymGroup::new(k);
    let index = |p: &crate::monorep::Perm| group.trans.iter().position(|t| t == p).expect("transposition");
    let conj = group
        .elems
        .iter()
        .map(|g| group.trans.iter().map(|t| index(&t.conjugate_by(g))).collect())
        .collect();
    let dist = group.elems.iter().map(|e| e.cycles().iter().map(|c| c.len() - 1).sum()).collect();
    let visited = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let ctx = Ctx {
        group: &group,
        m,
        conj,
        dist,
        budget,
        visited: &visited,
        exhausted: &exhausted,
    };
    let root = State {
        tuple: Vec::new(),
        product: group.identity,
        tied: (0..group.elems.len()).collect(),
        component: (0..k).collect(),
    };
    // split the search over the first two letters
    let mut frontier = vec![root];
    for _ in 0..m.min(2) {
        frontier = frontier
            .iter()
            .flat_map(|s| (0..group.trans.len()).filter_map(|t| ctx.extend(s, t)).collect::<Vec<_>>())
            .collect();
    }
    let parts: Vec<Vec<Vec<usize>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = frontier
            .iter()
            .map(|s| {
                let ctx = &ctx;
                scope.spawn(move || {
                    let mut out = Vec::new();
                    ctx.dfs(s, &mut out);
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("enumeration thread")).collect()
    });
    if exhausted.load(Ordering::Relaxed) {
        return Err(HurwitzError::Budget(visited.load(Ordering::Relaxed)));
    }
    let mut classes = Vec::new();
    for tuple in parts.into_iter().flatten() {
        let images = tuple.iter().map(|&t| group.trans[t].clone()).collect();
        let rep = MonodromyRep::new(k, images)?;
        if rep.is_transitive() {
            classes.push(HurwitzClass::new(rep));
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::count_classes;

    #[test]
    fn double_cover() {
        let c = enumerate_classes(2, 2).unwrap();
        assert_eq!(c.len(), 1);
        let gens: Vec<String> = c[0].representative.images().iter().map(|p| p.to_string()).collect();
        assert_eq!(gens, ["(1 2)", "(1 2)"]);
        assert_eq!(c[0].genus, 0);
    }

    #[test]
    fn lengths_match_counts() {
        for (k, m) in [(3, 4), (3, 6), (4, 6), (3, 8), (5, 8)] {
            let c = enumerate_classes(k, m).unwrap();
            assert_eq!(c.len() as u128, count_classes(k, m).unwrap(), "k={k} m={m}");
        }
    }

    #[test]
    fn representatives_are_canonical_and_sorted() {
        let c = enumerate_classes(4, 6).unwrap();
        for w in c.windows(2) {
            assert!(w[0].representative < w[1].representative);
        }
        for h in &c {
            assert_eq!(h.representative.canonical(), h.representative);
            assert!(h.representative.is_transitive());
            assert!(h.automorphism_free);
        }
    }

    #[test]
    fn budget_is_reported() {
        assert!(matches!(
            enumerate_classes_with_budget(4, 8, 100),
            Err(HurwitzError::Budget(_))
        ));
    }
}
