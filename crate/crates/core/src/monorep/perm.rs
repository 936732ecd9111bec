//! Permutations of `{0, .., k-1}`, printed 1-based in cycle notation.

use std::fmt;

use super::RepError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(k: usize) -> Perm {
        Perm((0..k).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm, RepError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(RepError::Format(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    /// Transposition of `a` and `b` (0-based).
    pub fn transposition(k: usize, a: usize, b: usize) -> Perm {
        let mut p = Perm::identity(k);
        p.0.swap(a, b);
        p
    }

    /// Every permutation of `k` points, in lexicographic order of images.
    pub fn all(k: usize) -> Vec<Perm> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if prefix.len() == used.len() {
                out.push(Perm::from_images(prefix.clone()).expect("valid"));
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; k], &mut out);
        out
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// `g^-1 self g`, relabelling points by `g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn moved(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != i).collect()
    }

    pub fn is_transposition(&self) -> bool {
        let m = self.moved();
        m.len() == 2 && self.0[m[0]] == m[1]
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.then(other) == other.then(self)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut i = self.0[s];
            while i != s {
                seen[i] = true;
                c.push(i);
                i = self.0[i];
            }
            out.push(c);
        }
        out
    }

    /// Parse 1-based cycle notation such as `(1 2)(3 4 5)`; `()` or an
    /// empty string is the identity.
    pub fn parse(s: &str, k: usize) -> Result<Perm, RepError> {
        let mut images: Vec<usize> = (0..k).collect();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| RepError::Format(format!("expected '(' in {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| RepError::Format(format!("unbalanced cycle in {s:?}")))?;
            let points = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if v >= 1 && v <= k => Ok(v - 1),
                    _ => Err(RepError::Format(format!("bad point {t:?} for {k} sheets"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if (1..points.len()).any(|i| points[..i].contains(&points[i])) {
                return Err(RepError::Format(format!("repeated point in {s:?}")));
            }
            let mut cyc = Perm::identity(k);
            for (i, &a) in points.iter().enumerate() {
                cyc.0[a] = points[(i + 1) % points.len()];
            }
            images = Perm(images).then(&cyc).0;
            rest = open[close + 1..].trim_start();
        }
        Ok(Perm(images))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}
