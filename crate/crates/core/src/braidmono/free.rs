//! Reduced words in a free group and the Artin action of braids on them.

use std::fmt;

use super::{BraidError, BraidWord};

/// A freely reduced word; letter `j` is `x_j`, `-j` its inverse (1-based).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn generator(j: usize) -> Self {
        FreeWord(vec![j as i32])
    }

    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut w = FreeWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: i32) {
        debug_assert!(l != 0);
        if self.0.last() == Some(&-l) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    /// Replace every generator `x_j` by `images[j - 1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let mut w = FreeWord::identity();
        for &l in &self.0 {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &a in &img.0 {
                    w.push(a);
                }
            } else {
                for &a in img.0.iter().rev() {
                    w.push(-a);
                }
            }
        }
        w
    }

    /// Evaluate in a group given by the images of the generators and their
    /// inverses, multiplying left to right with `mul`.
    pub fn evaluate<T: Clone>(&self, gens: &[T], invs: &[T], one: T, mul: impl Fn(&T, &T) -> T) -> T {
        self.0.iter().fold(one, |acc, &l| {
            let k = l.unsigned_abs() as usize - 1;
            mul(&acc, if l > 0 { &gens[k] } else { &invs[k] })
        })
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Images of `x_1..x_m` under one generator `sigma_i^{sign}`:
/// `sigma_i` sends `x_i` to `x_i x_{i+1} x_i^-1` and `x_{i+1}` to `x_i`.
pub fn letter_images(m: usize, i: usize, sign: i8) -> Vec<FreeWord> {
    let mut images: Vec<FreeWord> = (1..=m).map(FreeWord::generator).collect();
    let (a, b) = (i as i32, i as i32 + 1);
    if sign > 0 {
        images[i - 1] = FreeWord::from_letters([a, b, -a]);
        images[i] = FreeWord::generator(i);
    } else {
        images[i - 1] = FreeWord::generator(i + 1);
        images[i] = FreeWord::from_letters([-b, a, b]);
    }
    images
}

/// Image of `x_j` under the braid, letters applied in time order: the word
/// for `b_1 b_2 ... b_n` acts as `phi_{b_n} o ... o phi_{b_1}`.
pub fn braid_action_on_meridian(braid: &BraidWord, j: usize) -> Result<FreeWord, BraidError> {
    let m = braid.strands();
    if j == 0 || j > m {
        return Err(BraidError::Index(j, m));
    }
    let mut w = FreeWord::generator(j);
    for &(i, s) in braid.letters() {
        w = w.substitute(&letter_images(m, i, s));
    }
    Ok(w)
}

/// Images of all generators under the braid.
pub fn braid_action(braid: &BraidWord) -> Vec<FreeWord> {
    (1..=braid.strands())
        .map(|j| braid_action_on_meridian(braid, j).expect("index in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(m: usize, l: &[(usize, i8)]) -> BraidWord {
        BraidWord::new(m, l.to_vec()).unwrap()
    }

    #[test]
    fn defining_action() {
        let s1 = b(2, &[(1, 1)]);
        assert_eq!(braid_action_on_meridian(&s1, 1).unwrap().letters(), &[1, 2, -1]);
        assert_eq!(braid_action_on_meridian(&s1, 2).unwrap().letters(), &[1]);
        let id = b(3, &[]);
        assert_eq!(braid_action_on_meridian(&id, 2).unwrap(), FreeWord::generator(2));
        assert!(braid_action_on_meridian(&id, 4).is_err());
    }

    #[test]
    fn braid_relation() {
        let l = b(3, &[(1, 1), (2, 1), (1, 1)]);
        let r = b(3, &[(2, 1), (1, 1), (2, 1)]);
        assert_eq!(braid_action(&l), braid_action(&r));
    }

    #[test]
    fn inverse_letters_cancel() {
        let w = b(3, &[(2, 1)]).mul(&b(3, &[(2, -1)]));
        assert!(w.is_empty());
        // act without the free reduction of the braid word
        let mut v = FreeWord::generator(2);
        for s in [1i8, -1] {
            v = v.substitute(&letter_images(3, 2, s));
        }
        assert_eq!(v, FreeWord::generator(2));
    }

    #[test]
    fn product_of_generators_fixed() {
        // the full product x1 x2 x3 is invariant under every braid
        let br = b(3, &[(1, 1), (2, -1), (1, 1), (2, 1), (2, 1)]);
        let imgs = braid_action(&br);
        let prod = imgs.iter().fold(FreeWord::identity(), |a, w| a.mul(w));
        assert_eq!(prod.letters(), &[1, 2, 3]);
    }
}
