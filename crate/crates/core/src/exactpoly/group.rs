use std::collections::{BTreeSet, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// A signed permutation of coordinate slots: basis vector `e_i` goes to
/// `±e_{perm[i]}`, with `flip[i]` selecting the sign. On torus coordinates a
/// flip inverts instead of negating.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPerm {
    perm: Vec<usize>,
    flip: Vec<bool>,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, flip: Vec<bool>) -> Result<Self> {
        let n = perm.len();
        if flip.len() != n {
            return Err(Error::Dimension { expected: n, got: flip.len() });
        }
        let seen: BTreeSet<_> = perm.iter().copied().collect();
        if seen.len() != n || perm.iter().any(|&p| p >= n) {
            return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
        }
        Ok(SignedPerm { perm, flip })
    }

    pub fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), flip: vec![false; n] }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut w = Self::identity(n);
        w.perm.swap(i, j);
        w
    }

    pub fn sign_flip(n: usize, i: usize) -> Self {
        let mut w = Self::identity(n);
        w.flip[i] = true;
        w
    }

    /// `e_i -> -e_j`, `e_j -> -e_i`: the reflection in `e_i + e_j`.
    pub fn signed_transposition(n: usize, i: usize, j: usize) -> Self {
        let mut w = Self::transposition(n, i, j);
        w.flip[i] = true;
        w.flip[j] = true;
        w
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn image(&self, i: usize) -> (usize, bool) {
        (self.perm[i], self.flip[i])
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| p == i) && !self.flip.iter().any(|&f| f)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut flip = vec![false; n];
        for i in 0..n {
            let (j, s1) = other.image(i);
            let (k, s2) = self.image(j);
            perm[i] = k;
            flip[i] = s1 ^ s2;
        }
        SignedPerm { perm, flip }
    }

    pub fn inverse(&self) -> SignedPerm {
        let n = self.len();
        let mut perm = vec![0; n];
        let mut flip = vec![false; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            flip[self.perm[i]] = self.flip[i];
        }
        SignedPerm { perm, flip }
    }

    /// Linear action on a coordinate vector.
    pub fn act_additive(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = if self.flip[i] { -x.clone() } else { x.clone() };
        }
        out
    }

    /// Action on torus coordinates; flipped slots are inverted.
    pub fn act_multiplicative(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = if self.flip[i] { x.recip() } else { x.clone() };
        }
        out
    }

    /// Action on integer exponent vectors (characters or roots).
    pub fn act_int(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            out[self.perm[i]] = if self.flip[i] { -x } else { x };
        }
        out
    }
}

/// All elements of the group generated by `gens`, sorted.
pub fn generate_group(n: usize, gens: &[SignedPerm]) -> Vec<SignedPerm> {
    let id = SignedPerm::identity(n);
    let mut seen: BTreeSet<SignedPerm> = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.compose(&g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.into_iter().collect()
}
