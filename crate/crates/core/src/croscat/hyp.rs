//! Hyperoctahedral groups `H_{n+1} = C_2^{n+1} ⋊ Σ_{n+1}`.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// An element of `C_2 = {1, t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Label {
    One,
    T,
}

impl Label {
    pub fn is_t(self) -> bool {
        self == Label::T
    }

    pub fn flip(self) -> Label {
        match self {
            Label::One => Label::T,
            Label::T => Label::One,
        }
    }
}

impl Mul for Label {
    type Output = Label;
    fn mul(self, rhs: Label) -> Label {
        if self == rhs {
            Label::One
        } else {
            Label::T
        }
    }
}

/// A signed permutation `(z_0, …, z_n; σ)` of `[n]`.
///
/// `perm` is one-line notation: `perm[i] = σ(i)`. Composition is "right acts
/// first": `(a * b)(i) = a(b(i))`. Viewed as a bijection with labelled
/// preimages, the source point `i` carries the label `signs[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypElement {
    signs: Vec<Label>,
    perm: Vec<u8>,
}

impl HypElement {
    pub fn new(signs: Vec<Label>, perm: Vec<u8>) -> Result<HypElement> {
        if signs.len() != perm.len() {
            return Err(Error::SizeMismatch { left: signs.len(), right: perm.len() });
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            let p = p as usize;
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidMorphism(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(HypElement { signs, perm })
    }

    pub(crate) fn from_parts_unchecked(signs: Vec<Label>, perm: Vec<u8>) -> HypElement {
        HypElement { signs, perm }
    }

    /// Identity of `H_{size}`.
    pub fn identity(size: usize) -> HypElement {
        HypElement { signs: vec![Label::One; size], perm: (0..size as u8).collect() }
    }

    /// `t_i` in `H_{size}`.
    pub fn t(size: usize, i: usize) -> HypElement {
        assert!(i < size);
        let mut e = HypElement::identity(size);
        e.signs[i] = Label::T;
        e
    }

    /// `θ_j` (the transposition `(j j+1)`) in `H_{size}`.
    pub fn theta(size: usize, j: usize) -> HypElement {
        assert!(j + 1 < size);
        let mut e = HypElement::identity(size);
        e.perm.swap(j, j + 1);
        e
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn signs(&self) -> &[Label] {
        &self.signs
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm
    }

    pub fn apply(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|s| *s == Label::One) && self.perm.iter().enumerate().all(|(i, &p)| p as usize == i)
    }

    /// `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &HypElement) -> Result<HypElement> {
        if self.size() != rhs.size() {
            return Err(Error::SizeMismatch { left: self.size(), right: rhs.size() });
        }
        Ok(self.compose_unchecked(rhs))
    }

    pub(crate) fn compose_unchecked(&self, rhs: &HypElement) -> HypElement {
        let n = self.size();
        let mut signs = Vec::with_capacity(n);
        let mut perm = Vec::with_capacity(n);
        for k in 0..n {
            let mid = rhs.perm[k] as usize;
            signs.push(rhs.signs[k] * self.signs[mid]);
            perm.push(self.perm[mid]);
        }
        HypElement { signs, perm }
    }

    pub fn inverse(&self) -> HypElement {
        let n = self.size();
        let mut signs = vec![Label::One; n];
        let mut perm = vec![0u8; n];
        for k in 0..n {
            let img = self.perm[k] as usize;
            perm[img] = k as u8;
            signs[img] = self.signs[k];
        }
        HypElement { signs, perm }
    }

    /// `2^size · size!`.
    pub fn group_order(size: usize) -> u128 {
        let fact: u128 = (1..=size as u128).product();
        fact << size
    }

    /// All elements of `H_{size}` (sign vectors vary fastest).
    pub fn all(size: usize) -> Vec<HypElement> {
        let mut out = Vec::new();
        for perm in permutations(size) {
            for mask in 0..(1u32 << size) {
                let signs = (0..size).map(|i| if mask >> i & 1 == 1 { Label::T } else { Label::One }).collect();
                out.push(HypElement { signs, perm: perm.clone() });
            }
        }
        out
    }

    /// A word `w_1 ∘ … ∘ w_k` in the generators equal to `self`: the
    /// permutation part as adjacent transpositions, then the sign part.
    pub fn generator_word(&self) -> Vec<HypGen> {
        let n = self.size();
        // Bubble-sort σ·θ_{j1}·…·θ_{jk} = id, so σ = θ_{jk}·…·θ_{j1}.
        let mut line = self.perm.clone();
        let mut swaps = Vec::new();
        loop {
            let mut changed = false;
            for j in 0..n.saturating_sub(1) {
                if line[j] > line[j + 1] {
                    line.swap(j, j + 1);
                    swaps.push(j);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut word: Vec<HypGen> = swaps.into_iter().rev().map(|j| HypGen::Theta(n, j)).collect();
        word.extend((0..n).filter(|&i| self.signs[i].is_t()).map(|i| HypGen::T(n, i)));
        word
    }
}

/// Generators of `H_{size}`: `T(size, i)` is `t_i`, `Theta(size, j)` is `θ_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypGen {
    T(usize, usize),
    Theta(usize, usize),
}

impl HypGen {
    pub fn element(self) -> HypElement {
        match self {
            HypGen::T(n, i) => HypElement::t(n, i),
            HypGen::Theta(n, j) => HypElement::theta(n, j),
        }
    }
}

/// Product of a word, left to right as composition.
pub fn word_product(size: usize, word: &[HypGen]) -> HypElement {
    word.iter().fold(HypElement::identity(size), |acc, g| acc.compose_unchecked(&g.element()))
}

/// Permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![cur.clone()];
    loop {
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

impl fmt::Debug for HypElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.signs.iter().map(|l| if l.is_t() { "t" } else { "1" }).collect();
        write!(f, "({}; {:?})", s.join(","), self.perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn theta_t_relation_in_h2() {
        // θ_0 ∘ t_1 = t_0 ∘ θ_0
        let lhs = HypElement::theta(2, 0).compose(&HypElement::t(2, 1)).unwrap();
        let rhs = HypElement::t(2, 0).compose(&HypElement::theta(2, 0)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn generators_close_to_whole_group() {
        let gens = [HypElement::t(2, 0), HypElement::t(2, 1), HypElement::theta(2, 0)];
        let mut seen: HashSet<HypElement> = HashSet::new();
        seen.insert(HypElement::identity(2));
        let mut frontier = vec![HypElement::identity(2)];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = g.compose(&x).unwrap();
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        assert_eq!(seen.len(), 8);
        assert_eq!(HypElement::group_order(2), 8);
    }

    #[test]
    fn size_mismatch_rejected() {
        let err = HypElement::identity(2).compose(&HypElement::identity(3)).unwrap_err();
        assert_eq!(err, Error::SizeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn words_multiply_back() {
        for g in HypElement::all(3) {
            assert_eq!(word_product(3, &g.generator_word()), g);
            assert!(g.compose(&g.inverse()).unwrap().is_identity());
            assert!(g.inverse().compose(&g).unwrap().is_identity());
        }
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(HypElement::all(3).len() as u128, HypElement::group_order(3));
    }
}
