//! The simplex category `Δ`.

use std::fmt;

use crate::error::{Error, Result};

/// Order-preserving map `[source] → [target]`, `values[i]` the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaMorphism {
    target: usize,
    values: Vec<u8>,
}

/// Face and degeneracy generators. `Face(n, i)` is `δ_i : [n-1] → [n]`,
/// `Degen(n, j)` is `σ_j : [n+1] → [n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaGen {
    Face(usize, usize),
    Degen(usize, usize),
}

impl DeltaGen {
    pub fn morphism(self) -> DeltaMorphism {
        match self {
            DeltaGen::Face(n, i) => DeltaMorphism::face(n, i),
            DeltaGen::Degen(n, j) => DeltaMorphism::degeneracy(n, j),
        }
    }
}

impl DeltaMorphism {
    pub fn new(target: usize, values: Vec<u8>) -> Result<DeltaMorphism> {
        if values.is_empty() {
            return Err(Error::EmptyObject);
        }
        if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v as usize > target) {
            return Err(Error::InvalidMorphism(format!("{values:?} is not order-preserving into [{target}]")));
        }
        Ok(DeltaMorphism { target, values })
    }

    pub(crate) fn from_parts_unchecked(target: usize, values: Vec<u8>) -> DeltaMorphism {
        DeltaMorphism { target, values }
    }

    pub fn identity(n: usize) -> DeltaMorphism {
        DeltaMorphism { target: n, values: (0..=n as u8).collect() }
    }

    /// `δ_i : [n-1] → [n]`, the injection omitting `i`.
    pub fn face(n: usize, i: usize) -> DeltaMorphism {
        assert!(n >= 1 && i <= n);
        let values = (0..n).map(|k| if k < i { k as u8 } else { k as u8 + 1 }).collect();
        DeltaMorphism { target: n, values }
    }

    /// `σ_j : [n+1] → [n]`, the surjection hitting `j` twice.
    pub fn degeneracy(n: usize, j: usize) -> DeltaMorphism {
        assert!(j <= n);
        let values = (0..=n + 1).map(|k| if k <= j { k as u8 } else { k as u8 - 1 }).collect();
        DeltaMorphism { target: n, values }
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i] as usize
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &DeltaMorphism) -> Result<DeltaMorphism> {
        if rhs.target != self.source() {
            return Err(Error::ObjectMismatch { inner_target: rhs.target as i32, outer_source: self.source() as i32 });
        }
        Ok(DeltaMorphism { target: self.target, values: rhs.values.iter().map(|&v| self.values[v as usize]).collect() })
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.image_size() == self.target + 1
    }

    pub fn image_size(&self) -> usize {
        let mut count = 1;
        for w in self.values.windows(2) {
            if w[0] != w[1] {
                count += 1;
            }
        }
        count
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source() && self.is_injective()
    }

    /// A word `g_1 ∘ … ∘ g_k` of faces and degeneracies equal to `self`
    /// (empty for identities).
    pub fn generator_word(&self) -> Vec<DeltaGen> {
        let mut word = Vec::new();
        let mut cur = self.clone();
        // peel faces off the left: cur = δ_i ∘ cur'
        loop {
            let Some(missing) = (0..=cur.target).find(|v| !cur.values.contains(&(*v as u8))) else {
                break;
            };
            word.push(DeltaGen::Face(cur.target, missing));
            let values = cur.values.iter().map(|&v| if (v as usize) > missing { v - 1 } else { v }).collect();
            cur = DeltaMorphism { target: cur.target - 1, values };
        }
        // cur is now surjective; peel degeneracies off the right: cur = cur' ∘ σ_j
        let mut tail = Vec::new();
        loop {
            let Some(j) = (0..cur.source()).find(|&j| cur.values[j] == cur.values[j + 1]) else {
                break;
            };
            let mut values = cur.values.clone();
            values.remove(j + 1);
            tail.push(DeltaGen::Degen(values.len() - 1, j));
            cur = DeltaMorphism { target: cur.target, values };
        }
        debug_assert!(cur.is_identity());
        word.extend(tail.into_iter().rev());
        word
    }

    /// All order-preserving maps `[n] → [m]`, lexicographic in `values`.
    pub fn all(n: usize, m: usize) -> Vec<DeltaMorphism> {
        let mut out = Vec::new();
        let mut cur = vec![0u8; n + 1];
        loop {
            out.push(DeltaMorphism { target: m, values: cur.clone() });
            // increment as a weakly increasing sequence
            let Some(i) = (0..=n).rev().find(|&i| (cur[i] as usize) < m) else {
                return out;
            };
            let v = cur[i] + 1;
            for x in cur[i..].iter_mut() {
                *x = v;
            }
        }
    }
}

impl fmt::Debug for DeltaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Δ[{}→{}]{:?}", self.source(), self.target, self.values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_order_preserving(n: usize, m: usize) -> usize {
        // all maps [n] -> [m], filter monotone
        let total = (m + 1).pow(n as u32 + 1);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let vals: Vec<usize> = (0..=n)
                    .map(|_| {
                        let v = c % (m + 1);
                        c /= m + 1;
                        v
                    })
                    .collect();
                vals.windows(2).all(|w| w[0] <= w[1])
            })
            .count()
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 0..4 {
            for m in 0..4 {
                assert_eq!(DeltaMorphism::all(n, m).len(), brute_force_order_preserving(n, m), "n={n} m={m}");
            }
        }
        assert_eq!(DeltaMorphism::all(1, 1).len(), 3);
    }

    #[test]
    fn words_recompose() {
        for n in 0..4 {
            for m in 0..4 {
                for f in DeltaMorphism::all(n, m) {
                    let word = f.generator_word();
                    let mut acc = DeltaMorphism::identity(m);
                    for g in &word {
                        acc = acc.compose(&g.morphism()).unwrap();
                    }
                    assert_eq!(acc, f);
                }
            }
        }
    }

    #[test]
    fn simplicial_identity() {
        // σ_j δ_j = id
        for n in 0..3 {
            for j in 0..=n {
                let c = DeltaMorphism::degeneracy(n, j).compose(&DeltaMorphism::face(n + 1, j)).unwrap();
                assert!(c.is_identity());
            }
        }
    }
}
