//! Composable strings `(f_n, …, f_1)` of a finite category, ranked so that a
//! string and its faces can be located in constant time per morphism.

use crate::croscat::CategoryTable;
use crate::error::{Error, Result};

/// Strings of degrees `0..=top`. Degree `0` strings are the objects. A
/// degree-`n` string extends a degree-`(n-1)` prefix `(f_{n-1}, …, f_1)` by
/// `f_n` out of the prefix's target; strings are numbered by prefix, then by
/// the local index of `f_n`.
#[derive(Clone, Debug)]
pub struct StringIndex {
    counts: Vec<usize>,
    /// `ext_start[n][p]`: first degree-`n` string with prefix `p`.
    ext_start: Vec<Vec<u32>>,
    last: Vec<Vec<u32>>,
    prefix: Vec<Vec<u32>>,
    root: Vec<Vec<u32>>,
    target: Vec<Vec<u32>>,
    /// `gen_start[n][s]`: first generator of string `s` (one block of
    /// `weights[root]` generators per string).
    gen_start: Vec<Vec<u32>>,
    weights: Vec<usize>,
}

/// Number of generators `Σ_s weights[root s]` per degree `0..=top`, counted
/// by transfer matrices without enumerating.
pub fn projected_generators(table: &CategoryTable, weights: &[usize], top: usize) -> Vec<u128> {
    let k = table.num_objects();
    // paths[a][b]: strings of the current degree from a to b
    let mut paths: Vec<Vec<u128>> = (0..k).map(|a| (0..k).map(|b| u128::from(a == b)).collect()).collect();
    let homs: Vec<Vec<u128>> =
        (0..k).map(|a| (0..k).map(|b| table.hom(a as u32, b as u32).len() as u128).collect()).collect();
    let mut out = Vec::with_capacity(top + 1);
    for n in 0..=top {
        if n > 0 {
            let mut next = vec![vec![0u128; k]; k];
            for a in 0..k {
                for b in 0..k {
                    if paths[a][b] == 0 {
                        continue;
                    }
                    for c in 0..k {
                        next[a][c] = next[a][c].saturating_add(paths[a][b].saturating_mul(homs[b][c]));
                    }
                }
            }
            paths = next;
        }
        let total = (0..k).map(|a| paths[a].iter().sum::<u128>().saturating_mul(weights[a] as u128)).sum();
        out.push(total);
    }
    out
}

impl StringIndex {
    /// Enumerates strings through degree `top`; refuses if some degree would
    /// exceed `cap` generators.
    pub fn new(table: &CategoryTable, weights: &[usize], top: usize, cap: u64) -> Result<StringIndex> {
        let projected = projected_generators(table, weights, top);
        for (degree, &p) in projected.iter().enumerate() {
            if p > cap as u128 || p > u32::MAX as u128 {
                return Err(Error::ResourceCap { degree, projected: p, cap: cap as u128 });
            }
        }
        let k = table.num_objects();
        let mut idx = StringIndex {
            counts: vec![k],
            ext_start: vec![Vec::new()],
            last: vec![Vec::new()],
            prefix: vec![Vec::new()],
            root: vec![(0..k as u32).collect()],
            target: vec![(0..k as u32).collect()],
            gen_start: Vec::new(),
            weights: weights.to_vec(),
        };
        for n in 1..=top {
            let prev = idx.counts[n - 1];
            let mut ext = Vec::with_capacity(prev + 1);
            let (mut last, mut prefix, mut root, mut target) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
            for p in 0..prev {
                ext.push(last.len() as u32);
                let t = idx.target[n - 1][p];
                for f in table.out(t) {
                    last.push(f);
                    prefix.push(p as u32);
                    root.push(idx.root[n - 1][p]);
                    target.push(table.tgt(f));
                }
            }
            ext.push(last.len() as u32);
            idx.counts.push(last.len());
            idx.ext_start.push(ext);
            idx.last.push(last);
            idx.prefix.push(prefix);
            idx.root.push(root);
            idx.target.push(target);
        }
        for n in 0..=top {
            let mut starts = Vec::with_capacity(idx.counts[n] + 1);
            let mut acc = 0u32;
            for &r in &idx.root[n] {
                starts.push(acc);
                acc += weights[r as usize] as u32;
            }
            starts.push(acc);
            idx.gen_start.push(starts);
        }
        Ok(idx)
    }

    pub fn top(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn generators(&self, n: usize) -> usize {
        *self.gen_start[n].last().unwrap() as usize
    }

    pub fn weight(&self, object: u32) -> usize {
        self.weights[object as usize]
    }

    /// Object position of `C_0`.
    pub fn root(&self, n: usize, s: u32) -> u32 {
        self.root[n][s as usize]
    }

    /// Object position of `C_n`.
    pub fn target(&self, n: usize, s: u32) -> u32 {
        self.target[n][s as usize]
    }

    /// `(f_{n-1}, …, f_1)`.
    pub fn prefix(&self, n: usize, s: u32) -> u32 {
        self.prefix[n][s as usize]
    }

    /// `f_n`.
    pub fn last(&self, n: usize, s: u32) -> u32 {
        self.last[n][s as usize]
    }

    /// Morphisms `[f_1, …, f_n]`.
    pub fn morphisms(&self, n: usize, s: u32) -> Vec<u32> {
        let mut out = vec![0; n];
        let mut cur = s;
        for d in (1..=n).rev() {
            out[d - 1] = self.last[d][cur as usize];
            cur = self.prefix[d][cur as usize];
        }
        out
    }

    /// Index of the string `[f_1, …, f_n]` starting at object `root`.
    pub fn rank(&self, table: &CategoryTable, root: u32, morphisms: &[u32]) -> u32 {
        let mut cur = root;
        for (d, &f) in morphisms.iter().enumerate() {
            cur = self.ext_start[d + 1][cur as usize] + table.local(f);
        }
        cur
    }

    pub fn gen_start(&self, n: usize, s: u32) -> u32 {
        self.gen_start[n][s as usize]
    }

    /// `(string, position inside its block)` of a generator.
    pub fn locate(&self, n: usize, g: u32) -> (u32, u32) {
        let starts = &self.gen_start[n];
        let s = starts.partition_point(|&x| x <= g) - 1;
        (s as u32, g - starts[s])
    }

    /// Per-degree generator counts.
    pub fn sizes(&self) -> Vec<usize> {
        (0..=self.top()).map(|n| self.generators(n)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::croscat::{CategoryKind, TruncatedCategory};

    #[test]
    fn counts_match_transfer_matrix() {
        let cat = TruncatedCategory::new(CategoryKind::Full, 1);
        let t = cat.table();
        let idx = StringIndex::new(t, &[1, 1], 3, u64::MAX).unwrap();
        assert_eq!(idx.count(0), 2);
        assert_eq!(idx.count(1), 38);
        assert_eq!(idx.count(2), 956);
        let projected = projected_generators(t, &[1, 1], 3);
        for n in 0..=3 {
            assert_eq!(projected[n], idx.count(n) as u128);
        }
    }

    #[test]
    fn rank_inverts_morphisms() {
        let cat = TruncatedCategory::new(CategoryKind::Full, 1);
        let t = cat.table();
        let idx = StringIndex::new(t, &[2, 3], 2, u64::MAX).unwrap();
        for n in 0..=2 {
            for s in 0..idx.count(n) as u32 {
                let m = idx.morphisms(n, s);
                let root = idx.root(n, s);
                if let Some(&f) = m.first() {
                    assert_eq!(t.src(f), root);
                }
                for w in m.windows(2) {
                    assert_eq!(t.tgt(w[0]), t.src(w[1]));
                }
                assert_eq!(idx.rank(t, root, &m), s);
                let g = idx.gen_start(n, s);
                assert_eq!(idx.locate(n, g), (s, 0));
            }
        }
    }

    #[test]
    fn cap_refuses_with_count() {
        let cat = TruncatedCategory::new(CategoryKind::Full, 1);
        let err = StringIndex::new(cat.table(), &[1, 1], 2, 100).unwrap_err();
        assert_eq!(err, Error::ResourceCap { degree: 2, projected: 956, cap: 100 });
    }
}
