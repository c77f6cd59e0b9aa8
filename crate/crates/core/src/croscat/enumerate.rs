//! Deterministic enumeration of hom-sets.

use super::hyp::{permutations, Label};
use super::ifas::{Fibre, IfasMorphism, EMPTY};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum HomVariant {
    All,
    Epi,
}

/// `Hom([n], [m])`, ordered by underlying map values, then fibre orders
/// (fibre over 0 first, each lexicographic), then labels by source point
/// with `1 < t`. Objects may be the empty object `-1`.
pub fn enumerate_hom(n: i32, m: i32, variant: HomVariant) -> Vec<IfasMorphism> {
    if n == EMPTY {
        let f = IfasMorphism::from_empty(m);
        return if variant == HomVariant::All || f.is_epi() { vec![f] } else { Vec::new() };
    }
    if m == EMPTY {
        return Vec::new();
    }
    let (src, tgt) = ((n + 1) as usize, (m + 1) as usize);
    let mut out = Vec::new();
    let mut values = vec![0usize; src];
    loop {
        let mut fibres: Vec<Vec<u8>> = vec![Vec::new(); tgt];
        for (p, &v) in values.iter().enumerate() {
            fibres[v].push(p as u8);
        }
        if variant == HomVariant::All || fibres.iter().all(|f| !f.is_empty()) {
            push_orders(&fibres, n, m, &mut out);
        }
        // odometer with the last source point fastest
        let Some(i) = (0..src).rev().find(|&i| values[i] + 1 < tgt) else {
            return out;
        };
        values[i] += 1;
        for v in values[i + 1..].iter_mut() {
            *v = 0;
        }
    }
}

fn push_orders(fibres: &[Vec<u8>], n: i32, m: i32, out: &mut Vec<IfasMorphism>) {
    let src = (n + 1) as usize;
    let per_fibre: Vec<Vec<Vec<u8>>> = fibres
        .iter()
        .map(|f| permutations(f.len()).into_iter().map(|p| p.iter().map(|&k| f[k as usize]).collect()).collect())
        .collect();
    let mut choice = vec![0usize; fibres.len()];
    loop {
        let ordered: Vec<&Vec<u8>> = choice.iter().zip(&per_fibre).map(|(&c, opts)| &opts[c]).collect();
        for mask in 0..(1u32 << src) {
            // source point 0 is the most significant label
            let label = |p: u8| if mask >> (src - 1 - p as usize) & 1 == 1 { Label::T } else { Label::One };
            let preimages: Vec<Fibre> = ordered.iter().map(|f| f.iter().map(|&p| (p, label(p))).collect()).collect();
            out.push(IfasMorphism::from_parts_unchecked(n, m, preimages));
        }
        let Some(i) = (0..choice.len()).rev().find(|&i| choice[i] + 1 < per_fibre[i].len()) else {
            return;
        };
        choice[i] += 1;
        for c in choice[i + 1..].iter_mut() {
            *c = 0;
        }
    }
}

/// `|Hom([n], [m])|` in closed form: `C(n+m+1, n+1) · 2^{n+1} (n+1)!`.
pub fn hom_count(n: i32, m: i32) -> u128 {
    if n == EMPTY {
        return 1;
    }
    if m == EMPTY {
        return 0;
    }
    let (a, b) = ((n + 1) as u128, (m + 1) as u128);
    binomial(a + b - 1, a) * super::hyp::HypElement::group_order(a as usize)
}

/// Number of epimorphisms `[n] → [m]`: `C(n, m) · 2^{n+1} (n+1)!`.
pub fn epi_count(n: i32, m: i32) -> u128 {
    if n == EMPTY {
        return u128::from(m == EMPTY);
    }
    if m == EMPTY || m > n {
        return 0;
    }
    binomial(n as u128, m as u128) * super::hyp::HypElement::group_order((n + 1) as usize)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::croscat::delta::DeltaMorphism;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_hom(1, 0, HomVariant::All).len(), 8);
        assert_eq!(enumerate_hom(0, 1, HomVariant::Epi).len(), 0);
        assert_eq!(enumerate_hom(1, 1, HomVariant::All).len(), 24);
        assert_eq!(enumerate_hom(0, 0, HomVariant::All).len(), 2);
        assert_eq!(enumerate_hom(-1, 2, HomVariant::All).len(), 1);
        assert_eq!(enumerate_hom(1, -1, HomVariant::All).len(), 0);
    }

    #[test]
    fn sorted_distinct_and_counted() {
        for n in 0..3 {
            for m in 0..3 {
                let all = enumerate_hom(n, m, HomVariant::All);
                let distinct: HashSet<_> = all.iter().cloned().collect();
                assert_eq!(distinct.len(), all.len());
                let delta = DeltaMorphism::all(n as usize, m as usize).len() as u128;
                assert_eq!(all.len() as u128, delta * crate::croscat::hyp::HypElement::group_order(n as usize + 1));
                assert_eq!(all.len() as u128, hom_count(n, m));
                let epi = enumerate_hom(n, m, HomVariant::Epi);
                assert_eq!(epi.len() as u128, epi_count(n, m));
                assert!(epi.iter().all(IfasMorphism::is_epi));
                assert_eq!(epi.is_empty(), n < m);
                let keys: Vec<_> = all.iter().map(|f| (f.values(), order_key(f), f.labels())).collect();
                assert!(keys.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    fn order_key(f: &IfasMorphism) -> Vec<Vec<u8>> {
        f.preimages().iter().map(|fib| fib.iter().map(|x| x.0).collect()).collect()
    }
}
