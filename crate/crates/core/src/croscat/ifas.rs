//! Involutive non-commutative sets: set maps with ordered, labelled preimages.

use std::fmt;

use super::delta::DeltaMorphism;
use super::hyp::{HypElement, Label};
use crate::error::{Error, Result};

/// Index `-1` is the empty object of the extended category.
pub const EMPTY: i32 = -1;

/// An ordered sequence of labelled points.
pub type Fibre = Vec<(u8, Label)>;

/// The `C_2` action on ordered labelled sets: reverse the order and flip
/// every label.
pub fn label_flip(s: &[(u8, Label)]) -> Fibre {
    s.iter().rev().map(|&(p, l)| (p, l.flip())).collect()
}

/// A morphism `[source] → [target]` of `IF(as)`, possibly touching the empty
/// object. `preimages[i]` is the ordered labelled fibre over `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct IfasMorphism {
    source: i32,
    target: i32,
    preimages: Vec<Fibre>,
}

fn card(obj: i32) -> usize {
    (obj + 1) as usize
}

impl IfasMorphism {
    pub fn new(source: i32, target: i32, preimages: Vec<Fibre>) -> Result<IfasMorphism> {
        if source < EMPTY || target < EMPTY {
            return Err(Error::InvalidMorphism(format!("no object [{source}] or [{target}]")));
        }
        if preimages.len() != card(target) {
            return Err(Error::InvalidMorphism(format!(
                "{} fibres given for target [{target}]",
                preimages.len()
            )));
        }
        let mut seen = vec![false; card(source)];
        for fibre in &preimages {
            for &(p, _) in fibre {
                let p = p as usize;
                if p >= seen.len() || seen[p] {
                    return Err(Error::InvalidMorphism(format!("fibres {preimages:?} do not partition [{source}]")));
                }
                seen[p] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidMorphism(format!("fibres {preimages:?} do not cover [{source}]")));
        }
        Ok(IfasMorphism { source, target, preimages })
    }

    pub(crate) fn from_parts_unchecked(source: i32, target: i32, preimages: Vec<Fibre>) -> IfasMorphism {
        IfasMorphism { source, target, preimages }
    }

    pub fn identity(n: i32) -> IfasMorphism {
        IfasMorphism { source: n, target: n, preimages: (0..card(n) as u8).map(|i| vec![(i, Label::One)]).collect() }
    }

    /// The unique morphism out of the empty object.
    pub fn from_empty(target: i32) -> IfasMorphism {
        IfasMorphism { source: EMPTY, target, preimages: vec![Vec::new(); card(target)] }
    }

    /// An order-preserving map with canonically ordered fibres, all labels `1`.
    pub fn from_delta(phi: &DeltaMorphism) -> IfasMorphism {
        let mut preimages = vec![Vec::new(); phi.target() + 1];
        for (i, &v) in phi.values().iter().enumerate() {
            preimages[v as usize].push((i as u8, Label::One));
        }
        IfasMorphism { source: phi.source() as i32, target: phi.target() as i32, preimages }
    }

    /// A signed permutation: point `i` goes to `σ(i)` with label `z_i`.
    pub fn from_hyp(g: &HypElement) -> IfasMorphism {
        let n = g.size();
        let mut preimages = vec![Vec::new(); n];
        for i in 0..n {
            preimages[g.apply(i)].push((i as u8, g.signs()[i]));
        }
        IfasMorphism { source: n as i32 - 1, target: n as i32 - 1, preimages }
    }

    pub fn source(&self) -> i32 {
        self.source
    }

    pub fn target(&self) -> i32 {
        self.target
    }

    pub fn preimages(&self) -> &[Fibre] {
        &self.preimages
    }

    pub fn fibre(&self, i: usize) -> &[(u8, Label)] {
        &self.preimages[i]
    }

    /// Underlying set map: `values()[p]` is the image of source point `p`.
    pub fn values(&self) -> Vec<u8> {
        let mut out = vec![0u8; card(self.source)];
        for (j, fibre) in self.preimages.iter().enumerate() {
            for &(p, _) in fibre {
                out[p as usize] = j as u8;
            }
        }
        out
    }

    /// Labels indexed by source point.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = vec![Label::One; card(self.source)];
        for fibre in &self.preimages {
            for &(p, l) in fibre {
                out[p as usize] = l;
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.preimages.iter().enumerate().all(|(i, f)| f.len() == 1 && f[0] == (i as u8, Label::One))
    }

    pub fn is_epi(&self) -> bool {
        self.preimages.iter().all(|f| !f.is_empty())
    }

    pub fn is_iso(&self) -> bool {
        self.preimages.iter().all(|f| f.len() == 1) && self.source == self.target
    }

    pub fn touches_empty(&self) -> bool {
        self.source == EMPTY || self.target == EMPTY
    }

    /// `self • rhs`: the fibre over `i` is the concatenation, along the fibre
    /// of `self` over `i`, of the fibres of `rhs`, flipped where labelled `t`.
    pub fn compose(&self, rhs: &IfasMorphism) -> Result<IfasMorphism> {
        if rhs.target != self.source {
            return Err(Error::ObjectMismatch { inner_target: rhs.target, outer_source: self.source });
        }
        Ok(self.compose_unchecked(rhs))
    }

    pub(crate) fn compose_unchecked(&self, rhs: &IfasMorphism) -> IfasMorphism {
        let preimages = self
            .preimages
            .iter()
            .map(|fibre| {
                let mut out = Vec::new();
                for &(j, alpha) in fibre {
                    let inner = &rhs.preimages[j as usize];
                    match alpha {
                        Label::One => out.extend_from_slice(inner),
                        Label::T => out.extend(label_flip(inner)),
                    }
                }
                out
            })
            .collect();
        IfasMorphism { source: rhs.source, target: self.target, preimages }
    }

    /// Disjoint union `self ⨿ rhs : [n] ⨿ [m] → [n'] ⨿ [m']`, blockwise.
    pub fn coproduct(&self, rhs: &IfasMorphism) -> IfasMorphism {
        let shift = card(self.source) as u8;
        let mut preimages = self.preimages.clone();
        preimages.extend(rhs.preimages.iter().map(|f| f.iter().map(|&(p, l)| (p + shift, l)).collect::<Fibre>()));
        IfasMorphism {
            source: self.source + rhs.source + 1,
            target: self.target + rhs.target + 1,
            preimages,
        }
    }

    /// The block transposition `[n] ⨿ [m] → [m] ⨿ [n]`.
    pub fn symmetry(n: i32, m: i32) -> IfasMorphism {
        let (a, b) = (card(n) as u8, card(m) as u8);
        let preimages = (0..b).map(|k| vec![(a + k, Label::One)]).chain((0..a).map(|k| vec![(k, Label::One)])).collect();
        IfasMorphism { source: n + m + 1, target: n + m + 1, preimages }
    }
}

impl fmt::Debug for IfasMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}→{}]{{", self.source, self.target)?;
        for (i, fibre) in self.preimages.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let parts: Vec<String> =
                fibre.iter().map(|(p, l)| format!("{p}{}", if l.is_t() { "ᵗ" } else { "" })).collect();
            write!(f, "{}", parts.join("<"))?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_example() {
        let s = vec![(0, Label::One), (1, Label::T)];
        assert_eq!(label_flip(&s), vec![(1, Label::One), (0, Label::T)]);
        assert_eq!(label_flip(&label_flip(&s)), s);
        assert!(label_flip(&[]).is_empty());
    }

    #[test]
    fn degeneracy_after_sign() {
        let sigma0 = IfasMorphism::from_delta(&DeltaMorphism::degeneracy(0, 0));
        let t0 = IfasMorphism::from_hyp(&HypElement::t(2, 0));
        let c = sigma0.compose(&t0).unwrap();
        assert_eq!(c.fibre(0), &[(0, Label::T), (1, Label::One)]);
    }

    #[test]
    fn validation() {
        assert!(IfasMorphism::new(1, 0, vec![vec![(0, Label::One)]]).is_err());
        assert!(IfasMorphism::new(0, 0, vec![vec![(0, Label::One), (0, Label::T)]]).is_err());
        assert!(IfasMorphism::new(1, 0, vec![vec![(1, Label::One), (0, Label::T)]]).is_ok());
        let id = IfasMorphism::identity(1);
        assert!(id.compose(&IfasMorphism::identity(0)).is_err());
    }

    #[test]
    fn empty_object_is_initial() {
        let e = IfasMorphism::from_empty(2);
        let f = IfasMorphism::from_delta(&DeltaMorphism::degeneracy(1, 0));
        assert_eq!(f.compose(&e).unwrap(), IfasMorphism::from_empty(1));
        assert_eq!(IfasMorphism::identity(EMPTY), IfasMorphism::from_empty(EMPTY));
    }
}
