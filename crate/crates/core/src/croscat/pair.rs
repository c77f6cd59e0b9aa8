//! `ΔH` in its presentation by pairs `(φ, g)`, composed with the
//! star-relations, and the isomorphism with `IF(as)`.

use std::fmt;

use super::delta::{DeltaGen, DeltaMorphism};
use super::hyp::{word_product, HypElement, HypGen, Label};
use super::ifas::IfasMorphism;
use crate::error::{Error, Result};

/// `φ ∘ g` with `φ` order-preserving and `g` a signed permutation of the
/// source of `φ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DeltaHMorphism {
    phi: DeltaMorphism,
    g: HypElement,
}

impl DeltaHMorphism {
    pub fn new(phi: DeltaMorphism, g: HypElement) -> Result<DeltaHMorphism> {
        if g.size() != phi.source() + 1 {
            return Err(Error::SizeMismatch { left: phi.source() + 1, right: g.size() });
        }
        Ok(DeltaHMorphism { phi, g })
    }

    pub fn identity(n: usize) -> DeltaHMorphism {
        DeltaHMorphism { phi: DeltaMorphism::identity(n), g: HypElement::identity(n + 1) }
    }

    pub fn from_delta(phi: DeltaMorphism) -> DeltaHMorphism {
        let g = HypElement::identity(phi.source() + 1);
        DeltaHMorphism { phi, g }
    }

    pub fn from_hyp(g: HypElement) -> DeltaHMorphism {
        let phi = DeltaMorphism::identity(g.size() - 1);
        DeltaHMorphism { phi, g }
    }

    pub fn phi(&self) -> &DeltaMorphism {
        &self.phi
    }

    pub fn g(&self) -> &HypElement {
        &self.g
    }

    pub fn source(&self) -> usize {
        self.phi.source()
    }

    pub fn target(&self) -> usize {
        self.phi.target()
    }

    /// `(ψ, h) ∘ (φ, g) = (ψ ∘ h_*(φ), φ^*(h) ∘ g)`.
    pub fn compose(&self, rhs: &DeltaHMorphism) -> Result<DeltaHMorphism> {
        if rhs.target() != self.source() {
            return Err(Error::ObjectMismatch { inner_target: rhs.target() as i32, outer_source: self.source() as i32 });
        }
        let (moved, residual) = star(&self.g, &rhs.phi);
        Ok(DeltaHMorphism {
            phi: self.phi.compose(&moved).expect("star preserves objects"),
            g: residual.compose_unchecked(&rhs.g),
        })
    }

    pub fn to_ifas(&self) -> IfasMorphism {
        pair_to_ifas(self)
    }
}

impl fmt::Debug for DeltaHMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.phi, self.g)
    }
}

/// `h ∘ φ = h_*(φ) ∘ φ^*(h)`, computed from the generator tables.
/// Returns `(h_*(φ), φ^*(h))`.
pub fn star(h: &HypElement, phi: &DeltaMorphism) -> (DeltaMorphism, HypElement) {
    let dword = phi.generator_word();
    let mut hword = h.generator_word();
    let mut moved = Vec::with_capacity(dword.len());
    let mut size = h.size();
    for &d in &dword {
        let (d2, residual) = push_word(&hword, d);
        size = match d {
            DeltaGen::Face(n, _) => n,
            DeltaGen::Degen(n, _) => n + 2,
        };
        moved.push(d2);
        hword = word_product(size, &residual).generator_word();
    }
    let mut acc = DeltaMorphism::identity(phi.target());
    for d in &moved {
        acc = acc.compose(&d.morphism()).expect("generator word is composable");
    }
    (acc, word_product(size, &hword))
}

/// Moves the word `w_1 … w_l` past one generator `d`, right to left.
fn push_word(hword: &[HypGen], d: DeltaGen) -> (DeltaGen, Vec<HypGen>) {
    let mut cur = d;
    let mut residuals: Vec<Vec<HypGen>> = Vec::with_capacity(hword.len());
    for &w in hword.iter().rev() {
        let (next, r) = push_generator(w, cur);
        cur = next;
        residuals.push(r);
    }
    // w_1 … w_l d = d' R_1 … R_l, and residuals were collected from R_l down
    (cur, residuals.into_iter().rev().flatten().collect())
}

/// The base relation table: `w ∘ d = w_*(d) ∘ d^*(w)` for single generators.
pub fn push_generator(w: HypGen, d: DeltaGen) -> (DeltaGen, Vec<HypGen>) {
    use std::cmp::Ordering::*;
    match d {
        DeltaGen::Face(n, i) => {
            // δ_i : [n-1] → [n]; residual in H_n
            let src = n;
            match w {
                HypGen::Theta(_, k) => {
                    let target_index = if k + 1 == i {
                        i - 1
                    } else if k == i {
                        i + 1
                    } else {
                        i
                    };
                    let r = if k + 1 < i {
                        vec![HypGen::Theta(src, k)]
                    } else if k + 1 == i || k == i {
                        vec![]
                    } else {
                        vec![HypGen::Theta(src, k - 1)]
                    };
                    (DeltaGen::Face(n, target_index), r)
                }
                HypGen::T(_, k) => {
                    let r = match k.cmp(&i) {
                        Less => vec![HypGen::T(src, k)],
                        Equal => vec![],
                        Greater => vec![HypGen::T(src, k - 1)],
                    };
                    (DeltaGen::Face(n, i), r)
                }
            }
        }
        DeltaGen::Degen(n, j) => {
            // σ_j : [n+1] → [n]; residual in H_{n+2}
            let src = n + 2;
            match w {
                HypGen::Theta(_, k) => {
                    let target_index = if k + 1 == j {
                        j - 1
                    } else if k == j {
                        j + 1
                    } else {
                        j
                    };
                    let r = if k + 1 < j {
                        vec![HypGen::Theta(src, k)]
                    } else if k + 1 == j {
                        vec![HypGen::Theta(src, j), HypGen::Theta(src, j - 1)]
                    } else if k == j {
                        vec![HypGen::Theta(src, j), HypGen::Theta(src, j + 1)]
                    } else {
                        vec![HypGen::Theta(src, k + 1)]
                    };
                    (DeltaGen::Degen(n, target_index), r)
                }
                HypGen::T(_, k) => {
                    let r = match k.cmp(&j) {
                        Less => vec![HypGen::T(src, k)],
                        Equal => vec![HypGen::Theta(src, j), HypGen::T(src, j + 1), HypGen::T(src, j)],
                        Greater => vec![HypGen::T(src, k + 1)],
                    };
                    (DeltaGen::Degen(n, j), r)
                }
            }
        }
    }
}

/// `(φ, g) ↦ φ • g`: the fibre over `j` lists `{i : φ(σ(i)) = j}` ordered by
/// `σ(i)`, each `i` labelled `z_i`.
pub fn pair_to_ifas(f: &DeltaHMorphism) -> IfasMorphism {
    let g = &f.g;
    let inv = g.inverse();
    let mut preimages = vec![Vec::new(); f.target() + 1];
    for k in 0..=f.source() {
        let i = inv.apply(k);
        preimages[f.phi.apply(k)].push((i as u8, g.signs()[i]));
    }
    IfasMorphism::from_parts_unchecked(f.source() as i32, f.target() as i32, preimages)
}

/// Inverse of [`pair_to_ifas`]. Rejects morphisms touching the empty object.
pub fn ifas_to_pair(f: &IfasMorphism) -> Result<DeltaHMorphism> {
    if f.touches_empty() {
        return Err(Error::EmptyObject);
    }
    let n = f.source() as usize;
    let mut values = Vec::with_capacity(n + 1);
    let mut signs = vec![Label::One; n + 1];
    let mut perm = vec![0u8; n + 1];
    let mut offset = 0u8;
    for (j, fibre) in f.preimages().iter().enumerate() {
        for &(i, l) in fibre {
            values.push(j as u8);
            perm[i as usize] = offset;
            signs[i as usize] = l;
            offset += 1;
        }
    }
    Ok(DeltaHMorphism {
        phi: DeltaMorphism::from_parts_unchecked(f.target() as usize, values),
        g: HypElement::from_parts_unchecked(signs, perm),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degeneracy_pulls_back_sign() {
        // σ_0^*(t_0) = θ_0 t_1 t_0 in H_2
        let (moved, residual) = star(&HypElement::t(1, 0), &DeltaMorphism::degeneracy(0, 0));
        assert_eq!(moved, DeltaMorphism::degeneracy(0, 0));
        let expected =
            word_product(2, &[HypGen::Theta(2, 0), HypGen::T(2, 1), HypGen::T(2, 0)]);
        assert_eq!(residual, expected);
    }

    #[test]
    fn degeneracy_then_sign() {
        let sigma0 = DeltaHMorphism::from_delta(DeltaMorphism::degeneracy(0, 0));
        let t0 = DeltaHMorphism::from_hyp(HypElement::t(2, 0));
        let c = sigma0.compose(&t0).unwrap();
        assert_eq!(c, DeltaHMorphism::new(DeltaMorphism::degeneracy(0, 0), HypElement::t(2, 0)).unwrap());
        let via_ifas = sigma0.to_ifas().compose(&t0.to_ifas()).unwrap();
        assert_eq!(pair_to_ifas(&c), via_ifas);
    }

    #[test]
    fn face_with_identity() {
        let d = DeltaHMorphism::from_delta(DeltaMorphism::face(1, 1));
        assert_eq!(d.compose(&DeltaHMorphism::identity(0)).unwrap(), d);
        assert_eq!(DeltaHMorphism::identity(1).compose(&d).unwrap(), d);
    }

    #[test]
    fn canonical_fibres_for_order_preserving() {
        let phi = DeltaMorphism::new(1, vec![0, 0, 1]).unwrap();
        let f = pair_to_ifas(&DeltaHMorphism::from_delta(phi.clone()));
        assert_eq!(f, IfasMorphism::from_delta(&phi));
    }

    #[test]
    fn generator_table_matches_ifas() {
        for n in 1..4 {
            for i in 0..=n {
                let d = DeltaGen::Face(n, i);
                for w in generators(n + 1) {
                    check_push(w, d);
                }
            }
        }
        for n in 0..3 {
            for j in 0..=n {
                let d = DeltaGen::Degen(n, j);
                for w in generators(n + 1) {
                    check_push(w, d);
                }
            }
        }
    }

    fn generators(size: usize) -> Vec<HypGen> {
        let mut out: Vec<HypGen> = (0..size).map(|i| HypGen::T(size, i)).collect();
        out.extend((0..size.saturating_sub(1)).map(|j| HypGen::Theta(size, j)));
        out
    }

    fn check_push(w: HypGen, d: DeltaGen) {
        let (d2, r) = push_generator(w, d);
        let dm = d.morphism();
        let lhs = IfasMorphism::from_hyp(&w.element()).compose(&IfasMorphism::from_delta(&dm)).unwrap();
        let r = word_product(dm.source() + 1, &r);
        let rhs = IfasMorphism::from_delta(&d2.morphism()).compose(&IfasMorphism::from_hyp(&r)).unwrap();
        assert_eq!(lhs, rhs, "w={w:?} d={d:?}");
    }
}
