//! The hyperoctahedral bar construction as a functor to exact matrices.

use rayon::prelude::*;

use crate::croscat::{IfasMorphism, Label, TruncatedCategory};
use crate::error::{Error, Result};
use crate::invalg::{InvolutiveAlgebra, TensorBasis};
use crate::matrix::{normalize, SparseMatrix, SparseVec};
use crate::scalar::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BarVariant {
    /// `H_A` on `ΔH`.
    Full,
    /// `H_I` on `EpiΔH`, on ideal-only basic tensors.
    Ideal,
    /// `H_{A+}` on `ΔH₊`, with value `k` at the empty object.
    Extended,
}

/// `[n] ↦ A^{⊗ n+1}`; a morphism multiplies the labelled, ordered fibres.
#[derive(Clone, Debug)]
pub struct BarFunctor {
    algebra: InvolutiveAlgebra,
    variant: BarVariant,
    basis: TensorBasis,
}

impl BarFunctor {
    /// The ideal variant requires an adapted augmented algebra; the others
    /// accept any algebra.
    pub fn new(algebra: InvolutiveAlgebra, variant: BarVariant) -> Result<BarFunctor> {
        if variant == BarVariant::Ideal && !algebra.is_adapted() {
            return Err(if algebra.augmentation().is_none() {
                Error::MissingAugmentation
            } else {
                Error::InvalidAlgebra("the ideal bar functor needs an adapted basis".into())
            });
        }
        let basis = TensorBasis { dim: algebra.dim(), ideal: variant == BarVariant::Ideal };
        Ok(BarFunctor { algebra, variant, basis })
    }

    pub fn algebra(&self) -> &InvolutiveAlgebra {
        &self.algebra
    }

    pub fn variant(&self) -> BarVariant {
        self.variant
    }

    pub fn basis(&self) -> TensorBasis {
        self.basis
    }

    /// Dimension of the value at `[n]`.
    pub fn dim_at(&self, n: i32) -> usize {
        self.basis.size(n)
    }

    /// Matrix of `F(f)`, columns indexed by the basis at the source.
    pub fn evaluate(&self, f: &IfasMorphism) -> Result<SparseMatrix> {
        match self.variant {
            BarVariant::Full if f.touches_empty() => return Err(Error::EmptyObject),
            BarVariant::Ideal if f.touches_empty() => return Err(Error::EmptyObject),
            BarVariant::Ideal if !f.is_epi() => return Err(Error::NotEpi),
            _ => {}
        }
        let rows = self.dim_at(f.target());
        let cols = (0..self.dim_at(f.source())).map(|c| self.apply_to_basis(f, c)).collect();
        Ok(SparseMatrix::from_columns(rows, cols))
    }

    /// Image of the basis tensor with index `col` under `F(f)`.
    pub fn apply_to_basis(&self, f: &IfasMorphism, col: usize) -> SparseVec {
        let digits = self.basis.decode(f.source(), col);
        let alg = &self.algebra;
        let ring = alg.ring();
        let unit: SparseVec = normalize(alg.unit().iter().enumerate().map(|(i, v)| (i as u32, v.clone())).collect());
        // one algebra element per target point
        let mut factors: Vec<SparseVec> = Vec::with_capacity(f.preimages().len());
        for fibre in f.preimages() {
            let mut acc: Option<SparseVec> = None;
            for &(p, label) in fibre {
                let b = digits[p as usize];
                let x: SparseVec = match label {
                    Label::One => vec![(b as u32, Rat::one())],
                    Label::T => alg.basis_involution(b).clone(),
                };
                acc = Some(match acc {
                    None => x,
                    Some(a) => self.multiply(&a, &x),
                });
            }
            factors.push(acc.unwrap_or_else(|| unit.clone()));
        }
        // expand the tensor product, factor 0 most significant
        let radix = self.basis.radix();
        let offset = usize::from(self.basis.ideal) as u32;
        let mut out: Vec<(u32, Rat)> = vec![(0, Rat::one())];
        for factor in &factors {
            let mut next = Vec::with_capacity(out.len() * factor.len());
            for (idx, c) in &out {
                for (k, v) in factor {
                    if self.basis.ideal && *k == 0 {
                        panic!("bar functor left the augmentation ideal");
                    }
                    next.push((idx * radix as u32 + (k - offset), c * v));
                }
            }
            out = next;
        }
        normalize(out.into_iter().map(|(i, v)| (i, ring.norm(v))).collect())
    }

    fn multiply(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let c = a * b;
                for (k, s) in self.algebra.basis_product(*i as usize, *j as usize) {
                    acc.push((*k, &c * s));
                }
            }
        }
        normalize(acc)
    }

    /// Every morphism of `cat` evaluated once, indexed like the category.
    pub fn tabulate(&self, cat: &TruncatedCategory) -> Result<FunctorTable> {
        let matrices = cat.morphisms().par_iter().map(|f| self.evaluate(f)).collect::<Result<Vec<_>>>()?;
        let dims = cat.objects().iter().map(|&n| self.dim_at(n)).collect();
        Ok(FunctorTable { matrices, dims })
    }
}

/// Memoized values of a functor on every morphism of a finite category.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FunctorTable {
    matrices: Vec<SparseMatrix>,
    dims: Vec<usize>,
}

impl FunctorTable {
    pub fn from_parts(matrices: Vec<SparseMatrix>, dims: Vec<usize>) -> FunctorTable {
        FunctorTable { matrices, dims }
    }

    pub fn matrix(&self, f: u32) -> &SparseMatrix {
        &self.matrices[f as usize]
    }

    pub fn matrices(&self) -> &[SparseMatrix] {
        &self.matrices
    }

    /// Dimension of the value at table object position `a`.
    pub fn dim(&self, a: u32) -> usize {
        self.dims[a as usize]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::croscat::{enumerate_hom, pair_to_ifas, CategoryKind, DeltaHMorphism, DeltaMorphism, HomVariant, HypElement};
    use crate::ring::Ring;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c3() -> InvolutiveAlgebra {
        InvolutiveAlgebra::cyclic(3, Ring::Rationals).unwrap()
    }

    #[test]
    fn sign_is_involution() {
        let a = c3();
        let f = BarFunctor::new(a.clone(), BarVariant::Full).unwrap();
        let m = f.evaluate(&IfasMorphism::from_hyp(&HypElement::t(1, 0))).unwrap();
        let dense = m.to_dense();
        assert_eq!(dense, a.involution_matrix().to_vec());
    }

    #[test]
    fn face_inserts_unit() {
        let f = BarFunctor::new(c3(), BarVariant::Full).unwrap();
        let m = f.evaluate(&IfasMorphism::from_delta(&DeltaMorphism::face(1, 0))).unwrap();
        // a ↦ 1 ⊗ a: column b goes to index 0*3 + b
        for b in 0..3 {
            assert_eq!(m.column(b), &[(b as u32, Rat::one())]);
        }
    }

    #[test]
    fn signed_degeneracy_by_hand() {
        // (σ_0, (t,1; id)) : a_0 ⊗ a_1 ↦ \bar{a_0} a_1 ; in C_3, \bar{g^i} g^j = g^{j-i}
        let f = BarFunctor::new(c3(), BarVariant::Full).unwrap();
        let g = HypElement::t(2, 0);
        let m = f.evaluate(&pair_to_ifas(&DeltaHMorphism::new(DeltaMorphism::degeneracy(0, 0), g).unwrap())).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let k = (j + 3 - i) % 3;
                assert_eq!(m.column(i * 3 + j), &[(k as u32, Rat::one())]);
            }
        }
    }

    #[test]
    fn functorial_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = BarFunctor::new(c3(), BarVariant::Full).unwrap();
        for _ in 0..300 {
            let objs: Vec<i32> = (0..3).map(|_| *[0, 1, 2].choose(&mut rng).unwrap()).collect();
            let a = enumerate_hom(objs[0], objs[1], HomVariant::All).choose(&mut rng).unwrap().clone();
            let b = enumerate_hom(objs[1], objs[2], HomVariant::All).choose(&mut rng).unwrap().clone();
            let lhs = f.evaluate(&b.compose(&a).unwrap()).unwrap();
            let rhs = f.evaluate(&b).unwrap().mul(&f.evaluate(&a).unwrap());
            assert_eq!(lhs, rhs);
        }
        for n in 0..3 {
            assert_eq!(f.evaluate(&IfasMorphism::identity(n)).unwrap(), SparseMatrix::identity(f.dim_at(n)));
        }
    }

    #[test]
    fn ideal_is_restriction() {
        let a = c3().adapt_basis().unwrap();
        let full = BarFunctor::new(a.clone(), BarVariant::Full).unwrap();
        let ideal = BarFunctor::new(a, BarVariant::Ideal).unwrap();
        for n in 0..3 {
            for m in 0..=n {
                for f in enumerate_hom(n, m, HomVariant::Epi).iter().step_by(7) {
                    let big = full.evaluate(f).unwrap();
                    let small = ideal.evaluate(f).unwrap();
                    let fb = full.basis();
                    let keep = |k: i32| -> Vec<usize> {
                        (0..fb.size(k)).filter(|&i| fb.decode(k, i).iter().all(|&x| x != 0)).collect()
                    };
                    let (rows, cols) = (keep(m), keep(n));
                    assert!(big.is_supported_on(&rows, &cols));
                    assert_eq!(big.select(&rows, &cols), small);
                }
            }
        }
        let non_epi = IfasMorphism::from_delta(&DeltaMorphism::face(1, 0));
        assert_eq!(BarFunctor::new(c3().adapt_basis().unwrap(), BarVariant::Ideal).unwrap().evaluate(&non_epi), Err(Error::NotEpi));
    }

    #[test]
    fn extended_inclusions() {
        let f = BarFunctor::new(c3(), BarVariant::Extended).unwrap();
        let i0 = f.evaluate(&IfasMorphism::from_empty(0)).unwrap();
        assert_eq!(i0.column(0), &[(0, Rat::one())]);
        assert_eq!(f.evaluate(&IfasMorphism::identity(-1)).unwrap(), SparseMatrix::identity(1));
        let cat = TruncatedCategory::new(CategoryKind::Extended, 2);
        let t = cat.table();
        for g in 0..t.num_morphisms() as u32 {
            let src = cat.position(-1).unwrap();
            let i_n = t.hom(src, t.src(g)).start;
            let lhs = f.evaluate(cat.morphism(g)).unwrap().mul(&f.evaluate(cat.morphism(i_n)).unwrap());
            let i_m = t.hom(src, t.tgt(g)).start;
            assert_eq!(lhs, f.evaluate(cat.morphism(i_m)).unwrap());
        }
        let plain = BarFunctor::new(c3(), BarVariant::Full).unwrap();
        assert_eq!(plain.evaluate(&IfasMorphism::from_empty(0)), Err(Error::EmptyObject));
    }
}
