//! The epimorphism construction: `C_*(EpiΔH, H_I)`, the chain maps `χ` and
//! `i` relating it to `C_I`, and the presimplicial homotopy between `i∘χ` and
//! the identity.

use rayon::prelude::*;

use super::gz::{build_gz_complex, GzComplex};
use super::reduced::{adapted, ReducedSplit};
use crate::barfun::{BarFunctor, BarVariant, FunctorTable};
use crate::chain::{equal_in, ChainMap, TruncatedComplex};
use crate::croscat::{epi_mono_ifas, CategoryKind, DeltaMorphism, IfasMorphism, TruncatedCategory};
use crate::error::{Error, Result};
use crate::invalg::{InvolutiveAlgebra, TensorBasis};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::scalar::Rat;

/// Global sign in `h = HOMOTOPY_SIGN · Σ_j (−1)^j h_j`, chosen so that
/// `∂h + h∂ = id − i∘χ`.
pub const HOMOTOPY_SIGN: i64 = 1;

/// `E_x(f)`: the epi part of the epi–mono factorization of `f : [x] → [m]`.
pub fn epimorphism_construction(f: &IfasMorphism) -> IfasMorphism {
    epi_mono_ifas(f).1
}

/// For `ψ : f₁ → f₂` in the under-category of `[x]` (so `ψ ∘ f₁ = f₂`), the
/// unique epimorphism `e` with `ψ ∘ i_{f₁} = i_{f₂} ∘ e`.
pub fn induced_morphism(f1: &IfasMorphism, psi: &IfasMorphism) -> Result<IfasMorphism> {
    let (mono, _) = epi_mono_ifas(f1);
    let (_, e) = epi_mono_ifas(&psi.compose(&IfasMorphism::from_delta(&mono))?);
    Ok(e)
}

/// `C_*(EpiΔH_{≤N}, H_I)` for an adapted augmented algebra.
#[derive(Clone, Debug)]
pub struct EpiComplex {
    pub algebra: InvolutiveAlgebra,
    pub functor: FunctorTable,
    pub gz: GzComplex,
}

impl EpiComplex {
    pub fn complex(&self) -> &TruncatedComplex {
        &self.gz.complex
    }
}

pub fn build_epi_complex(cat: &TruncatedCategory, algebra: &InvolutiveAlgebra, top: usize, cap: u64) -> Result<EpiComplex> {
    if cat.kind() != CategoryKind::Epi {
        return Err(Error::InvalidMorphism("the epi complex lives on the epimorphism category".into()));
    }
    let algebra = adapted(algebra)?;
    let ring = algebra.ring();
    let functor = BarFunctor::new(algebra.clone(), BarVariant::Ideal)?.tabulate(cat)?;
    let gz = build_gz_complex(cat.table(), &functor, ring, top, cap)?;
    Ok(EpiComplex { algebra, functor, gz })
}

/// The data relating `C_I` on `ΔH_{≤N}` and the epi complex on `EpiΔH_{≤N}`.
pub struct EpiComparison<'a> {
    pub full_cat: &'a TruncatedCategory,
    pub split: &'a ReducedSplit,
    pub epi_cat: &'a TruncatedCategory,
    pub epi: &'a EpiComplex,
    /// Full-category index of every epi-category morphism.
    epi_to_full: Vec<u32>,
}

/// A `C_I` generator `(f_n, …, f_1; x)` with `x = m(Y)`: `m` inserts units
/// where `x` has trivial factors and `Y` is ideal-only. `bars[k]` and
/// `monos[k]` factor `f_{k+1} ∘ monos[k-1]`, starting from `m`.
struct Factored {
    ideal_object: i32,
    y: Vec<usize>,
    morphisms: Vec<u32>,
    bars: Vec<IfasMorphism>,
    monos: Vec<DeltaMorphism>,
}

fn position(cat: &TruncatedCategory, n: i32) -> Result<u32> {
    cat.position(n).ok_or_else(|| Error::OutsideTruncation(format!("object [{n}]")))
}

fn lookup(cat: &TruncatedCategory, f: &IfasMorphism) -> Result<u32> {
    cat.index_of(f).ok_or_else(|| Error::OutsideTruncation(format!("{f:?}")))
}

impl<'a> EpiComparison<'a> {
    pub fn new(
        full_cat: &'a TruncatedCategory,
        split: &'a ReducedSplit,
        epi_cat: &'a TruncatedCategory,
        epi: &'a EpiComplex,
    ) -> Result<EpiComparison<'a>> {
        if split.algebra != epi.algebra {
            return Err(Error::InvalidAlgebra("split and epi complex use different algebras".into()));
        }
        let epi_to_full = epi_cat.morphisms().iter().map(|f| lookup(full_cat, f)).collect::<Result<Vec<_>>>()?;
        Ok(EpiComparison { full_cat, split, epi_cat, epi, epi_to_full })
    }

    fn top(&self) -> usize {
        self.split.ideal.top().min(self.epi.complex().top())
    }

    fn full_basis(&self) -> TensorBasis {
        TensorBasis { dim: self.split.algebra.dim(), ideal: false }
    }

    fn ideal_basis(&self) -> TensorBasis {
        TensorBasis { dim: self.split.algebra.dim(), ideal: true }
    }

    fn factor(&self, n: usize, i: u32) -> Result<Factored> {
        let st = &self.split.full.strings;
        let (s, x) = self.split.ideal_generator(n, i);
        let root = self.full_cat.object(st.root(n, s));
        let digits = self.full_basis().decode(root, x as usize);
        let support: Vec<u8> = (0..digits.len()).filter(|&p| digits[p] != 0).map(|p| p as u8).collect();
        let y: Vec<usize> = support.iter().map(|&p| digits[p as usize]).collect();
        let m = DeltaMorphism::from_parts_unchecked(root as usize, support);
        let morphisms = st.morphisms(n, s);
        let mut bars = Vec::with_capacity(n);
        let mut monos = vec![m];
        for &f in &morphisms {
            let g = self.full_cat.morphism(f).compose(&IfasMorphism::from_delta(monos.last().unwrap()))?;
            let (mono, epi) = epi_mono_ifas(&g);
            bars.push(epi);
            monos.push(mono);
        }
        Ok(Factored { ideal_object: y.len() as i32 - 1, y, morphisms, bars, monos })
    }

    /// `C_I` index of the string `morphisms` (full indices) rooted at `[root]`
    /// with the ideal-only tensor `y`.
    fn ideal_target(&self, n: usize, root: i32, morphisms: &[u32], y: &[usize]) -> Result<u32> {
        let st = &self.split.full.strings;
        let s = st.rank(self.full_cat.table(), position(self.full_cat, root)?, morphisms);
        Ok(self.split.ideal_index(n, s, self.full_basis().encode(y) as u32))
    }

    /// `χ : C_I → C_*(EpiΔH, H_I)`.
    pub fn chi_chain_map(&self) -> Result<ChainMap> {
        let epi_table = self.epi_cat.table();
        let est = &self.epi.gz.strings;
        let matrices = (0..=self.top())
            .map(|n| {
                let cols = (0..self.split.ideal.dim(n) as u32)
                    .into_par_iter()
                    .map(|i| {
                        let fac = self.factor(n, i)?;
                        let bars = fac.bars.iter().map(|e| lookup(self.epi_cat, e)).collect::<Result<Vec<_>>>()?;
                        let s = est.rank(epi_table, position(self.epi_cat, fac.ideal_object)?, &bars);
                        let g = est.gen_start(n, s) + self.ideal_basis().encode(&fac.y) as u32;
                        Ok(vec![(g, Rat::one())])
                    })
                    .collect::<Result<Vec<SparseVec>>>()?;
                Ok(SparseMatrix::from_columns(self.epi.complex().dim(n), cols))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { matrices })
    }

    /// `i : C_*(EpiΔH, H_I) → C_I`, reading epis as morphisms of `ΔH`.
    pub fn inclusion_chain_map(&self) -> Result<ChainMap> {
        let est = &self.epi.gz.strings;
        let matrices = (0..=self.top())
            .map(|n| {
                let mut cols = Vec::with_capacity(est.generators(n));
                for s in 0..est.count(n) as u32 {
                    let root = self.epi_cat.object(est.root(n, s));
                    let morphisms: Vec<u32> = est.morphisms(n, s).iter().map(|&e| self.epi_to_full[e as usize]).collect();
                    for y in 0..est.weight(est.root(n, s)) {
                        let digits = self.ideal_basis().decode(root, y);
                        cols.push(vec![(self.ideal_target(n, root, &morphisms, &digits)?, Rat::one())]);
                    }
                }
                Ok(SparseMatrix::from_columns(self.split.ideal.dim(n), cols))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { matrices })
    }

    /// `h[n] : C_I,n → C_I,n+1` for `n < top`, where `h_j` applies the
    /// epimorphism construction to `f_1, …, f_j` and inserts `i_j`.
    pub fn presimplicial_homotopy(&self) -> Result<Vec<SparseMatrix>> {
        let top = self.split.ideal.top();
        (0..top)
            .map(|n| {
                let cols = (0..self.split.ideal.dim(n) as u32)
                    .into_par_iter()
                    .map(|i| {
                        let fac = self.factor(n, i)?;
                        let mut col = Vec::with_capacity(n + 1);
                        for j in 0..=n {
                            let mut m = Vec::with_capacity(n + 1);
                            for bar in &fac.bars[..j] {
                                m.push(lookup(self.full_cat, bar)?);
                            }
                            m.push(lookup(self.full_cat, &IfasMorphism::from_delta(&fac.monos[j]))?);
                            m.extend_from_slice(&fac.morphisms[j..]);
                            let g = self.ideal_target(n + 1, fac.ideal_object, &m, &fac.y)?;
                            let sign = if j % 2 == 0 { HOMOTOPY_SIGN } else { -HOMOTOPY_SIGN };
                            col.push((g, Rat::from_int(sign)));
                        }
                        Ok(super::gz::normalize_in(self.split.ideal.ring(), col))
                    })
                    .collect::<Result<Vec<SparseVec>>>()?;
                Ok(SparseMatrix::from_columns(self.split.ideal.dim(n + 1), cols))
            })
            .collect()
    }

    /// Degrees `n < top` where `∂h + h∂ ≠ id − i∘χ`.
    pub fn homotopy_failures(&self, chi: &ChainMap, incl: &ChainMap, h: &[SparseMatrix]) -> Vec<usize> {
        let c = &self.split.ideal;
        (0..h.len())
            .filter(|&n| {
                let mut lhs = c.boundary_ref(n + 1).unwrap().mul(&h[n]);
                if n > 0 {
                    lhs = lhs.add(&h[n - 1].mul(c.boundary_ref(n).unwrap()));
                }
                let rhs = SparseMatrix::identity(c.dim(n)).sub(&incl.degree(n).mul(chi.degree(n)));
                !equal_in(c.ring(), &lhs, &rhs)
            })
            .collect()
    }
}
