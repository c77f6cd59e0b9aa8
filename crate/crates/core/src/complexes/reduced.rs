//! The splitting `C ≅ C_*(ΔH, I) ⊕ C_*(ΔH, k)` in an adapted basis, and the
//! contraction of the cover `k[N_*([0]↓ΔH)]` of the unit summand.

use super::gz::{build_gz_complex, GzComplex};
use crate::barfun::{BarFunctor, BarVariant, FunctorTable};
use crate::chain::{equal_in, ChainMap, TruncatedComplex};
use crate::croscat::{CategoryKind, CategoryTable, TruncatedCategory};
use crate::error::{Error, Result};
use crate::invalg::InvolutiveAlgebra;
use crate::matrix::{SparseMatrix, SparseVec};
use crate::ring::Ring;
use crate::scalar::Rat;

/// The Gabriel–Zisman complex of `H_A` in an adapted basis, split by whether
/// the basic tensor has a non-trivial factor. The all-unit tensor is index
/// `0` of every block, so the unit summand has one generator per string.
#[derive(Clone, Debug)]
pub struct ReducedSplit {
    pub algebra: InvolutiveAlgebra,
    pub functor: FunctorTable,
    pub full: GzComplex,
    /// `C_*(ΔH, I)`.
    pub ideal: TruncatedComplex,
    /// `C_*(ΔH, k)`.
    pub unit: TruncatedComplex,
}

impl ReducedSplit {
    /// Index in `C_I` of the full generator `(s, x)` with `x ≠ 0`.
    pub fn ideal_index(&self, n: usize, s: u32, x: u32) -> u32 {
        debug_assert!(x != 0);
        self.full.strings.gen_start(n, s) + x - (s + 1)
    }

    /// `(string, tensor index)` of a `C_I` generator.
    pub fn ideal_generator(&self, n: usize, i: u32) -> (u32, u32) {
        let st = &self.full.strings;
        // C_I block of s starts at gen_start(s) - s
        let (mut lo, mut hi) = (0u32, st.count(n) as u32);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if st.gen_start(n, mid) - mid <= i {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // skip strings whose ideal block is empty
        let mut s = lo;
        while st.gen_start(n, s + 1) - (s + 1) <= i {
            s += 1;
        }
        (s, i - (st.gen_start(n, s) - s) + 1)
    }

    pub fn ideal_columns(&self, n: usize) -> Vec<usize> {
        let st = &self.full.strings;
        (0..st.count(n) as u32)
            .flat_map(|s| {
                let start = st.gen_start(n, s) as usize;
                (start + 1)..(start + st.weight(st.root(n, s)))
            })
            .collect()
    }

    pub fn unit_columns(&self, n: usize) -> Vec<usize> {
        let st = &self.full.strings;
        (0..st.count(n) as u32).map(|s| st.gen_start(n, s) as usize).collect()
    }

    /// Degrees whose boundary has an entry between the two summands.
    pub fn off_diagonal_degrees(&self) -> Vec<usize> {
        (1..=self.full.complex.top())
            .filter(|&n| {
                let d = self.full.complex.boundary_ref(n).unwrap();
                !d.is_supported_on(&self.ideal_columns(n - 1), &self.ideal_columns(n))
                    || !d.is_supported_on(&self.unit_columns(n - 1), &self.unit_columns(n))
            })
            .collect()
    }
}

/// Adapts the basis if needed; requires an augmentation.
pub fn adapted(algebra: &InvolutiveAlgebra) -> Result<InvolutiveAlgebra> {
    if algebra.augmentation().is_none() {
        return Err(Error::MissingAugmentation);
    }
    if algebra.is_adapted() {
        Ok(algebra.clone())
    } else {
        algebra.adapt_basis()
    }
}

pub fn build_reduced_split(cat: &TruncatedCategory, algebra: &InvolutiveAlgebra, top: usize, cap: u64) -> Result<ReducedSplit> {
    if cat.kind() != CategoryKind::Full {
        return Err(Error::InvalidMorphism("the reduced split lives on the full category".into()));
    }
    let algebra = adapted(algebra)?;
    let ring = algebra.ring();
    let functor = BarFunctor::new(algebra.clone(), BarVariant::Full)?.tabulate(cat)?;
    let full = build_gz_complex(cat.table(), &functor, ring, top, cap)?;
    let mut split = ReducedSplit {
        algebra,
        functor,
        full,
        ideal: TruncatedComplex::zero(ring, 0),
        unit: TruncatedComplex::zero(ring, 0),
    };
    let mut ideal_b = Vec::new();
    let mut unit_b = Vec::new();
    for n in 1..=top {
        let d = split.full.complex.boundary_ref(n).unwrap();
        ideal_b.push(d.select(&split.ideal_columns(n - 1), &split.ideal_columns(n)));
        unit_b.push(d.select(&split.unit_columns(n - 1), &split.unit_columns(n)));
    }
    let ideal_dims = (0..=top).map(|n| split.ideal_columns(n).len()).collect();
    let unit_dims = (0..=top).map(|n| split.full.strings.count(n)).collect();
    split.ideal = TruncatedComplex::new(ring, ideal_dims, ideal_b)?;
    split.unit = TruncatedComplex::new(ring, unit_dims, unit_b)?;
    Ok(split)
}

/// `k[N_*([0]↓ΔH_{≤N})]` with its projection onto `C_*(ΔH, k)` and the
/// contraction `h(f_n, …, f_1, f) = (f_n, …, f_1, f, id_0)`.
#[derive(Clone, Debug)]
pub struct UnitHomotopy {
    pub cover: GzComplex,
    pub projection: ChainMap,
    /// `h[n] : cover_n → cover_{n+1}` for `n < top`.
    pub h: Vec<SparseMatrix>,
    /// Generator `(id_0)` of degree `0`, the image of `1_k`.
    pub base_point: u32,
}

/// `k[Hom([0], −)]` on a category whose object `0` is `[0]`.
fn representable(table: &CategoryTable) -> FunctorTable {
    let dims: Vec<usize> = (0..table.num_objects() as u32).map(|a| table.hom(0, a).len()).collect();
    let matrices = (0..table.num_morphisms() as u32)
        .map(|f| {
            let (a, b) = (table.src(f), table.tgt(f));
            let sb = table.hom(0, b).start;
            let cols = table.hom(0, a).map(|g| vec![(table.compose(f, g) - sb, Rat::one())]).collect();
            SparseMatrix::from_columns(dims[b as usize], cols)
        })
        .collect();
    FunctorTable::from_parts(matrices, dims)
}

pub fn contracting_homotopy_unit(cat: &TruncatedCategory, ring: Ring, top: usize, cap: u64) -> Result<UnitHomotopy> {
    if cat.object(0) != 0 {
        return Err(Error::InvalidMorphism("object [0] must come first".into()));
    }
    let table = cat.table();
    let rep = representable(table);
    let cover = build_gz_complex(table, &rep, ring, top, cap)?;
    let st = &cover.strings;
    let id0 = table.identity(0) - table.hom(0, 0).start;
    let projection = ChainMap {
        matrices: (0..=top)
            .map(|n| {
                let cols = (0..st.count(n) as u32)
                    .flat_map(|s| std::iter::repeat_n(vec![(s, Rat::one())], st.weight(st.root(n, s))))
                    .collect();
                SparseMatrix::from_columns(st.count(n), cols)
            })
            .collect(),
    };
    let h = (0..top)
        .map(|n| {
            let mut cols: Vec<SparseVec> = Vec::with_capacity(st.generators(n));
            for s in 0..st.count(n) as u32 {
                let root = st.root(n, s);
                let m = st.morphisms(n, s);
                for g in table.hom(0, root) {
                    let mut longer = Vec::with_capacity(n + 1);
                    longer.push(g);
                    longer.extend_from_slice(&m);
                    let t = st.rank(table, 0, &longer);
                    cols.push(vec![(st.gen_start(n + 1, t) + id0, Rat::one())]);
                }
            }
            SparseMatrix::from_columns(st.generators(n + 1), cols)
        })
        .collect();
    let base_point = st.gen_start(0, 0) + id0;
    Ok(UnitHomotopy { cover, projection, h, base_point })
}

impl UnitHomotopy {
    /// Degrees `n < top` where the contraction identity fails:
    /// `∂h_0 = id − η ε` and `∂h_n + h_{n-1}∂ = id` for `n ≥ 1`.
    pub fn failures(&self) -> Vec<usize> {
        let c = &self.cover.complex;
        let mut out = Vec::new();
        for n in 0..self.h.len() {
            let dim = c.dim(n);
            let mut lhs = c.boundary_ref(n + 1).unwrap().mul(&self.h[n]);
            let mut rhs = SparseMatrix::identity(dim);
            if n == 0 {
                let eta_eps = SparseMatrix::from_columns(dim, vec![vec![(self.base_point, Rat::one())]; dim]);
                rhs = rhs.sub(&eta_eps);
            } else {
                lhs = lhs.add(&self.h[n - 1].mul(c.boundary_ref(n).unwrap()));
            }
            if !equal_in(c.ring(), &lhs, &rhs) {
                out.push(n);
            }
        }
        out
    }

    /// `ε ∂_1 = 0`.
    pub fn augmentation_is_chain_map(&self) -> bool {
        match self.cover.complex.boundary_ref(1) {
            None => true,
            Some(d) => d.columns().iter().all(|c| c.iter().fold(Rat::zero(), |acc, (_, v)| &acc + v).is_zero()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology;

    #[test]
    fn ground_ring_has_no_ideal_part() {
        let cat = TruncatedCategory::new(CategoryKind::Full, 1);
        let split = build_reduced_split(&cat, &InvolutiveAlgebra::ground_ring(Ring::Rationals), 2, u64::MAX).unwrap();
        assert_eq!(split.ideal.dims(), &[0, 0, 0]);
        assert_eq!(split.unit.dims(), split.full.complex.dims());
    }

    #[test]
    fn degree_zero_ideal_count() {
        // ℚ[C₂], objects [0], [1]: (d-1) + (d² - 1) = 1 + 3 basic tensors with a non-trivial factor
        let cat = TruncatedCategory::new(CategoryKind::Full, 1);
        let a = InvolutiveAlgebra::cyclic(2, Ring::Rationals).unwrap();
        let split = build_reduced_split(&cat, &a, 1, u64::MAX).unwrap();
        assert_eq!(split.ideal.dim(0), 4);
        assert_eq!(split.unit.dim(0), 2);
    }

    #[test]
    fn boundary_is_block_diagonal() {
        let cat = TruncatedCategory::new(CategoryKind::Full, 1);
        let a = InvolutiveAlgebra::cyclic(3, Ring::Rationals).unwrap();
        let split = build_reduced_split(&cat, &a, 2, u64::MAX).unwrap();
        assert!(split.off_diagonal_degrees().is_empty());
        for n in 0..=2 {
            for i in 0..split.ideal.dim(n) as u32 {
                let (s, x) = split.ideal_generator(n, i);
                assert_eq!(split.ideal_index(n, s, x), i);
            }
        }
    }

    #[test]
    fn missing_augmentation_is_refused() {
        let cat = TruncatedCategory::new(CategoryKind::Full, 0);
        let a = InvolutiveAlgebra::new(
            Ring::Rationals,
            vec!["1".into()],
            vec![Rat::one()],
            vec![Rat::one()],
            vec![vec![Rat::one()]],
            None,
        )
        .unwrap();
        assert_eq!(build_reduced_split(&cat, &a, 1, u64::MAX).unwrap_err(), Error::MissingAugmentation);
    }

    #[test]
    fn unit_homotopy_identities() {
        let cat = TruncatedCategory::new(CategoryKind::Full, 1);
        let u = contracting_homotopy_unit(&cat, Ring::Rationals, 3, u64::MAX).unwrap();
        assert!(u.cover.complex.d_squared_is_zero());
        assert!(u.failures().is_empty());
        assert!(u.augmentation_is_chain_map());
        let split = build_reduced_split(&cat, &InvolutiveAlgebra::ground_ring(Ring::Rationals), 3, u64::MAX).unwrap();
        assert!(u.projection.is_chain_map(&u.cover.complex, &split.unit));
        assert_eq!(homology(&split.unit).unwrap().betti, vec![1, 0, 0]);
    }
}
