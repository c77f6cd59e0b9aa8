//! The Gabriel–Zisman complex `C_*(C, F)` of a truncated category with
//! coefficients in a tabulated functor.

use rayon::prelude::*;

use super::strings::StringIndex;
use crate::barfun::FunctorTable;
use crate::chain::TruncatedComplex;
use crate::croscat::CategoryTable;
use crate::error::Result;
use crate::matrix::{normalize, SparseMatrix, SparseVec};
use crate::ring::Ring;
use crate::scalar::Rat;

/// Generators of degree `n` are pairs (string `(f_n, …, f_1)`, basis vector of
/// `F(C_0)`), numbered string by string.
#[derive(Clone, Debug)]
pub struct GzComplex {
    pub strings: StringIndex,
    pub complex: TruncatedComplex,
}

pub(crate) fn normalize_in(ring: Ring, entries: Vec<(u32, Rat)>) -> SparseVec {
    let mut v = normalize(entries);
    if let Ring::PrimeField(_) = ring {
        v = v.into_iter().map(|(i, x)| (i, ring.norm(x))).filter(|(_, x)| !x.is_zero()).collect();
    }
    v
}

fn sign(i: usize) -> Rat {
    if i % 2 == 0 {
        Rat::one()
    } else {
        Rat::from_int(-1)
    }
}

impl GzComplex {
    /// Generator index of `(string s, basis vector x)` in degree `n`.
    pub fn generator(&self, n: usize, s: u32, x: u32) -> u32 {
        self.strings.gen_start(n, s) + x
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.strings.sizes()
    }
}

/// Assembles `C_0 … C_top` with `∂ = Σ (-1)^i ∂_i`.
pub fn build_gz_complex(
    table: &CategoryTable,
    functor: &FunctorTable,
    ring: Ring,
    top: usize,
    cap: u64,
) -> Result<GzComplex> {
    let strings = StringIndex::new(table, functor.dims(), top, cap)?;
    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        boundaries.push(gz_boundary(table, functor, ring, &strings, n));
    }
    let dims = strings.sizes();
    let complex = TruncatedComplex::new(ring, dims, boundaries)?;
    Ok(GzComplex { strings, complex })
}

fn gz_boundary(table: &CategoryTable, functor: &FunctorTable, ring: Ring, strings: &StringIndex, n: usize) -> SparseMatrix {
    let cols: Vec<SparseVec> = (0..strings.count(n) as u32)
        .into_par_iter()
        .flat_map_iter(|s| {
            let m = strings.morphisms(n, s);
            let root = strings.root(n, s);
            // ∂_0 drops f_1 and applies F(f_1)
            let d0 = strings.gen_start(n - 1, strings.rank(table, table.tgt(m[0]), &m[1..]));
            let mut faces: Vec<(u32, Rat)> = Vec::with_capacity(n);
            for i in 1..n {
                let mut c = m.clone();
                let composite = table.compose(c[i], c[i - 1]);
                c.splice(i - 1..=i, [composite]);
                faces.push((strings.gen_start(n - 1, strings.rank(table, root, &c)), sign(i)));
            }
            faces.push((strings.gen_start(n - 1, strings.prefix(n, s)), sign(n)));
            let f1 = functor.matrix(m[0]);
            (0..strings.weight(root) as u32).map(move |x| {
                let mut col: Vec<(u32, Rat)> = f1.column(x as usize).iter().map(|(y, c)| (d0 + y, c.clone())).collect();
                col.extend(faces.iter().map(|(g, sg)| (g + x, sg.clone())));
                normalize_in(ring, col)
            })
        })
        .collect();
    SparseMatrix::from_columns(strings.generators(n - 1), cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barfun::{BarFunctor, BarVariant};
    use crate::croscat::{CategoryKind, TruncatedCategory};
    use crate::homology::homology;
    use crate::invalg::InvolutiveAlgebra;

    fn ground(cat: &TruncatedCategory, ring: Ring) -> FunctorTable {
        BarFunctor::new(InvolutiveAlgebra::ground_ring(ring), BarVariant::Full).unwrap().tabulate(cat).unwrap()
    }

    #[test]
    fn smallest_sizes() {
        let cat = TruncatedCategory::new(CategoryKind::Full, 0);
        let gz = build_gz_complex(cat.table(), &ground(&cat, Ring::Rationals), Ring::Rationals, 1, u64::MAX).unwrap();
        assert_eq!(gz.sizes(), vec![1, 2]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        let cat = TruncatedCategory::new(CategoryKind::Full, 1);
        let a = InvolutiveAlgebra::cyclic(2, Ring::Rationals).unwrap();
        let f = BarFunctor::new(a, BarVariant::Full).unwrap().tabulate(&cat).unwrap();
        let gz = build_gz_complex(cat.table(), &f, Ring::Rationals, 2, u64::MAX).unwrap();
        assert!(gz.complex.d_squared_is_zero());
    }

    #[test]
    fn hand_built_two_string_cancels() {
        // ∂∂ on the single generator (t, t, 1) of ΔH_{≤0} with F = k
        let cat = TruncatedCategory::new(CategoryKind::Full, 0);
        let gz = build_gz_complex(cat.table(), &ground(&cat, Ring::Integers), Ring::Integers, 2, u64::MAX).unwrap();
        let t = cat.table();
        let flip = (0..2).find(|&f| !t.is_identity(f)).unwrap();
        let s = gz.strings.rank(t, 0, &[flip, flip]);
        let g = gz.generator(2, s, 0);
        let d2 = gz.complex.boundary_ref(2).unwrap();
        let d1 = gz.complex.boundary_ref(1).unwrap();
        assert!(d1.mul_vec(d2.column(g as usize)).is_empty());
    }

    #[test]
    fn ground_ring_degree_zero() {
        let cat = TruncatedCategory::new(CategoryKind::Full, 1);
        let gz = build_gz_complex(cat.table(), &ground(&cat, Ring::Rationals), Ring::Rationals, 1, u64::MAX).unwrap();
        assert_eq!(homology(&gz.complex).unwrap().betti, vec![1]);
    }
}
