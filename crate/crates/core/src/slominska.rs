//! Reduced homology in characteristic zero as the homotopy colimit over the
//! subset poset `S₀` of the coinvariants `ℰ_I(X)_{𝒜(X)}`.

use rayon::prelude::*;

use crate::barfun::{BarFunctor, BarVariant, FunctorTable};
use crate::complexes::{adapted, build_gz_complex, GzComplex};
use crate::croscat::{CategoryKind, CategoryTable, TruncatedCategory};
use crate::error::{Error, Result};
use crate::homology::field::{convert_column, Echelon, Rationals};
use crate::homology::solve::TrackedEchelon;
use crate::invalg::InvolutiveAlgebra;
use crate::matrix::{normalize, SparseMatrix, SparseVec};
use crate::ring::Ring;
use crate::scalar::Rat;

/// A non-empty subset `{x_r < … < x_0}` of `{0..N}`, stored ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct S0Object {
    points: Vec<u8>,
}

impl S0Object {
    pub fn new(mut points: Vec<u8>) -> Result<S0Object> {
        points.sort_unstable();
        points.dedup();
        if points.is_empty() {
            return Err(Error::InvalidMorphism("objects of S₀ are non-empty".into()));
        }
        Ok(S0Object { points })
    }

    fn from_mask(mask: u32) -> S0Object {
        S0Object { points: (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b as u8).collect() }
    }

    fn mask(&self) -> u32 {
        self.points.iter().fold(0, |m, &p| m | 1 << p)
    }

    pub fn points(&self) -> &[u8] {
        &self.points
    }

    /// `r`, one less than the number of points.
    pub fn length(&self) -> usize {
        self.points.len() - 1
    }

    /// `x_i`; `x_0` is the largest point.
    pub fn x(&self, i: usize) -> i32 {
        self.points[self.points.len() - 1 - i] as i32
    }

    pub fn contains(&self, other: &S0Object) -> bool {
        other.mask() & !self.mask() == 0
    }
}

/// `S₀` restricted to subsets of `{0..N}`: a morphism `X → X'` exists, and is
/// unique, iff `X' ⊆ X`.
#[derive(Clone, Debug)]
pub struct S0Category {
    objects: Vec<S0Object>,
    table: CategoryTable,
}

pub fn build_s0(max_object: usize) -> S0Category {
    let objects: Vec<S0Object> = (1..1u32 << (max_object + 1)).map(S0Object::from_mask).collect();
    let homs: Vec<Vec<usize>> =
        objects.iter().map(|a| objects.iter().map(|b| usize::from(a.contains(b))).collect()).collect();
    let identity = vec![0; objects.len()];
    let table = CategoryTable::build(&homs, &identity, |t, g, f| t.hom(t.src(f), t.tgt(g)).start);
    S0Category { objects, table }
}

impl S0Category {
    pub fn objects(&self) -> &[S0Object] {
        &self.objects
    }

    pub fn object(&self, a: u32) -> &S0Object {
        &self.objects[a as usize]
    }

    pub fn position(&self, x: &S0Object) -> Option<u32> {
        self.objects.iter().position(|o| o == x).map(|p| p as u32)
    }

    pub fn table(&self) -> &CategoryTable {
        &self.table
    }

    /// The morphism `X → X'`, when `X' ⊆ X`.
    pub fn morphism(&self, a: u32, b: u32) -> Option<u32> {
        let h = self.table.hom(a, b);
        (!h.is_empty()).then_some(h.start)
    }
}

/// `𝒜`, `ℰ` and `H_I` on `EpiΔH_{≤N}`, with everything indexed by the epi
/// category's morphism numbering.
pub struct SlominskaData {
    pub epi_cat: TruncatedCategory,
    pub algebra: InvolutiveAlgebra,
    pub ideal: FunctorTable,
    inverse: Vec<u32>,
}

/// Elements of `ℰ(X)` are `[f_1, …, f_r]` with `f_i : [x_{i-1}] → [x_i]`;
/// elements of `𝒜(X)` are `[g_0, …, g_r]` with `g_i ∈ Aut([x_i])`.
pub type Chain = Vec<u32>;

fn mixed_radix(ranges: &[std::ops::Range<u32>]) -> Vec<Chain> {
    let mut out: Vec<Chain> = vec![Vec::new()];
    for r in ranges {
        out = out.into_iter().flat_map(|p| r.clone().map(move |f| [p.as_slice(), &[f]].concat())).collect();
    }
    out
}

impl SlominskaData {
    /// Requires characteristic zero and an augmentation.
    pub fn new(algebra: &InvolutiveAlgebra, max_object: usize) -> Result<SlominskaData> {
        if algebra.ring().characteristic() != 0 {
            return Err(Error::NonZeroCharacteristic(algebra.ring()));
        }
        let algebra = adapted(algebra)?;
        let epi_cat = TruncatedCategory::new(CategoryKind::Epi, max_object);
        let ideal = BarFunctor::new(algebra.clone(), BarVariant::Ideal)?.tabulate(&epi_cat)?;
        let t = epi_cat.table();
        let inverse = (0..t.num_morphisms() as u32)
            .map(|g| {
                let (a, b) = (t.src(g), t.tgt(g));
                if a != b {
                    return u32::MAX;
                }
                t.hom(b, a).find(|&h| t.compose(h, g) == t.identity(a)).unwrap_or(u32::MAX)
            })
            .collect();
        Ok(SlominskaData { epi_cat, algebra, ideal, inverse })
    }

    fn pos(&self, n: i32) -> u32 {
        self.epi_cat.position(n).expect("object inside the truncation")
    }

    /// `ℰ(X)` in enumeration order (`f_1` most significant).
    pub fn functor_e(&self, x: &S0Object) -> Vec<Chain> {
        let t = self.epi_cat.table();
        let ranges: Vec<_> = (1..=x.length()).map(|i| t.hom(self.pos(x.x(i - 1)), self.pos(x.x(i)))).collect();
        mixed_radix(&ranges)
    }

    /// `𝒜(X) = ∏ Aut([x_i])`.
    pub fn functor_a(&self, x: &S0Object) -> Vec<Chain> {
        let t = self.epi_cat.table();
        let ranges: Vec<_> = (0..=x.length()).map(|i| t.hom(self.pos(x.x(i)), self.pos(x.x(i)))).collect();
        mixed_radix(&ranges)
    }

    fn e_index(&self, x: &S0Object, e: &[u32]) -> usize {
        let t = self.epi_cat.table();
        let mut idx = 0usize;
        for (i, &f) in e.iter().enumerate() {
            let h = t.hom(self.pos(x.x(i)), self.pos(x.x(i + 1)));
            idx = idx * h.len() + (f - h.start) as usize;
        }
        idx
    }

    /// `μ(g, f) = (g_r f_r g_{r-1}⁻¹, …, g_1 f_1 g_0⁻¹)`.
    pub fn act(&self, g: &[u32], e: &[u32]) -> Chain {
        let t = self.epi_cat.table();
        e.iter().enumerate().map(|(i, &f)| t.compose(t.compose(g[i + 1], f), self.inverse[g[i] as usize])).collect()
    }

    pub fn multiply(&self, g: &[u32], h: &[u32]) -> Chain {
        let t = self.epi_cat.table();
        g.iter().zip(h).map(|(&a, &b)| t.compose(a, b)).collect()
    }

    /// Positions `j_0 < … < j_{r'}` in `X`'s chain of the points of `X'`.
    fn retained(x: &S0Object, target: &S0Object) -> Vec<usize> {
        (0..=x.length()).filter(|&i| target.points.contains(&(x.x(i) as u8))).collect()
    }

    /// `𝒜(X → X')`: projection onto the factors of `X'`.
    pub fn a_map(&self, x: &S0Object, target: &S0Object, g: &[u32]) -> Chain {
        Self::retained(x, target).into_iter().map(|j| g[j]).collect()
    }

    /// `ℰ(X → X')` together with `f_{j_0} ∘ … ∘ f_1 : [x_0] → [x'_0]`, the
    /// morphism along which the tensor factor is pushed.
    pub fn e_map(&self, x: &S0Object, target: &S0Object, e: &[u32]) -> (Chain, u32) {
        let t = self.epi_cat.table();
        let keep = Self::retained(x, target);
        let compose_range = |from: usize, to: usize| {
            (from..to).fold(t.identity(self.pos(x.x(from))), |acc, i| t.compose(e[i], acc))
        };
        let front = compose_range(0, keep[0]);
        let chain = keep.windows(2).map(|w| compose_range(w[0], w[1])).collect();
        (chain, front)
    }

    /// Basis size of `ℰ_I(X) = k[ℰ(X)] ⊗ H_I([x_0])`.
    fn tensor_dim(&self, x: &S0Object) -> usize {
        self.ideal.dim(self.pos(x.x(0)))
    }

    /// Matrix of `g` on `ℰ_I(X)`; basis `(e, y)` numbered `e · dim + y`.
    pub fn action_matrix(&self, x: &S0Object, g: &[u32]) -> SparseMatrix {
        let es = self.functor_e(x);
        let td = self.tensor_dim(x);
        let hg = self.ideal.matrix(g[0]);
        let mut cols = Vec::with_capacity(es.len() * td);
        for e in &es {
            let base = (self.e_index(x, &self.act(g, e)) * td) as u32;
            for y in 0..td {
                cols.push(hg.column(y).iter().map(|(z, c)| (base + z, c.clone())).collect());
            }
        }
        SparseMatrix::from_columns(es.len() * td, cols)
    }

    /// Matrix of `ℰ_I(X → X')`.
    pub fn e_i_map(&self, x: &S0Object, target: &S0Object) -> SparseMatrix {
        let es = self.functor_e(x);
        let (td, td2) = (self.tensor_dim(x), self.tensor_dim(target));
        let rows = self.functor_e(target).len() * td2;
        let mut cols = Vec::with_capacity(es.len() * td);
        for e in &es {
            let (e2, front) = self.e_map(x, target, e);
            let base = (self.e_index(target, &e2) * td2) as u32;
            let m = self.ideal.matrix(front);
            for y in 0..td {
                cols.push(m.column(y).iter().map(|(z, c)| (base + z, c.clone())).collect());
            }
        }
        SparseMatrix::from_columns(rows, cols)
    }

    /// `P = |𝒜(X)|⁻¹ Σ_g g` on `ℰ_I(X)`.
    pub fn averaging_projector(&self, x: &S0Object) -> SparseMatrix {
        let es = self.functor_e(x);
        let group = self.functor_a(x);
        let td = self.tensor_dim(x);
        let scale = Rat::new(1, group.len() as i64);
        let cols = (0..es.len())
            .into_par_iter()
            .flat_map_iter(|ei| {
                let e = &es[ei];
                let images: Vec<(u32, u32)> =
                    group.iter().map(|g| ((self.e_index(x, &self.act(g, e)) * td) as u32, g[0])).collect();
                let scale = scale.clone();
                (0..td).map(move |y| {
                    let mut acc: Vec<(u32, Rat)> = Vec::new();
                    for &(base, g0) in &images {
                        acc.extend(self.ideal.matrix(g0).column(y).iter().map(|(z, c)| (base + z, c.clone())));
                    }
                    normalize(normalize(acc).into_iter().map(|(i, c)| (i, &c * &scale)).collect())
                })
            })
            .collect();
        SparseMatrix::from_columns(es.len() * td, cols)
    }

    pub fn coinvariants(&self, x: &S0Object) -> CoinvariantModule {
        let projector = self.averaging_projector(x);
        let mut ech = Echelon::new(&Rationals, projector.nrows());
        let pivots: Vec<usize> =
            (0..projector.ncols()).filter(|&j| ech.insert(convert_column(&Rationals, projector.column(j)))).collect();
        let basis = projector.select(&(0..projector.nrows()).collect::<Vec<_>>(), &pivots);
        CoinvariantModule { object: x.clone(), projector, pivots, basis }
    }
}

/// `ℰ_I(X)_{𝒜(X)}`, realized as the image of the averaging projector with
/// basis the projections of the pivot basis vectors `e_{c_k}`.
#[derive(Clone, Debug)]
pub struct CoinvariantModule {
    pub object: S0Object,
    pub projector: SparseMatrix,
    pub pivots: Vec<usize>,
    pub basis: SparseMatrix,
}

impl CoinvariantModule {
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
}

/// The coinvariant functor on `S₀_{≤N}`: `[e] ↦ [ℰ_I(u) e]`.
pub fn coinvariant_functor(data: &SlominskaData, s0: &S0Category) -> (Vec<CoinvariantModule>, FunctorTable) {
    let modules: Vec<CoinvariantModule> = s0.objects().par_iter().map(|x| data.coinvariants(x)).collect();
    let solvers: Vec<TrackedEchelon> = modules.iter().map(|m| TrackedEchelon::new(&m.basis)).collect();
    let t = s0.table();
    let matrices = (0..t.num_morphisms() as u32)
        .into_par_iter()
        .map(|u| {
            let (a, b) = (t.src(u) as usize, t.tgt(u) as usize);
            let e = data.e_i_map(&modules[a].object, &modules[b].object);
            let cols: Vec<SparseVec> = modules[a]
                .pivots
                .iter()
                .map(|&c| {
                    let w = modules[b].projector.mul_vec(e.column(c));
                    solvers[b].solve(&w).expect("projected vector lies in the image")
                })
                .collect();
            SparseMatrix::from_columns(modules[b].dim(), cols)
        })
        .collect();
    let dims = modules.iter().map(CoinvariantModule::dim).collect();
    (modules, FunctorTable::from_parts(matrices, dims))
}

#[derive(Clone, Debug)]
pub struct SlominskaComplex {
    pub s0: S0Category,
    pub modules: Vec<CoinvariantModule>,
    pub gz: GzComplex,
}

/// `C_*(S₀_{≤N}, ℰ_I(−)_{𝒜(−)})`, whose homology is reduced hyperoctahedral
/// homology in characteristic zero.
pub fn slominska_complex(algebra: &InvolutiveAlgebra, max_object: usize, top: usize, cap: u64) -> Result<SlominskaComplex> {
    let data = SlominskaData::new(algebra, max_object)?;
    let s0 = build_s0(max_object);
    let (modules, functor) = coinvariant_functor(&data, &s0);
    let gz = build_gz_complex(s0.table(), &functor, Ring::Rationals, top, cap)?;
    Ok(SlominskaComplex { s0, modules, gz })
}
