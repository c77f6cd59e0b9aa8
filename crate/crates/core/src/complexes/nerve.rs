//! The under-category variant `k[N_*(−↓C)] ⊗_C F`, computed as a quotient by
//! the relations `(s, f∘α) ⊗ y − (s, f) ⊗ F(α)(y)`.

use rayon::prelude::*;

use super::gz::{build_gz_complex, GzComplex};
use crate::barfun::FunctorTable;
use crate::chain::ChainMap;
use crate::croscat::CategoryTable;
use crate::error::{Error, Result};
use crate::homology::field::{convert_column, rank, Echelon, FVec, Field, ModP, Rationals};
use crate::matrix::{SparseMatrix, SparseVec};
use crate::ring::Ring;
use crate::scalar::Rat;

/// `k[Hom(−, C_0)] ⊗_C F` for one object `C_0`: pre-quotient generators
/// `(f, x)` with `f : C → C_0`, `x` a basis vector of `F(C)`, and a basis of
/// the quotient given by chosen representatives.
#[derive(Clone, Debug)]
pub struct ObjectQuotient {
    pub object: u32,
    /// Pre-quotient generators; those with `f = id` come first.
    pub generators: Vec<(u32, u32)>,
    /// Indices into `generators` of the quotient basis representatives.
    pub basis: Vec<u32>,
    /// Position in `generators` of `(f, 0)` for each morphism `f` into the object.
    offset: Vec<u32>,
    /// Number of relation vectors assembled.
    pub relations: usize,
    /// Quotient coordinates of every pre-quotient generator.
    pub projection: Vec<SparseVec>,
}

impl ObjectQuotient {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn representative(&self, q: u32) -> (u32, u32) {
        self.generators[self.basis[q as usize] as usize]
    }

    /// Quotient coordinates of the class `[f ⊗ x]`.
    pub fn class_of(&self, f: u32, x: u32) -> &SparseVec {
        let j = self.offset[f as usize];
        assert!(j != u32::MAX, "not a generator of this object");
        &self.projection[(j + x) as usize]
    }
}

/// The nerve variant together with the per-object quotients it is built on.
#[derive(Clone, Debug)]
pub struct NerveComplex {
    pub quotients: Vec<ObjectQuotient>,
    /// The complex, indexed like a Gabriel–Zisman complex whose coefficients
    /// are the quotients.
    pub gz: GzComplex,
}

fn pre_generators(table: &CategoryTable, functor: &FunctorTable, c0: u32) -> (Vec<(u32, u32)>, Vec<u32>) {
    let id = table.identity(c0);
    let mut order = vec![id];
    for a in 0..table.num_objects() as u32 {
        order.extend(table.hom(a, c0).filter(|&f| f != id));
    }
    let mut offset = vec![u32::MAX; table.num_morphisms()];
    let mut gens = Vec::new();
    for f in order {
        offset[f as usize] = gens.len() as u32;
        gens.extend((0..functor.dim(table.src(f)) as u32).map(|x| (f, x)));
    }
    (gens, offset)
}

fn quotient_over<F: Field>(field: &F, table: &CategoryTable, functor: &FunctorTable, c0: u32) -> (ObjectQuotient, bool) {
    let (generators, offset) = pre_generators(table, functor, c0);
    let mut ech = Echelon::new(field, generators.len());
    let mut relations = 0;
    for alpha in 0..table.num_morphisms() as u32 {
        if table.is_identity(alpha) {
            continue;
        }
        let fa = functor.matrix(alpha);
        for f in table.hom(table.tgt(alpha), c0) {
            let lifted = offset[table.compose(f, alpha) as usize];
            for y in 0..fa.ncols() {
                let mut v: Vec<(u32, Rat)> = vec![(lifted + y as u32, Rat::one())];
                v.extend(fa.column(y).iter().map(|(x, c)| (offset[f as usize] + x, -c)));
                ech.insert(convert_column(field, &crate::matrix::normalize(v)));
                relations += 1;
            }
        }
    }
    let basis: Vec<u32> = (0..generators.len() as u32).filter(|&j| !ech.is_pivot_row(j as usize)).collect();
    let mut coord = vec![u32::MAX; generators.len()];
    for (q, &j) in basis.iter().enumerate() {
        coord[j as usize] = q as u32;
    }
    let unimodular = ech.leads().all(|l| {
        let r = field.to_rat(l);
        r.is_one() || r == Rat::from_int(-1)
    });
    let projection = (0..generators.len() as u32)
        .into_par_iter()
        .map(|j| {
            let e: FVec<F::E> = vec![(j, field.one())];
            ech.reduce_fully(e).iter().map(|(i, v)| (coord[*i as usize], field.to_rat(v))).collect()
        })
        .collect();
    (ObjectQuotient { object: c0, generators, basis, offset, relations, projection }, unimodular)
}

/// Quotient at every object. Over `ℤ` the relations are eliminated over `ℚ`
/// and accepted only when every pivot is `±1`, so that the quotient is free
/// on the chosen representatives.
pub fn object_quotients(table: &CategoryTable, functor: &FunctorTable, ring: Ring) -> Result<Vec<ObjectQuotient>> {
    (0..table.num_objects() as u32)
        .map(|c0| {
            let (q, unimodular) = match ring {
                Ring::PrimeField(p) => quotient_over(&ModP(p), table, functor, c0),
                _ => quotient_over(&Rationals, table, functor, c0),
            };
            if ring == Ring::Integers && !unimodular {
                return Err(Error::RingMismatch { expected: "a field (quotient not unimodular over the integers)".into(), got: ring });
            }
            Ok(q)
        })
        .collect()
}

/// The functor `C_0 ↦ k[Hom(−, C_0)] ⊗_C F` on the quotient bases.
pub fn quotient_functor(table: &CategoryTable, quotients: &[ObjectQuotient]) -> FunctorTable {
    let matrices = (0..table.num_morphisms() as u32)
        .into_par_iter()
        .map(|g| {
            let (a, b) = (table.src(g) as usize, table.tgt(g) as usize);
            let qa = &quotients[a];
            let qb = &quotients[b];
            let cols = (0..qa.dim() as u32)
                .map(|q| {
                    let (f, x) = qa.representative(q);
                    qb.class_of(table.compose(g, f), x).clone()
                })
                .collect();
            SparseMatrix::from_columns(qb.dim(), cols)
        })
        .collect();
    FunctorTable::from_parts(matrices, quotients.iter().map(ObjectQuotient::dim).collect())
}

/// Assembles `k[N_*(−↓C)] ⊗_C F` through degree `top`. Faces act on the
/// under-category nerve: `∂_0` composes `f_1 ∘ f_0`, `∂_n` drops `f_n`.
pub fn build_nerve_variant(
    table: &CategoryTable,
    functor: &FunctorTable,
    ring: Ring,
    top: usize,
    cap: u64,
) -> Result<NerveComplex> {
    let quotients = object_quotients(table, functor, ring)?;
    let q = quotient_functor(table, &quotients);
    let gz = build_gz_complex(table, &q, ring, top, cap)?;
    Ok(NerveComplex { quotients, gz })
}

/// `[(f_n, …, f_0) ⊗ x] ↦ (f_n, …, f_1, F(f_0)(x))` in every built degree.
pub fn gz_nerve_iso(table: &CategoryTable, functor: &FunctorTable, nerve: &NerveComplex, gz: &GzComplex) -> ChainMap {
    let blocks: Vec<SparseMatrix> = nerve
        .quotients
        .iter()
        .map(|q| {
            let cols = (0..q.dim() as u32)
                .map(|k| {
                    let (f, x) = q.representative(k);
                    functor.matrix(f).column(x as usize).to_vec()
                })
                .collect();
            SparseMatrix::from_columns(functor.dim(q.object), cols)
        })
        .collect();
    let top = nerve.gz.strings.top();
    let matrices = (0..=top)
        .map(|n| {
            let src = &nerve.gz.strings;
            let mut cols = Vec::with_capacity(src.generators(n));
            for s in 0..src.count(n) as u32 {
                let root = src.root(n, s);
                let m = src.morphisms(n, s);
                let start = gz.strings.gen_start(n, gz.strings.rank(table, root, &m));
                for c in blocks[root as usize].columns() {
                    cols.push(c.iter().map(|(i, v)| (start + i, v.clone())).collect());
                }
            }
            SparseMatrix::from_columns(gz.strings.generators(n), cols)
        })
        .collect();
    ChainMap { matrices }
}

/// Whether every object block of the comparison map is invertible, i.e. the
/// map is a degreewise bijection.
pub fn iso_blocks_invertible(functor: &FunctorTable, nerve: &NerveComplex, ring: Ring) -> bool {
    nerve.quotients.iter().all(|q| {
        let d = functor.dim(q.object);
        if q.dim() != d {
            return false;
        }
        let cols = (0..q.dim() as u32)
            .map(|k| {
                let (f, x) = q.representative(k);
                functor.matrix(f).column(x as usize).to_vec()
            })
            .collect();
        let m = SparseMatrix::from_columns(d, cols);
        let r = match ring {
            Ring::PrimeField(p) => rank(&ModP(p), &m),
            _ => rank(&Rationals, &m),
        };
        r == d
    })
}
