//! Sparse Gaussian elimination over `ℚ` and `F_p`.

use crate::matrix::SparseMatrix;
use crate::scalar::{inv_mod, Rat};

/// Arithmetic needed by the elimination routines.
pub trait Field: Sync {
    type E: Clone + Send + Sync + std::fmt::Debug;
    fn convert(&self, x: &Rat) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    /// `-a / b`.
    fn neg_div(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a + c * b`.
    fn mul_add(&self, a: &Self::E, c: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn one(&self) -> Self::E;
    fn to_rat(&self, x: &Self::E) -> Rat;
}

#[derive(Clone, Copy, Debug)]
pub struct Rationals;

impl Field for Rationals {
    type E = Rat;
    fn convert(&self, x: &Rat) -> Rat {
        x.clone()
    }
    fn is_zero(&self, x: &Rat) -> bool {
        x.is_zero()
    }
    fn neg_div(&self, a: &Rat, b: &Rat) -> Rat {
        -(a * &b.recip())
    }
    fn mul_add(&self, a: &Rat, c: &Rat, b: &Rat) -> Rat {
        a + &(c * b)
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        a * b
    }
    fn one(&self) -> Rat {
        Rat::one()
    }
    fn to_rat(&self, x: &Rat) -> Rat {
        x.clone()
    }
}

/// `F_p` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug)]
pub struct ModP(pub u64);

impl Field for ModP {
    type E = u64;
    fn convert(&self, x: &Rat) -> u64 {
        x.mod_p(self.0).expect("denominator divisible by the characteristic")
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn neg_div(&self, a: &u64, b: &u64) -> u64 {
        let q = a * inv_mod(*b, self.0) % self.0;
        (self.0 - q) % self.0
    }
    fn mul_add(&self, a: &u64, c: &u64, b: &u64) -> u64 {
        (a + c * b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn one(&self) -> u64 {
        1
    }
    fn to_rat(&self, x: &u64) -> Rat {
        Rat::from_int(*x as i64)
    }
}

pub type FVec<E> = Vec<(u32, E)>;

/// `a + c * b` on sorted sparse vectors.
pub fn faxpy<F: Field>(field: &F, a: &[(u32, F::E)], c: &F::E, b: &[(u32, F::E)]) -> FVec<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(c, &b[j].1)));
            j += 1;
        } else {
            let v = field.mul_add(&a[i].1, c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Column echelon basis keyed by the lowest (largest-index) entry.
pub struct Echelon<'f, F: Field> {
    field: &'f F,
    pivot_of_row: Vec<u32>,
    vectors: Vec<FVec<F::E>>,
}

const NONE: u32 = u32::MAX;

impl<'f, F: Field> Echelon<'f, F> {
    pub fn new(field: &'f F, rows: usize) -> Self {
        Echelon { field, pivot_of_row: vec![NONE; rows], vectors: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Reduces `v` until its lowest entry has no pivot (or it vanishes).
    pub fn reduce(&self, mut v: FVec<F::E>) -> FVec<F::E> {
        while let Some((low, val)) = v.last() {
            let p = self.pivot_of_row[*low as usize];
            if p == NONE {
                break;
            }
            let piv = &self.vectors[p as usize];
            let c = self.field.neg_div(val, &piv.last().unwrap().1);
            v = faxpy(self.field, &v, &c, piv);
        }
        v
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: FVec<F::E>) -> bool {
        let r = self.reduce(v);
        match r.last() {
            None => false,
            Some((low, _)) => {
                self.pivot_of_row[*low as usize] = self.vectors.len() as u32;
                self.vectors.push(r);
                true
            }
        }
    }

    /// Eliminates every entry of `v` that sits on a pivot row.
    pub fn reduce_fully(&self, mut v: FVec<F::E>) -> FVec<F::E> {
        let mut i = v.len();
        while i > 0 {
            i -= 1;
            let (row, val) = &v[i];
            let p = self.pivot_of_row[*row as usize];
            if p == NONE {
                continue;
            }
            let row = *row;
            let piv = &self.vectors[p as usize];
            let c = self.field.neg_div(val, &piv.last().unwrap().1);
            v = faxpy(self.field, &v, &c, piv);
            i = v.partition_point(|e| e.0 < row);
        }
        v
    }

    pub fn is_pivot_row(&self, row: usize) -> bool {
        self.pivot_of_row[row] != NONE
    }

    /// Leading (lowest) entries of the stored vectors.
    pub fn leads(&self) -> impl Iterator<Item = &F::E> {
        self.vectors.iter().map(|v| &v.last().unwrap().1)
    }

    pub fn contains(&self, v: FVec<F::E>) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn convert_column<F: Field>(field: &F, col: &[(u32, Rat)]) -> FVec<F::E> {
    col.iter().map(|(i, v)| (*i, field.convert(v))).filter(|(_, v)| !field.is_zero(v)).collect()
}

/// Rank of `m`, stopping early once `bound` is reached.
pub fn rank_with_bound<F: Field>(field: &F, m: &SparseMatrix, bound: usize) -> usize {
    let bound = bound.min(m.nrows()).min(m.ncols());
    if bound == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..m.ncols()).collect();
    order.sort_by_key(|&j| m.column(j).len());
    let mut ech = Echelon::new(field, m.nrows());
    for j in order {
        ech.insert(convert_column(field, m.column(j)));
        if ech.rank() == bound {
            break;
        }
    }
    ech.rank()
}

pub fn rank<F: Field>(field: &F, m: &SparseMatrix) -> usize {
    rank_with_bound(field, m, usize::MAX)
}
