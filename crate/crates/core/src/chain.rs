//! Truncated chain complexes and chain maps with exact sparse matrices.

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::ring::Ring;
use crate::scalar::Rat;

/// Chain groups `C_0 … C_top` (free on `dims[n]` generators) with boundaries
/// `∂_n : C_n → C_{n-1}`. Homology is meaningful in degrees `0..top`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedComplex {
    ring: Ring,
    dims: Vec<usize>,
    boundaries: Vec<SparseMatrix>,
}

impl TruncatedComplex {
    /// `boundaries[k]` is `∂_{k+1}`.
    pub fn new(ring: Ring, dims: Vec<usize>, boundaries: Vec<SparseMatrix>) -> Result<TruncatedComplex> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch { expected: dims.len().saturating_sub(1), got: boundaries.len() });
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.ncols() != dims[k + 1] {
                return Err(Error::DimensionMismatch { expected: dims[k + 1], got: b.ncols() });
            }
            if b.nrows() != dims[k] {
                return Err(Error::DimensionMismatch { expected: dims[k], got: b.nrows() });
            }
        }
        Ok(TruncatedComplex { ring, dims, boundaries })
    }

    pub fn zero(ring: Ring, top: usize) -> TruncatedComplex {
        let dims = vec![0; top + 1];
        let boundaries = (0..top).map(|_| SparseMatrix::zeros(0, 0)).collect();
        TruncatedComplex { ring, dims, boundaries }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn with_ring(mut self, ring: Ring) -> TruncatedComplex {
        self.ring = ring;
        self
    }

    /// Highest degree with generators built.
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Highest degree whose homology is determined.
    pub fn max_degree(&self) -> usize {
        self.top().saturating_sub(1)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// `∂_n`; `n = 0` gives the zero map to the zero module.
    pub fn boundary(&self, n: usize) -> Result<SparseMatrix> {
        match n {
            0 => Ok(SparseMatrix::zeros(0, self.dims[0])),
            n if n <= self.top() => Ok(self.boundaries[n - 1].clone()),
            n => Err(Error::MissingDegree(n)),
        }
    }

    pub fn boundary_ref(&self, n: usize) -> Option<&SparseMatrix> {
        if n == 0 || n > self.top() {
            None
        } else {
            Some(&self.boundaries[n - 1])
        }
    }

    pub fn boundaries(&self) -> &[SparseMatrix] {
        &self.boundaries
    }

    /// Degrees `n` with `∂_{n-1} ∂_n ≠ 0`.
    pub fn d_squared_failures(&self) -> Vec<usize> {
        (2..=self.top())
            .filter(|&n| {
                let sq = self.boundaries[n - 2].mul(&self.boundaries[n - 1]);
                !equal_in(self.ring, &sq, &SparseMatrix::zeros(sq.nrows(), sq.ncols()))
            })
            .collect()
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.d_squared_failures().is_empty()
    }

    /// Total complex of `C ⊗ (ℤ^s --R--> ℤ^r)` where `R = relations` (`r × s`).
    /// For injective `R` and free `C` this computes `C ⊗ coker R`. Degree `n`
    /// is `C_n ⊗ ℤ^r` followed by `C_{n-1} ⊗ ℤ^s`.
    pub fn tensor_with_presentation(&self, relations: &SparseMatrix) -> TruncatedComplex {
        let (r, s) = (relations.nrows(), relations.ncols());
        let size = |n: usize| self.dim(n) * r + if n == 0 { 0 } else { self.dim(n - 1) * s };
        let dims: Vec<usize> = (0..=self.top()).map(size).collect();
        let mut boundaries = Vec::with_capacity(self.top());
        for n in 1..=self.top() {
            let mut cols = self.boundaries[n - 1].kron(&SparseMatrix::identity(r)).into_columns();
            let sign = if (n - 1) % 2 == 0 { Rat::one() } else { Rat::from_int(-1) };
            let upper = SparseMatrix::identity(self.dim(n - 1)).kron(relations).scale(&sign);
            let lower = if n >= 2 {
                self.boundaries[n - 2].kron(&SparseMatrix::identity(s))
            } else {
                SparseMatrix::zeros(0, self.dim(0) * s)
            };
            let off = (self.dim(n - 1) * r) as u32;
            for (u, l) in upper.columns().iter().zip(lower.columns()) {
                let mut col = u.clone();
                col.extend(l.iter().map(|(i, v)| (i + off, v.clone())));
                cols.push(col);
            }
            boundaries.push(SparseMatrix::from_columns(dims[n - 1], cols));
        }
        TruncatedComplex { ring: self.ring, dims, boundaries }
    }

    /// Reduction of an integral complex modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> TruncatedComplex {
        let boundaries = self
            .boundaries
            .iter()
            .map(|b| b.map_entries(|x| Rat::from_int(x.mod_p(p).expect("entry not integral at p") as i64)))
            .collect();
        TruncatedComplex { ring: Ring::PrimeField(p), dims: self.dims.clone(), boundaries }
    }

    /// Restriction to degrees `0..=top`.
    pub fn truncate(&self, top: usize) -> TruncatedComplex {
        let top = top.min(self.top());
        TruncatedComplex {
            ring: self.ring,
            dims: self.dims[..=top].to_vec(),
            boundaries: self.boundaries[..top].to_vec(),
        }
    }
}

/// Whether `a = b` once entries are read in `ring`.
pub fn equal_in(ring: Ring, a: &SparseMatrix, b: &SparseMatrix) -> bool {
    if a.nrows() != b.nrows() || a.ncols() != b.ncols() {
        return false;
    }
    match ring {
        Ring::PrimeField(p) => a.sub(b).columns().iter().flatten().all(|(_, v)| v.mod_p(p) == Some(0)),
        _ => a == b,
    }
}

/// Degreewise matrices `f_n : C_n → C'_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub matrices: Vec<SparseMatrix>,
}

impl ChainMap {
    pub fn degree(&self, n: usize) -> &SparseMatrix {
        &self.matrices[n]
    }

    /// Degrees where `∂' f_n ≠ f_{n-1} ∂`.
    pub fn commutation_failures(&self, source: &TruncatedComplex, target: &TruncatedComplex) -> Vec<usize> {
        (1..self.matrices.len())
            .filter(|&n| match (source.boundary_ref(n), target.boundary_ref(n)) {
                (Some(d), Some(d2)) => !equal_in(target.ring(), &d2.mul(&self.matrices[n]), &self.matrices[n - 1].mul(d)),
                _ => false,
            })
            .collect()
    }

    pub fn is_chain_map(&self, source: &TruncatedComplex, target: &TruncatedComplex) -> bool {
        self.commutation_failures(source, target).is_empty()
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &ChainMap) -> ChainMap {
        let matrices = self.matrices.iter().zip(&rhs.matrices).map(|(a, b)| a.mul(b)).collect();
        ChainMap { matrices }
    }
}
