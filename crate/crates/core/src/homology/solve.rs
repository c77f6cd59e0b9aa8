//! Solving `∂_{n+1} w = z` exactly over `ℚ`.

use crate::chain::TruncatedComplex;
use crate::error::{Error, Result};
use crate::matrix::{axpy, SparseMatrix, SparseVec};
use crate::scalar::Rat;

/// Column echelon form of a matrix that remembers how each pivot vector was
/// built from the original columns.
pub struct TrackedEchelon {
    pivot_of_row: Vec<u32>,
    vectors: Vec<(SparseVec, SparseVec)>,
}

impl TrackedEchelon {
    pub fn new(m: &SparseMatrix) -> TrackedEchelon {
        let mut ech = TrackedEchelon { pivot_of_row: vec![u32::MAX; m.nrows()], vectors: Vec::new() };
        for j in 0..m.ncols() {
            let (v, comb) = ech.reduce(m.column(j).to_vec(), vec![(j as u32, Rat::one())]);
            if let Some((low, _)) = v.last() {
                ech.pivot_of_row[*low as usize] = ech.vectors.len() as u32;
                ech.vectors.push((v, comb));
            }
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    fn reduce(&self, mut v: SparseVec, mut comb: SparseVec) -> (SparseVec, SparseVec) {
        while let Some((low, val)) = v.last() {
            let p = self.pivot_of_row[*low as usize];
            if p == u32::MAX {
                break;
            }
            let (pv, pc) = &self.vectors[p as usize];
            let c = -(val * &pv.last().unwrap().1.recip());
            v = axpy(&v, &c, pv);
            comb = axpy(&comb, &c, pc);
        }
        (v, comb)
    }

    /// `w` with `m w = z`, if one exists.
    pub fn solve(&self, z: &[(u32, Rat)]) -> Option<SparseVec> {
        let (rest, comb) = self.reduce(z.to_vec(), Vec::new());
        if !rest.is_empty() {
            return None;
        }
        // z + Σ c_j col_j = 0
        Some(comb.into_iter().map(|(j, c)| (j, -c)).collect())
    }
}

/// A preimage of the cycle `z ∈ C_n` under `∂_{n+1}`, or `None` when `z`
/// represents a non-zero homology class.
pub fn solve_is_boundary(c: &TruncatedComplex, n: usize, z: &[(u32, Rat)]) -> Result<Option<SparseVec>> {
    if n >= 1 {
        let d = c.boundary_ref(n).ok_or(Error::MissingDegree(n))?;
        if !d.mul_vec(z).is_empty() {
            return Err(Error::NotACycle(n));
        }
    }
    let b = c.boundary_ref(n + 1).ok_or(Error::MissingDegree(n + 1))?;
    Ok(TrackedEchelon::new(b).solve(z))
}
