//! Exact homology of truncated complexes.

pub mod field;
pub mod snf;
pub mod solve;
pub mod uct;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::chain::TruncatedComplex;
use crate::error::Result;
use crate::matrix::SparseMatrix;
use crate::ring::Ring;
use field::{convert_column, rank_with_bound, Echelon, Field, ModP, Rationals};

pub use solve::solve_is_boundary;
pub use uct::{tensor_with_coefficients, torsion_invariants, uct_check, AbelianGroup, CoefficientModule, UctDegree, UctReport};

/// Prime used for the modular first pass over `ℚ`.
pub const CERTIFICATE_PRIME: u64 = 2_147_483_647;

/// Betti numbers per degree `0..=max_degree`; over `ℤ` also the torsion
/// invariant factors (each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub ring: Ring,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
    /// `ranks[n]` is the rank of `∂_n` for `n = 0..=top`.
    pub ranks: Vec<usize>,
}

impl HomologyResult {
    pub fn max_degree(&self) -> usize {
        self.betti.len().saturating_sub(1)
    }
}

/// Homology over the complex's own ring.
pub fn homology(c: &TruncatedComplex) -> Result<HomologyResult> {
    match c.ring() {
        Ring::Integers => Ok(homology_over_z(c)),
        ring => Ok(homology_over_field(c, ring)),
    }
}

fn betti_from_ranks(c: &TruncatedComplex, ranks: &[usize]) -> Vec<usize> {
    (0..c.top()).map(|n| c.dim(n) - ranks[n] - ranks[n + 1]).collect()
}

/// Betti numbers over `ℚ` or `F_p`; the matrices are read in that field.
pub fn homology_over_field(c: &TruncatedComplex, ring: Ring) -> HomologyResult {
    let top = c.top();
    let ranks = match ring {
        Ring::PrimeField(p) => modular_ranks(c, p),
        _ => rational_ranks(c),
    };
    let betti = betti_from_ranks(c, &ranks);
    HomologyResult { ring, torsion: vec![Vec::new(); top], betti, ranks }
}

fn integral_mod(m: &SparseMatrix, p: u64) -> bool {
    m.columns().iter().flatten().all(|(_, v)| v.mod_p(p).is_some())
}

/// Rows of `∂_n` longer than this on average make elimination of `∂_nᵀ` fill
/// in badly; such degrees are eliminated column by column instead.
pub const CLEARING_ROW_LENGTH: usize = 512;

/// Ranks of `∂_1 … ∂_top`. Degrees with short rows are eliminated through
/// the transposes `∂_nᵀ` in increasing degree: a pivot row `i` of the reduced
/// `∂_nᵀ` makes column `i` of `∂_{n+1}ᵀ` a combination of lower columns, so
/// that column is skipped. From the first degree with long rows on, columns
/// of `∂_n` are eliminated directly, stopping at the rank–nullity bound.
pub fn cleared_ranks<F: Field>(field: &F, c: &TruncatedComplex) -> Vec<usize> {
    let mut ranks = vec![0; c.top() + 1];
    let mut cleared = Some(vec![false; c.dim(0)]);
    for n in 1..=c.top() {
        let d = c.boundary_ref(n).unwrap();
        let short_rows = d.nnz() <= CLEARING_ROW_LENGTH * d.nrows().max(1);
        match cleared.take().filter(|_| short_rows) {
            Some(skip) => {
                let t = d.transpose();
                let mut ech = Echelon::new(field, t.nrows());
                for j in (0..t.ncols()).filter(|&j| !skip[j]) {
                    ech.insert(convert_column(field, t.column(j)));
                }
                ranks[n] = ech.rank();
                cleared = Some((0..t.nrows()).map(|r| ech.is_pivot_row(r)).collect());
            }
            None => ranks[n] = rank_with_bound(field, d, c.dim(n - 1) - ranks[n - 1]),
        }
    }
    ranks
}

/// Exact ranks over `F_p`.
pub fn modular_ranks(c: &TruncatedComplex, p: u64) -> Vec<usize> {
    cleared_ranks(&ModP(p), c)
}

/// Exact ranks over `ℚ`. A modular pass gives lower bounds `r_p ≤ r_ℚ`;
/// wherever an adjacent modular Betti number vanishes, `∂_n ∂_{n+1} = 0`
/// forces equality. Remaining ranks are computed by rational elimination.
pub fn rational_ranks(c: &TruncatedComplex) -> Vec<usize> {
    let top = c.top();
    let p = CERTIFICATE_PRIME;
    if (1..=top).any(|n| !integral_mod(c.boundary_ref(n).unwrap(), p)) {
        return exact_rational_ranks(c);
    }
    let rp = modular_ranks(c, p);
    let betti_p = betti_from_ranks(c, &rp);
    let mut ranks = vec![0; top + 1];
    for n in 1..=top {
        let certified = betti_p[n - 1] == 0 || (n < top && betti_p[n] == 0);
        let bound = c.dim(n - 1) - ranks[n - 1];
        ranks[n] = if certified || rp[n] == bound {
            rp[n]
        } else {
            rank_with_bound(&Rationals, c.boundary_ref(n).unwrap(), bound)
        };
    }
    ranks
}

/// Ranks over `ℚ` by rational elimination only.
pub fn exact_rational_ranks(c: &TruncatedComplex) -> Vec<usize> {
    cleared_ranks(&Rationals, c)
}

/// Ranks and torsion over `ℤ` from the Smith normal forms of the boundaries.
pub fn homology_over_z(c: &TruncatedComplex) -> HomologyResult {
    let top = c.top();
    let mut ranks = vec![0; top + 1];
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 1];
    for n in 1..=top {
        let f = snf::invariant_factors(c.boundary_ref(n).unwrap());
        ranks[n] = f.len();
        factors[n] = f.into_iter().filter(|d| !d.is_one()).collect();
    }
    let betti = betti_from_ranks(c, &ranks);
    let torsion = (0..top).map(|n| factors[n + 1].clone()).collect();
    HomologyResult { ring: Ring::Integers, betti, torsion, ranks }
}
