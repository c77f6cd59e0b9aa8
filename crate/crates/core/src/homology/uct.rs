//! Universal coefficient checks for integral complexes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{homology_over_z, modular_ranks, snf::dense_snf};
use crate::chain::TruncatedComplex;
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::ring::{is_prime, Ring};
use crate::scalar::Rat;

/// A finitely generated abelian group `ℤ^free_rank ⊕ ⊕ ℤ/m_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientModule {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl CoefficientModule {
    pub fn integers() -> CoefficientModule {
        CoefficientModule { free_rank: 1, torsion: Vec::new() }
    }

    pub fn cyclic(m: u64) -> CoefficientModule {
        CoefficientModule { free_rank: 0, torsion: vec![m] }
    }

    /// Parses `z`, `z/m` and sums such as `z+z/2`.
    pub fn parse(s: &str) -> Result<CoefficientModule> {
        let mut out = CoefficientModule { free_rank: 0, torsion: Vec::new() };
        for part in s.split('+').map(str::trim) {
            let lower = part.to_ascii_lowercase();
            match lower.strip_prefix("z/") {
                Some(m) => {
                    let m: u64 = m.parse().map_err(|_| Error::Parse(format!("bad modulus in {part:?}")))?;
                    if m < 2 {
                        return Err(Error::Parse(format!("modulus must be at least 2 in {part:?}")));
                    }
                    out.torsion.push(m);
                }
                None if lower == "z" => out.free_rank += 1,
                None => return Err(Error::Parse(format!("unknown coefficient summand {part:?}"))),
            }
        }
        Ok(out)
    }

    /// Injective relation matrix whose cokernel is this group.
    pub fn presentation(&self) -> SparseMatrix {
        let t = self.torsion.len();
        let r = self.free_rank + t;
        let cols = self.torsion.iter().enumerate().map(|(k, &m)| vec![((self.free_rank + k) as u32, Rat::from_int(m as i64))]).collect();
        SparseMatrix::from_columns(r, cols)
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// The prime `p` when the module is `ℤ/p`.
    pub fn prime_field(&self) -> Option<u64> {
        match (self.free_rank, self.torsion.as_slice()) {
            (0, [p]) if is_prime(*p) => Some(*p),
            _ => None,
        }
    }
}

/// `C ⊗ M` with boundary `∂ ⊗ id_M`. Torsion summands need an integral
/// complex; a free module of rank `r` gives `r` copies of `C`.
pub fn tensor_with_coefficients(c: &TruncatedComplex, m: &CoefficientModule) -> Result<TruncatedComplex> {
    if !m.is_free() && c.ring() != Ring::Integers {
        return Err(Error::RingMismatch { expected: "integers for torsion coefficients".into(), got: c.ring() });
    }
    if *m == CoefficientModule::integers() {
        return Ok(c.clone());
    }
    Ok(c.tensor_with_presentation(&m.presentation()))
}

/// An abelian group `ℤ^rank ⊕ ⊕ ℤ/d_i` in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

/// Invariant factors (without units) of `⊕ ℤ/c_i`.
pub fn torsion_invariants(cyclic: Vec<BigInt>) -> Vec<BigInt> {
    let n = cyclic.len();
    let mut diag = vec![vec![BigInt::zero(); n]; n];
    for (i, d) in cyclic.into_iter().enumerate() {
        diag[i][i] = d;
    }
    dense_snf(diag).into_iter().filter(|d| !d.is_one()).collect()
}

impl AbelianGroup {
    fn normalized(rank: usize, cyclic: Vec<BigInt>) -> AbelianGroup {
        AbelianGroup { rank, torsion: torsion_invariants(cyclic) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UctDegree {
    pub degree: usize,
    /// `H_n(C ⊗ M)` computed from the tensored complex.
    pub middle: AbelianGroup,
    /// `H_n(C) ⊗ M ⊕ Tor₁(H_{n-1}(C), M)` predicted from the integral homology.
    pub predicted: AbelianGroup,
    /// For `M = ℤ/p`: `dim H_n(C ⊗ F_p)` from independent reduction mod `p`
    /// next to `dim H_n ⊗ F_p + dim Tor₁(H_{n-1}, F_p)`.
    pub residue_dimensions: Option<(usize, usize)>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UctReport {
    pub coefficients: CoefficientModule,
    pub degrees: Vec<UctDegree>,
}

impl UctReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.holds)
    }
}

fn gcd_u(d: &BigInt, m: u64) -> BigInt {
    d.gcd(&BigInt::from(m))
}

/// Compares `H_*(C ⊗ M)` with the universal coefficient prediction in every
/// degree where both are determined.
pub fn uct_check(c: &TruncatedComplex, m: &CoefficientModule) -> Result<UctReport> {
    if c.ring() != Ring::Integers {
        return Err(Error::RingMismatch { expected: "integers".into(), got: c.ring() });
    }
    let h = homology_over_z(c);
    let tensored = tensor_with_coefficients(c, m)?;
    let hm = homology_over_z(&tensored);
    let residue = m.prime_field().map(|p| {
        let ranks = modular_ranks(c, p);
        (0..c.top()).map(|n| c.dim(n) - ranks[n] - ranks[n + 1]).collect::<Vec<_>>()
    });
    let mut degrees = Vec::new();
    for n in 0..c.top() {
        let mut cyclic = Vec::new();
        // H_n ⊗ M
        for _ in 0..m.free_rank {
            cyclic.extend(h.torsion[n].iter().cloned());
        }
        for &q in &m.torsion {
            cyclic.extend(std::iter::repeat_n(BigInt::from(q), h.betti[n]));
            cyclic.extend(h.torsion[n].iter().map(|d| gcd_u(d, q)));
        }
        // Tor₁(H_{n-1}, M)
        if n >= 1 {
            for &q in &m.torsion {
                cyclic.extend(h.torsion[n - 1].iter().map(|d| gcd_u(d, q)));
            }
        }
        let predicted = AbelianGroup::normalized(h.betti[n] * m.free_rank, cyclic);
        let middle = AbelianGroup { rank: hm.betti[n], torsion: hm.torsion[n].clone() };
        let residue_dimensions = m.prime_field().zip(residue.as_ref()).map(|(p, dims)| {
            let pb = BigInt::from(p);
            let divisible = |t: &[BigInt]| t.iter().filter(|d| (*d % &pb).is_zero()).count();
            let mut expected = h.betti[n] + divisible(&h.torsion[n]);
            if n >= 1 {
                expected += divisible(&h.torsion[n - 1]);
            }
            (dims[n], expected)
        });
        let holds = middle == predicted && residue_dimensions.is_none_or(|(a, b)| a == b);
        degrees.push(UctDegree { degree: n, middle, predicted, residue_dimensions, holds });
    }
    Ok(UctReport { coefficients: m.clone(), degrees })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_two() -> TruncatedComplex {
        TruncatedComplex::new(
            Ring::Integers,
            vec![1, 1, 0],
            vec![SparseMatrix::from_dense_ints(&[&[2]]), SparseMatrix::zeros(1, 0)],
        )
        .unwrap()
    }

    #[test]
    fn integer_coefficients_are_trivial() {
        let r = uct_check(&diag_two(), &CoefficientModule::integers()).unwrap();
        assert!(r.holds());
        assert_eq!(r.degrees[0].middle.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn mod_two_on_diag_two() {
        let r = uct_check(&diag_two(), &CoefficientModule::cyclic(2)).unwrap();
        assert!(r.holds());
        // H_0 ⊗ ℤ/2 = ℤ/2, H_1 = Tor₁(ℤ/2, ℤ/2) = ℤ/2
        assert_eq!(r.degrees[1].residue_dimensions, Some((1, 1)));
        assert_eq!(r.degrees[0].residue_dimensions, Some((1, 1)));
    }

    #[test]
    fn mixed_module_on_toy() {
        // ℤ² --[[2,0],[0,0]]--> ℤ², H_0 = ℤ ⊕ ℤ/2, H_1 = ℤ
        let c = TruncatedComplex::new(
            Ring::Integers,
            vec![2, 2, 0],
            vec![SparseMatrix::from_dense_ints(&[&[2, 0], &[0, 0]]), SparseMatrix::zeros(2, 0)],
        )
        .unwrap();
        let m = CoefficientModule::parse("z+z/2").unwrap();
        let r = uct_check(&c, &m).unwrap();
        assert!(r.holds(), "{r:?}");
        // H_0 ⊗ (ℤ ⊕ ℤ/2) = ℤ ⊕ ℤ/2 ⊕ ℤ/2 ⊕ ℤ/2
        assert_eq!(r.degrees[0].middle.rank, 1);
        assert_eq!(r.degrees[0].middle.torsion.len(), 3);
        // H_1 = ℤ ⊕ ℤ/2 ⊕ Tor₁(ℤ/2, ℤ/2)
        assert_eq!(r.degrees[1].middle, AbelianGroup { rank: 1, torsion: vec![BigInt::from(2), BigInt::from(2)] });
    }

    #[test]
    fn ground_ring_coefficients_are_identity() {
        let c = diag_two();
        assert_eq!(tensor_with_coefficients(&c, &CoefficientModule::integers()).unwrap(), c);
        let q = c.clone().with_ring(Ring::Rationals);
        assert_eq!(tensor_with_coefficients(&q, &CoefficientModule::integers()).unwrap(), q);
        assert!(matches!(tensor_with_coefficients(&q, &CoefficientModule::cyclic(2)), Err(Error::RingMismatch { .. })));
        let two = tensor_with_coefficients(&q, &CoefficientModule::parse("z+z").unwrap()).unwrap();
        assert_eq!(two.dims(), &[2, 2, 0]);
    }

    #[test]
    fn mod_two_matches_independent_reduction() {
        let c = TruncatedComplex::new(
            Ring::Integers,
            vec![2, 3, 1],
            vec![SparseMatrix::from_dense_ints(&[&[2, 0, 1], &[0, 2, 1]]), SparseMatrix::from_dense_ints(&[&[1], &[1], &[-2]])],
        )
        .unwrap();
        assert!(c.d_squared_is_zero());
        let t = homology_over_z(&tensor_with_coefficients(&c, &CoefficientModule::cyclic(2)).unwrap());
        let ranks = modular_ranks(&c, 2);
        for n in 0..c.top() {
            let dim_f2 = c.dim(n) - ranks[n] - ranks[n + 1];
            // every summand of H(C ⊗ ℤ/2) is ℤ/2
            assert_eq!(t.betti[n], 0);
            assert!(t.torsion[n].iter().all(|d| *d == BigInt::from(2)));
            assert_eq!(t.torsion[n].len(), dim_f2);
        }
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(CoefficientModule::parse("q").is_err());
        assert!(CoefficientModule::parse("z/1").is_err());
        assert_eq!(CoefficientModule::parse("Z/3").unwrap(), CoefficientModule::cyclic(3));
    }
}
