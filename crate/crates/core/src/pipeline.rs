//! End-to-end computations: build one of the six complexes at a truncation,
//! take its homology and run the exact identities that certify it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::barfun::{BarFunctor, BarVariant, FunctorTable};
use crate::chain::TruncatedComplex;
use crate::complexes::nerve::iso_blocks_invertible;
use crate::complexes::{
    adapted, build_gz_complex, build_nerve_variant, build_reduced_split, contracting_homotopy_unit, gz_nerve_iso,
    EpiComparison, EpiComplex, GzComplex,
};
use crate::croscat::{CategoryKind, TruncatedCategory};
use crate::error::{Error, Result};
use crate::homology::{homology, torsion_invariants, tensor_with_coefficients, uct_check, CoefficientModule, HomologyResult, UctReport};
use crate::invalg::InvolutiveAlgebra;
use crate::ring::Ring;
use crate::slominska::{build_s0, coinvariant_functor, SlominskaData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    /// `C_*(ΔH, H_A)`.
    Full,
    /// `k[N_*(−↓ΔH)] ⊗_{ΔH} H_A`.
    Nerve,
    /// `C_I ⊕ C_k` in an adapted basis.
    Reduced,
    /// `C_*(EpiΔH, H_I)`; reduced homology.
    Epi,
    /// Coinvariants over `S₀`; reduced homology, characteristic zero only.
    Slominska,
    /// `C_*(ΔH₊, H_{A+})`.
    Extended,
}

impl Pipeline {
    pub const ALL: [Pipeline; 6] =
        [Pipeline::Full, Pipeline::Nerve, Pipeline::Reduced, Pipeline::Epi, Pipeline::Slominska, Pipeline::Extended];

    pub fn tag(self) -> &'static str {
        match self {
            Pipeline::Full => "full",
            Pipeline::Nerve => "nerve",
            Pipeline::Reduced => "reduced",
            Pipeline::Epi => "epi",
            Pipeline::Slominska => "slominska",
            Pipeline::Extended => "extended",
        }
    }

    /// Whether the pipeline computes reduced homology (without the `k` in
    /// degree zero).
    pub fn is_reduced(self) -> bool {
        matches!(self, Pipeline::Epi | Pipeline::Slominska)
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Pipeline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Pipeline> {
        Pipeline::ALL
            .into_iter()
            .find(|p| p.tag() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown pipeline {s:?}")))
    }
}

/// Objects `[0..max_object]`, homology in degrees `0..=max_degree`; matrices
/// are built through degree `max_degree + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub max_object: usize,
    pub max_degree: usize,
}

impl TruncationPolicy {
    pub fn top(&self) -> usize {
        self.max_degree + 1
    }
}

/// Supplies categories and tabulated functors, possibly from a cache.
pub trait Resources: Sync {
    fn category(&self, kind: CategoryKind, max_object: usize) -> Result<TruncatedCategory>;
    fn functor(&self, algebra: &InvolutiveAlgebra, variant: BarVariant, cat: &TruncatedCategory) -> Result<FunctorTable>;
}

/// Builds everything on demand.
pub struct Direct;

impl Resources for Direct {
    fn category(&self, kind: CategoryKind, max_object: usize) -> Result<TruncatedCategory> {
        Ok(TruncatedCategory::new(kind, max_object))
    }

    fn functor(&self, algebra: &InvolutiveAlgebra, variant: BarVariant, cat: &TruncatedCategory) -> Result<FunctorTable> {
        BarFunctor::new(algebra.clone(), variant)?.tabulate(cat)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Verdict {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub cap: u64,
    pub verify: bool,
    pub coefficients: Option<CoefficientModule>,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions { cap: 50_000_000, verify: false, coefficients: None }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub assembly: f64,
    pub homology: f64,
    pub verification: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineOutcome {
    pub pipeline: Pipeline,
    pub policy: TruncationPolicy,
    pub reduced: bool,
    pub homology: HomologyResult,
    /// Generators per degree `0..=max_degree + 1`.
    pub sizes: Vec<usize>,
    /// Homology of named auxiliary complexes (summands, comparison targets).
    pub auxiliary: BTreeMap<String, HomologyResult>,
    pub verifications: BTreeMap<String, Verdict>,
    pub coefficient_homology: Option<HomologyResult>,
    pub uct: Option<UctReport>,
    #[serde(skip)]
    pub timings: Timings,
}

impl PipelineOutcome {
    pub fn verified(&self) -> bool {
        self.verifications.values().all(|v| *v != Verdict::Fail)
    }
}

fn seconds(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

struct Built {
    complex: TruncatedComplex,
    /// Homology computed during assembly, with its wall time.
    homology: Option<(HomologyResult, f64)>,
    auxiliary: BTreeMap<String, HomologyResult>,
    verifications: BTreeMap<String, Verdict>,
    verification_time: f64,
}

impl Built {
    fn plain(complex: TruncatedComplex) -> Built {
        Built { complex, homology: None, auxiliary: BTreeMap::new(), verifications: BTreeMap::new(), verification_time: 0.0 }
    }
}

pub fn run_pipeline(
    algebra: &InvolutiveAlgebra,
    pipeline: Pipeline,
    policy: TruncationPolicy,
    options: &RunOptions,
    resources: &dyn Resources,
) -> Result<PipelineOutcome> {
    if let Some(m) = &options.coefficients {
        if !m.is_free() && algebra.ring() != Ring::Integers {
            return Err(Error::RingMismatch { expected: "integers for torsion coefficients".into(), got: algebra.ring() });
        }
    }
    let start = Instant::now();
    let mut built = build(algebra, pipeline, policy, options, resources)?;
    let early = built.homology.take();
    let assembly = seconds(start) - built.verification_time - early.as_ref().map_or(0.0, |e| e.1);
    let t = Instant::now();
    if options.verify {
        built.verifications.insert("boundary_squares_to_zero".into(), built.complex.d_squared_is_zero().into());
    }
    let verification_extra = seconds(t);
    let (h, homology_time) = match early {
        Some(e) => e,
        None => {
            let t = Instant::now();
            (homology(&built.complex)?, seconds(t))
        }
    };
    let mut coefficient_homology = None;
    let mut uct = None;
    if let Some(m) = &options.coefficients {
        if *m != CoefficientModule::integers() {
            coefficient_homology = Some(homology(&tensor_with_coefficients(&built.complex, m)?)?);
            if built.complex.ring() == Ring::Integers {
                let report = uct_check(&built.complex, m)?;
                built.verifications.insert("universal_coefficients".into(), report.holds().into());
                uct = Some(report);
            }
        }
    }
    Ok(PipelineOutcome {
        pipeline,
        policy,
        reduced: pipeline.is_reduced(),
        homology: h,
        sizes: built.complex.dims().to_vec(),
        auxiliary: built.auxiliary,
        verifications: built.verifications,
        coefficient_homology,
        uct,
        timings: Timings {
            assembly,
            homology: homology_time,
            verification: built.verification_time + verification_extra,
        },
    })
}

fn build(
    algebra: &InvolutiveAlgebra,
    pipeline: Pipeline,
    policy: TruncationPolicy,
    options: &RunOptions,
    res: &dyn Resources,
) -> Result<Built> {
    let ring = algebra.ring();
    let (n, top, cap) = (policy.max_object, policy.top(), options.cap);
    match pipeline {
        Pipeline::Full => {
            let cat = res.category(CategoryKind::Full, n)?;
            let f = res.functor(algebra, BarVariant::Full, &cat)?;
            Ok(Built::plain(build_gz_complex(cat.table(), &f, ring, top, cap)?.complex))
        }
        Pipeline::Extended => {
            let cat = res.category(CategoryKind::Extended, n)?;
            let f = res.functor(algebra, BarVariant::Extended, &cat)?;
            Ok(Built::plain(build_gz_complex(cat.table(), &f, ring, top, cap)?.complex))
        }
        Pipeline::Nerve => {
            let cat = res.category(CategoryKind::Full, n)?;
            let f = res.functor(algebra, BarVariant::Full, &cat)?;
            let nerve = build_nerve_variant(cat.table(), &f, ring, top, cap)?;
            let mut built = Built::plain(nerve.gz.complex.clone());
            if options.verify {
                let t = Instant::now();
                let gz = build_gz_complex(cat.table(), &f, ring, top, cap)?;
                let iso = gz_nerve_iso(cat.table(), &f, &nerve, &gz);
                built.verifications.insert("nerve_iso_chain_map".into(), iso.is_chain_map(&nerve.gz.complex, &gz.complex).into());
                built.verifications.insert("nerve_iso_invertible".into(), iso_blocks_invertible(&f, &nerve, ring).into());
                built.auxiliary.insert("gz".into(), homology(&gz.complex)?);
                built.verification_time = seconds(t);
            }
            Ok(built)
        }
        Pipeline::Reduced => {
            let cat = res.category(CategoryKind::Full, n)?;
            let split = build_reduced_split(&cat, algebra, top, cap)?;
            let t = Instant::now();
            let ideal = homology(&split.ideal)?;
            let unit = homology(&split.unit)?;
            let mut built = Built::plain(split.full.complex.clone());
            built.homology = Some((direct_sum(&ideal, &unit), seconds(t)));
            if options.verify {
                let t = Instant::now();
                built.verifications.insert("split_block_diagonal".into(), split.off_diagonal_degrees().is_empty().into());
                let u = contracting_homotopy_unit(&cat, ring, top, cap)?;
                built.verifications.insert(
                    "unit_cover_contraction".into(),
                    (u.failures().is_empty() && u.augmentation_is_chain_map()).into(),
                );
                built
                    .verifications
                    .insert("unit_projection_chain_map".into(), u.projection.is_chain_map(&u.cover.complex, &split.unit).into());
                built.verification_time = seconds(t);
            }
            built.auxiliary.insert("ideal".into(), ideal);
            built.auxiliary.insert("unit".into(), unit);
            Ok(built)
        }
        Pipeline::Epi => {
            let cat = res.category(CategoryKind::Epi, n)?;
            let alg = adapted(algebra)?;
            let f = res.functor(&alg, BarVariant::Ideal, &cat)?;
            let gz = build_gz_complex(cat.table(), &f, ring, top, cap)?;
            let epi = EpiComplex { algebra: alg, functor: f, gz };
            let mut built = Built::plain(epi.gz.complex.clone());
            if options.verify {
                let t = Instant::now();
                let full = res.category(CategoryKind::Full, n)?;
                let split = build_reduced_split(&full, algebra, top, cap)?;
                let cmp = EpiComparison::new(&full, &split, &cat, &epi)?;
                let chi = cmp.chi_chain_map()?;
                let incl = cmp.inclusion_chain_map()?;
                let h = cmp.presimplicial_homotopy()?;
                built.verifications.insert("chi_chain_map".into(), chi.is_chain_map(&split.ideal, epi.complex()).into());
                built.verifications.insert("inclusion_chain_map".into(), incl.is_chain_map(epi.complex(), &split.ideal).into());
                let retract = chi.compose(&incl).matrices.iter().enumerate().all(|(k, m)| {
                    crate::chain::equal_in(ring, m, &crate::matrix::SparseMatrix::identity(epi.complex().dim(k)))
                });
                built.verifications.insert("chi_after_inclusion_is_identity".into(), retract.into());
                built
                    .verifications
                    .insert("presimplicial_homotopy".into(), cmp.homotopy_failures(&chi, &incl, &h).is_empty().into());
                built.auxiliary.insert("ideal".into(), homology(&split.ideal)?);
                built.verification_time = seconds(t);
            }
            Ok(built)
        }
        Pipeline::Slominska => {
            let data = SlominskaData::new(algebra, n)?;
            let s0 = build_s0(n);
            let (modules, f) = coinvariant_functor(&data, &s0);
            let gz: GzComplex = build_gz_complex(s0.table(), &f, Ring::Rationals, top, cap)?;
            let mut built = Built::plain(gz.complex.with_ring(ring));
            if options.verify {
                let t = Instant::now();
                let idempotent = modules.iter().all(|m| m.projector.mul(&m.projector) == m.projector);
                built.verifications.insert("averaging_projector_idempotent".into(), idempotent.into());
                let tab = s0.table();
                let functorial = (0..tab.num_morphisms() as u32)
                    .all(|u| tab.out(tab.tgt(u)).all(|v| *f.matrix(tab.compose(v, u)) == f.matrix(v).mul(f.matrix(u))));
                built.verifications.insert("coinvariant_functor".into(), functorial.into());
                built.verification_time = seconds(t);
            }
            Ok(built)
        }
    }
}

/// Homology of `C ⊕ C'` from the homology of the summands.
pub fn direct_sum(a: &HomologyResult, b: &HomologyResult) -> HomologyResult {
    let betti = a.betti.iter().zip(&b.betti).map(|(x, y)| x + y).collect();
    let ranks = a.ranks.iter().zip(&b.ranks).map(|(x, y)| x + y).collect();
    let torsion = a
        .torsion
        .iter()
        .zip(&b.torsion)
        .map(|(x, y)| torsion_invariants(x.iter().chain(y).cloned().collect()))
        .collect();
    HomologyResult { ring: a.ring, betti, torsion, ranks }
}

/// Per degree, the smallest `N` from which the Betti number no longer
/// changed (equal for two consecutive `N`), or `None` if not yet stable.
pub fn stabilization(betti_by_n: &[(usize, Vec<usize>)]) -> Vec<Option<usize>> {
    let degrees = betti_by_n.iter().map(|(_, b)| b.len()).min().unwrap_or(0);
    (0..degrees)
        .map(|d| {
            let mut stable_from = None;
            for w in betti_by_n.windows(2) {
                if w[0].1[d] == w[1].1[d] && w[1].0 == w[0].0 + 1 {
                    stable_from.get_or_insert(w[0].0);
                } else {
                    stable_from = None;
                }
            }
            stable_from
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(alg: &InvolutiveAlgebra, p: Pipeline, n: usize, d: usize) -> PipelineOutcome {
        let opts = RunOptions { verify: true, ..RunOptions::default() };
        run_pipeline(alg, p, TruncationPolicy { max_object: n, max_degree: d }, &opts, &Direct).unwrap()
    }

    #[test]
    fn ground_ring_full_pipeline() {
        let o = run(&InvolutiveAlgebra::ground_ring(Ring::Rationals), Pipeline::Full, 1, 1);
        assert_eq!(o.homology.betti, vec![1, 0]);
        assert!(o.verified());
    }

    #[test]
    fn every_pipeline_verifies_on_c2() {
        let a = InvolutiveAlgebra::cyclic(2, Ring::Rationals).unwrap();
        let mut reduced = Vec::new();
        let mut unreduced = Vec::new();
        for p in Pipeline::ALL {
            let o = run(&a, p, 1, 1);
            assert!(o.verified(), "{p}: {:?}", o.verifications);
            if p.is_reduced() {
                reduced.push(o.homology.betti);
            } else {
                unreduced.push(o.homology.betti);
            }
        }
        assert!(reduced.windows(2).all(|w| w[0] == w[1]));
        assert!(unreduced.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn torsion_coefficients_need_integers() {
        let opts = RunOptions { coefficients: Some(CoefficientModule::cyclic(2)), ..RunOptions::default() };
        let err = run_pipeline(
            &InvolutiveAlgebra::cyclic(2, Ring::Rationals).unwrap(),
            Pipeline::Full,
            TruncationPolicy { max_object: 0, max_degree: 1 },
            &opts,
            &Direct,
        )
        .unwrap_err();
        assert!(matches!(err, Error::RingMismatch { .. }));
    }

    #[test]
    fn direct_sum_normalizes_torsion() {
        use num_bigint::BigInt;
        let a = HomologyResult { ring: Ring::Integers, betti: vec![1], torsion: vec![vec![BigInt::from(2)]], ranks: vec![0, 1] };
        let b = HomologyResult { ring: Ring::Integers, betti: vec![0], torsion: vec![vec![BigInt::from(3)]], ranks: vec![0, 1] };
        let s = direct_sum(&a, &b);
        assert_eq!(s.torsion, vec![vec![BigInt::from(6)]]);
        assert_eq!(s.ranks, vec![0, 2]);
    }

    #[test]
    fn stabilization_table() {
        let rows = vec![(0, vec![1, 1]), (1, vec![1, 0]), (2, vec![1, 0])];
        assert_eq!(stabilization(&rows), vec![Some(0), Some(1)]);
        assert_eq!(stabilization(&rows[..2]), vec![Some(0), None]);
    }

    #[test]
    fn pipeline_names_round_trip() {
        for p in Pipeline::ALL {
            assert_eq!(p.tag().parse::<Pipeline>().unwrap(), p);
        }
        assert!("bogus".parse::<Pipeline>().is_err());
    }
}
