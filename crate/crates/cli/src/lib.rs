//! Job specification, execution and reporting for the `hyperoct` command.

pub mod algebra_spec;
pub mod cache;
pub mod report;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hyperoct::homology::CoefficientModule;
use hyperoct::pipeline::Pipeline;
use hyperoct::Ring;

pub use algebra_spec::{fingerprint, AlgebraSource, AlgebraSpec, Builtin};
pub use cache::{CacheStats, DiskCache};
pub use report::{run, Report};

/// An invalid job or algebra specification; `field` names the offending input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub field: String,
    pub message: String,
}

impl SpecError {
    pub fn new(field: &str, message: impl Into<String>) -> SpecError {
        SpecError { field: field.to_string(), message: message.into() }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for SpecError {}

/// Inclusive range of truncation objects `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ObjectRange {
    pub first: usize,
    pub last: usize,
}

impl ObjectRange {
    pub fn values(&self) -> impl Iterator<Item = usize> {
        self.first..=self.last
    }
}

impl FromStr for ObjectRange {
    type Err = SpecError;

    /// `N` or `N1..N2`.
    fn from_str(s: &str) -> Result<ObjectRange, SpecError> {
        let bad = || SpecError::new("max-object", format!("expected N or N1..N2, got {s:?}"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let range = match s.split_once("..") {
            Some((a, b)) => ObjectRange { first: num(a)?, last: num(b.trim_start_matches('='))? },
            None => {
                let n = num(s)?;
                ObjectRange { first: n, last: n }
            }
        };
        if range.first > range.last {
            return Err(SpecError::new("max-object", "range is empty"));
        }
        Ok(range)
    }
}

pub fn parse_ring(s: &str) -> Result<Ring, SpecError> {
    s.parse().map_err(|e: hyperoct::Error| SpecError::new("ring", e.to_string()))
}

pub fn parse_coefficients(s: &str) -> Result<CoefficientModule, SpecError> {
    CoefficientModule::parse(s).map_err(|e| SpecError::new("coefficients", e.to_string()))
}

pub fn parse_pipeline(s: &str) -> Result<Pipeline, SpecError> {
    s.parse().map_err(|e: hyperoct::Error| SpecError::new("pipeline", e.to_string()))
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub algebra: AlgebraSource,
    pub ring: Ring,
    pub pipelines: Vec<Pipeline>,
    pub max_object: ObjectRange,
    pub max_degree: usize,
    pub coefficients: Option<(String, CoefficientModule)>,
    pub verify: bool,
    pub max_generators: u64,
    pub cache_dir: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(algebra: AlgebraSource, ring: Ring, pipelines: Vec<Pipeline>, max_object: usize, max_degree: usize) -> JobSpec {
        JobSpec {
            algebra,
            ring,
            pipelines,
            max_object: ObjectRange { first: max_object, last: max_object },
            max_degree,
            coefficients: None,
            verify: false,
            max_generators: 50_000_000,
            cache_dir: None,
        }
    }

    /// Pipeline and ring compatibility.
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.pipelines.is_empty() {
            return Err(SpecError::new("pipeline", "at least one pipeline is required"));
        }
        if self.pipelines.contains(&Pipeline::Slominska) && self.ring.characteristic() != 0 {
            return Err(SpecError::new("pipeline", format!("slominska needs characteristic zero, ring is {}", self.ring)));
        }
        if let Some((text, m)) = &self.coefficients {
            if !m.is_free() && self.ring != Ring::Integers {
                return Err(SpecError::new("coefficients", format!("{text} needs the ring z, ring is {}", self.ring)));
            }
        }
        if self.max_generators == 0 {
            return Err(SpecError::new("max-generators", "must be positive"));
        }
        Ok(())
    }
}
