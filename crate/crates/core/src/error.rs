use thiserror::Error;

use crate::ring::Ring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("value {value} does not lie in {ring}")]
    NotInRing { value: String, ring: Ring },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("hyperoctahedral elements act on different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("morphisms are not composable: inner target [{inner_target}] vs outer source [{outer_source}]")]
    ObjectMismatch { inner_target: i32, outer_source: i32 },
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("the empty object is only available in the extended category")]
    EmptyObject,
    #[error("morphism is not an epimorphism")]
    NotEpi,
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("invalid involutive algebra: {0}")]
    InvalidAlgebra(String),
    #[error("algebra has no augmentation")]
    MissingAugmentation,
    #[error("augmentation does not split over {0}")]
    NonSplitAugmentation(Ring),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree {degree} would have {projected} generators, above the cap of {cap}")]
    ResourceCap { degree: usize, projected: u128, cap: u128 },
    #[error("operation requires characteristic zero, ring is {0}")]
    NonZeroCharacteristic(Ring),
    #[error("operation requires {expected}, complex is over {got}")]
    RingMismatch { expected: String, got: Ring },
    #[error("vector is not a cycle in degree {0}")]
    NotACycle(usize),
    #[error("complex has no boundary out of degree {0}")]
    MissingDegree(usize),
    #[error("construction left the truncated category: {0}")]
    OutsideTruncation(String),
}
