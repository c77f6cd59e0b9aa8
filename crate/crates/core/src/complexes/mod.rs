//! Truncated chain complexes of the hyperoctahedral category and the maps
//! between them.

pub mod epi;
pub mod gz;
pub mod nerve;
pub mod reduced;
pub mod strings;

pub use epi::{
    build_epi_complex, epimorphism_construction, induced_morphism, EpiComparison, EpiComplex, HOMOTOPY_SIGN,
};
pub use gz::{build_gz_complex, GzComplex};
pub use strings::{projected_generators, StringIndex};
pub use nerve::{build_nerve_variant, gz_nerve_iso, NerveComplex, ObjectQuotient};
pub use reduced::{adapted, build_reduced_split, contracting_homotopy_unit, ReducedSplit, UnitHomotopy};
