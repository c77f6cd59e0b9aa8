//! Hyperoctahedral groups and the categories `Δ`, `ΔH`, `IF(as)`, `EpiΔH`
//! and `ΔH₊`.

pub mod delta;
pub mod enumerate;
pub mod factor;
pub mod finite;
pub mod hyp;
pub mod ifas;
pub mod monoidal;
pub mod pair;
pub mod verify;

pub use delta::{DeltaGen, DeltaMorphism};
pub use enumerate::{enumerate_hom, epi_count, hom_count, HomVariant};
pub use factor::{epi_mono_factorize, epi_mono_ifas};
pub use finite::{CategoryKind, CategoryTable, TruncatedCategory};
pub use hyp::{HypElement, HypGen, Label};
pub use ifas::{label_flip, IfasMorphism, EMPTY};
pub use monoidal::{monoidal_product, monoidal_symmetry};
pub use pair::{ifas_to_pair, pair_to_ifas, DeltaHMorphism};
pub use verify::{verify_category, CategoryReport, CheckOutcome};
