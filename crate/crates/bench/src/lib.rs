//! Benchmark fixtures.

use hyperoct::barfun::{BarFunctor, BarVariant, FunctorTable};
use hyperoct::complexes::adapted;
use hyperoct::croscat::{CategoryKind, TruncatedCategory};
use hyperoct::{InvolutiveAlgebra, Ring};

/// A category with the functor tabulated on it, ready for complex assembly.
pub struct Fixture {
    pub name: String,
    pub category: TruncatedCategory,
    pub functor: FunctorTable,
    pub ring: Ring,
}

/// `ℚ[C_order]` on the full category with `H_A` and on the epimorphism
/// category with `H_I`.
pub fn cyclic_fixtures(order: usize, max_object: usize) -> Vec<Fixture> {
    let a = InvolutiveAlgebra::cyclic(order, Ring::Rationals).expect("cyclic group");
    let full = TruncatedCategory::new(CategoryKind::Full, max_object);
    let epi = TruncatedCategory::new(CategoryKind::Epi, max_object);
    let full_f = BarFunctor::new(a.clone(), BarVariant::Full).and_then(|b| b.tabulate(&full)).expect("tabulate");
    let epi_f = BarFunctor::new(adapted(&a).expect("augmented"), BarVariant::Ideal)
        .and_then(|b| b.tabulate(&epi))
        .expect("tabulate");
    vec![
        Fixture { name: format!("full/c{order}/N={max_object}"), category: full, functor: full_f, ring: Ring::Rationals },
        Fixture { name: format!("epi/c{order}/N={max_object}"), category: epi, functor: epi_f, ring: Ring::Rationals },
    ]
}
