//! Epi–mono factorization in `ΔH`.

use super::delta::DeltaMorphism;
use super::ifas::IfasMorphism;
use super::pair::{ifas_to_pair, pair_to_ifas, DeltaHMorphism};
use crate::error::Result;

/// `f = mono • epi` with `mono` an order-preserving injection (labels `1`)
/// onto the image of `f`, and `epi` surjective.
pub fn epi_mono_ifas(f: &IfasMorphism) -> (DeltaMorphism, IfasMorphism) {
    let image: Vec<u8> =
        f.preimages().iter().enumerate().filter(|(_, fib)| !fib.is_empty()).map(|(j, _)| j as u8).collect();
    let epi_fibres = image.iter().map(|&j| f.fibre(j as usize).to_vec()).collect();
    let epi = IfasMorphism::from_parts_unchecked(f.source(), image.len() as i32 - 1, epi_fibres);
    let mono = DeltaMorphism::from_parts_unchecked(f.target() as usize, image);
    (mono, epi)
}

/// `f = (i_φ, id) ∘ (π_φ, g)`.
pub fn epi_mono_factorize(f: &DeltaHMorphism) -> Result<(DeltaMorphism, DeltaHMorphism)> {
    let (mono, epi) = epi_mono_ifas(&pair_to_ifas(f));
    Ok((mono, ifas_to_pair(&epi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::croscat::enumerate::{enumerate_hom, HomVariant};
    use crate::croscat::hyp::HypElement;

    #[test]
    fn injective_face() {
        let f = DeltaHMorphism::from_delta(DeltaMorphism::face(1, 1));
        let (mono, epi) = epi_mono_factorize(&f).unwrap();
        assert_eq!(mono, DeltaMorphism::face(1, 1));
        assert_eq!(epi, DeltaHMorphism::identity(0));
    }

    #[test]
    fn surjective_is_its_own_epi() {
        let f = DeltaHMorphism::new(DeltaMorphism::degeneracy(0, 0), HypElement::t(2, 1)).unwrap();
        let (mono, epi) = epi_mono_factorize(&f).unwrap();
        assert!(mono.is_identity());
        assert_eq!(epi, f);
    }

    #[test]
    fn unique_among_all_factorizations() {
        for n in 0..3 {
            for m in 0..3 {
                for f in enumerate_hom(n, m, HomVariant::All) {
                    let (mono, epi) = epi_mono_ifas(&f);
                    let mono_f = IfasMorphism::from_delta(&mono);
                    assert_eq!(mono_f.compose(&epi).unwrap(), f);
                    assert!(mono.is_injective() && epi.is_epi());
                    let r = epi.target();
                    let mut found = 0;
                    for e in enumerate_hom(n, r, HomVariant::Epi) {
                        for d in DeltaMorphism::all(r as usize, m as usize).into_iter().filter(|d| d.is_injective()) {
                            if IfasMorphism::from_delta(&d).compose(&e).unwrap() == f {
                                found += 1;
                            }
                        }
                    }
                    assert_eq!(found, 1, "{f:?}");
                }
            }
        }
    }
}
