//! The symmetric strict monoidal structure of `ΔH₊` under disjoint union.

use super::ifas::IfasMorphism;

/// `f ⨿ h`; the empty object `[-1]` is the unit.
pub fn monoidal_product(f: &IfasMorphism, h: &IfasMorphism) -> IfasMorphism {
    f.coproduct(h)
}

/// The block transposition `[n] ⨿ [m] → [m] ⨿ [n]`.
pub fn monoidal_symmetry(n: i32, m: i32) -> IfasMorphism {
    IfasMorphism::symmetry(n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::croscat::enumerate::{enumerate_hom, HomVariant};
    use crate::croscat::ifas::EMPTY;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_morphism(rng: &mut ChaCha8Rng) -> IfasMorphism {
        loop {
            let n = rng.gen_range(-1..=2);
            let m = rng.gen_range(-1..=2);
            if let Some(f) = enumerate_hom(n, m, HomVariant::All).choose(rng) {
                return f.clone();
            }
        }
    }

    #[test]
    fn unit_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let unit = IfasMorphism::identity(EMPTY);
        for _ in 0..100 {
            let f = random_morphism(&mut rng);
            assert_eq!(monoidal_product(&f, &unit), f);
            assert_eq!(monoidal_product(&unit, &f), f);
        }
    }

    #[test]
    fn associativity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (f, g, h) = (random_morphism(&mut rng), random_morphism(&mut rng), random_morphism(&mut rng));
            let lhs = monoidal_product(&monoidal_product(&f, &g), &h);
            let rhs = monoidal_product(&f, &monoidal_product(&g, &h));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn symmetry_is_natural_and_self_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let (f, g) = (random_morphism(&mut rng), random_morphism(&mut rng));
            let lhs = monoidal_symmetry(f.target(), g.target()).compose(&monoidal_product(&f, &g)).unwrap();
            let rhs = monoidal_product(&g, &f).compose(&monoidal_symmetry(f.source(), g.source())).unwrap();
            assert_eq!(lhs, rhs);
            let twice = monoidal_symmetry(g.source(), f.source()).compose(&monoidal_symmetry(f.source(), g.source()));
            assert!(twice.unwrap().is_identity());
        }
    }

    #[test]
    fn product_is_functorial() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let f1 = random_morphism(&mut rng);
            let g1 = random_morphism(&mut rng);
            let f2 = enumerate_hom(f1.target(), rng.gen_range(f1.target().max(0)..=2), HomVariant::All)
                .choose(&mut rng)
                .unwrap()
                .clone();
            let g2 = enumerate_hom(g1.target(), 2, HomVariant::All).choose(&mut rng).unwrap().clone();
            let lhs = monoidal_product(&f2.compose(&f1).unwrap(), &g2.compose(&g1).unwrap());
            let rhs = monoidal_product(&f2, &g2).compose(&monoidal_product(&f1, &g1)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
