//! Exhaustive checks of the category axioms and of `ΔH ≅ IF(as)` for small
//! objects.

use rayon::prelude::*;
use serde::Serialize;

use super::delta::DeltaMorphism;
use super::enumerate::{enumerate_hom, HomVariant};
use super::factor::epi_mono_ifas;
use super::finite::{CategoryKind, TruncatedCategory};
use super::hyp::HypElement;
use super::ifas::IfasMorphism;
use super::pair::{ifas_to_pair, pair_to_ifas, DeltaHMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
}

impl CheckOutcome {
    fn tally(name: &str, results: impl IntoIterator<Item = bool>) -> CheckOutcome {
        let (mut passed, mut failed) = (0, 0);
        for ok in results {
            if ok {
                passed += 1;
            } else {
                failed += 1;
            }
        }
        CheckOutcome { name: name.to_string(), passed, failed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CategoryReport {
    pub depth: usize,
    pub checks: Vec<CheckOutcome>,
}

impl CategoryReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.failed == 0)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs every check for objects `[0..depth]`.
pub fn verify_category(depth: usize) -> CategoryReport {
    let mut checks = vec![group_relations(depth), simplicial_identities(depth)];
    let cat = TruncatedCategory::new(CategoryKind::Full, depth);
    checks.push(hom_counts(depth));
    checks.push(table_matches_composition(&cat));
    checks.push(identity_laws(&cat));
    checks.push(associativity(&cat));
    checks.extend(isomorphism_checks(&cat));
    checks.push(factorization(depth));
    CategoryReport { depth, checks }
}

fn group_relations(depth: usize) -> CheckOutcome {
    let mut results = Vec::new();
    for size in 1..=depth + 1 {
        let t = |i| HypElement::t(size, i);
        let th = |j| HypElement::theta(size, j);
        let id = HypElement::identity(size);
        let c = |a: &HypElement, b: &HypElement| a.compose(b).unwrap();
        for i in 0..size {
            results.push(c(&t(i), &t(i)) == id);
            for j in 0..size {
                results.push(c(&t(i), &t(j)) == c(&t(j), &t(i)));
            }
        }
        for i in 0..size.saturating_sub(1) {
            results.push(c(&th(i), &th(i)) == id);
            if i + 2 < size {
                results.push(c(&c(&th(i), &th(i + 1)), &th(i)) == c(&c(&th(i + 1), &th(i)), &th(i + 1)));
            }
            for j in 0..size - 1 {
                if i.abs_diff(j) > 1 {
                    results.push(c(&th(i), &th(j)) == c(&th(j), &th(i)));
                }
            }
            results.push(c(&th(i), &t(i + 1)) == c(&t(i), &th(i)));
            results.push(c(&th(i), &t(i)) == c(&t(i + 1), &th(i)));
            for j in (0..size).filter(|&j| j != i && j != i + 1) {
                results.push(c(&th(i), &t(j)) == c(&t(j), &th(i)));
            }
        }
        results.push(HypElement::all(size).len() as u128 == HypElement::group_order(size));
    }
    CheckOutcome::tally("hyperoctahedral relations", results)
}

fn simplicial_identities(depth: usize) -> CheckOutcome {
    let mut results = Vec::new();
    let d = DeltaMorphism::face;
    let s = DeltaMorphism::degeneracy;
    let c = |a: &DeltaMorphism, b: &DeltaMorphism| a.compose(b).unwrap();
    for n in 1..depth {
        for j in 0..=n + 1 {
            for i in 0..j {
                // δ_j δ_i = δ_i δ_{j-1}
                results.push(c(&d(n + 1, j), &d(n, i)) == c(&d(n + 1, i), &d(n, j - 1)));
            }
        }
    }
    for n in 0..depth {
        for j in 0..=n {
            results.push(c(&s(n, j), &d(n + 1, j)).is_identity());
            results.push(c(&s(n, j), &d(n + 1, j + 1)).is_identity());
        }
    }
    CheckOutcome::tally("simplicial identities", results)
}

fn hom_counts(depth: usize) -> CheckOutcome {
    let mut results = Vec::new();
    for n in 0..=depth {
        for m in 0..=depth {
            let brute = brute_force_monotone(n, m);
            let expected = brute as u128 * HypElement::group_order(n + 1);
            results.push(enumerate_hom(n as i32, m as i32, HomVariant::All).len() as u128 == expected);
        }
    }
    CheckOutcome::tally("hom-set cardinalities", results)
}

fn brute_force_monotone(n: usize, m: usize) -> usize {
    let total = (m + 1).pow(n as u32 + 1);
    (0..total)
        .filter(|&code| {
            let digits: Vec<usize> = (0..=n).map(|k| code / (m + 1).pow(k as u32) % (m + 1)).collect();
            digits.windows(2).all(|w| w[0] <= w[1])
        })
        .count()
}

fn table_matches_composition(cat: &TruncatedCategory) -> CheckOutcome {
    let t = cat.table();
    let results: Vec<bool> = (0..t.num_morphisms() as u32)
        .into_par_iter()
        .flat_map_iter(|f| {
            t.out(t.tgt(f)).map(move |g| cat.morphism(g).compose(cat.morphism(f)).ok().as_ref() == Some(cat.morphism(t.compose(g, f))))
        })
        .collect();
    CheckOutcome::tally("composition table", results)
}

fn identity_laws(cat: &TruncatedCategory) -> CheckOutcome {
    let t = cat.table();
    let results = (0..t.num_morphisms() as u32).flat_map(|f| {
        [
            t.compose(t.identity(t.tgt(f)), f) == f,
            t.compose(f, t.identity(t.src(f))) == f,
            cat.morphism(t.identity(t.src(f))).is_identity(),
        ]
    });
    CheckOutcome::tally("identity laws", results)
}

fn associativity(cat: &TruncatedCategory) -> CheckOutcome {
    let t = cat.table();
    let (passed, failed) = (0..t.num_morphisms() as u32)
        .into_par_iter()
        .map(|f| {
            let (mut p, mut q) = (0u64, 0u64);
            for g in t.out(t.tgt(f)) {
                let gf = t.compose(g, f);
                for h in t.out(t.tgt(g)) {
                    if t.compose(h, gf) == t.compose(t.compose(h, g), f) {
                        p += 1;
                    } else {
                        q += 1;
                    }
                }
            }
            (p, q)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    CheckOutcome { name: "associativity".into(), passed, failed }
}

fn all_pairs(n: usize, m: usize) -> Vec<DeltaHMorphism> {
    let mut out = Vec::new();
    for phi in DeltaMorphism::all(n, m) {
        for g in HypElement::all(n + 1) {
            out.push(DeltaHMorphism::new(phi.clone(), g).unwrap());
        }
    }
    out
}

fn isomorphism_checks(cat: &TruncatedCategory) -> Vec<CheckOutcome> {
    let depth = cat.max_object() as usize;
    let t = cat.table();
    let mut round_trip = Vec::new();
    for n in 0..=depth {
        for m in 0..=depth {
            for f in enumerate_hom(n as i32, m as i32, HomVariant::All) {
                round_trip.push(ifas_to_pair(&f).map(|p| pair_to_ifas(&p) == f).unwrap_or(false));
            }
            let pairs = all_pairs(n, m);
            for p in &pairs {
                round_trip.push(ifas_to_pair(&pair_to_ifas(p)).as_ref() == Ok(p));
            }
            let images: std::collections::HashSet<IfasMorphism> = pairs.iter().map(pair_to_ifas).collect();
            round_trip.push(images.len() == pairs.len());
        }
    }
    let pairs: Vec<DeltaHMorphism> = cat.morphisms().iter().map(|f| ifas_to_pair(f).unwrap()).collect();
    let preserved: Vec<bool> = (0..t.num_morphisms() as u32)
        .into_par_iter()
        .flat_map_iter(|f| {
            let pairs = &pairs;
            t.out(t.tgt(f)).map(move |g| {
                let composite = pairs[g as usize].compose(&pairs[f as usize]).unwrap();
                pair_to_ifas(&composite) == *cat.morphism(t.compose(g, f))
            })
        })
        .collect();
    let identities = (0..=depth).map(|n| pair_to_ifas(&DeltaHMorphism::identity(n)) == IfasMorphism::identity(n as i32));
    vec![
        CheckOutcome::tally("isomorphism round trip", round_trip),
        CheckOutcome::tally("isomorphism preserves composition", preserved),
        CheckOutcome::tally("isomorphism preserves identities", identities),
    ]
}

fn factorization(depth: usize) -> CheckOutcome {
    let mut results = Vec::new();
    for n in 0..=depth as i32 {
        for m in 0..=depth as i32 {
            for f in enumerate_hom(n, m, HomVariant::All) {
                let (mono, epi) = epi_mono_ifas(&f);
                results.push(IfasMorphism::from_delta(&mono).compose(&epi).ok() == Some(f.clone()));
                let mut count = 0;
                for r in 0..=m.min(n) {
                    let monos: Vec<_> =
                        DeltaMorphism::all(r as usize, m as usize).into_iter().filter(|d| d.is_injective()).collect();
                    for e in enumerate_hom(n, r, HomVariant::Epi) {
                        for d in &monos {
                            if IfasMorphism::from_delta(d).compose_unchecked(&e) == f {
                                count += 1;
                            }
                        }
                    }
                }
                results.push(count == 1);
            }
        }
    }
    CheckOutcome::tally("epi-mono factorization", results)
}
