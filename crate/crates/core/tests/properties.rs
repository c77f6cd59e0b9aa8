use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use hyperoct::barfun::{BarFunctor, BarVariant, FunctorTable};
use hyperoct::croscat::{ifas_to_pair, pair_to_ifas, CategoryKind, TruncatedCategory};
use hyperoct::homology::snf::invariant_factors;
use hyperoct::homology::{exact_rational_ranks, homology, rational_ranks, uct_check, CoefficientModule};
use hyperoct::{InvolutiveAlgebra, Rat, Ring, SparseMatrix, TruncatedComplex};

fn category() -> &'static TruncatedCategory {
    static CAT: OnceLock<TruncatedCategory> = OnceLock::new();
    CAT.get_or_init(|| TruncatedCategory::new(CategoryKind::Full, 2))
}

fn functors() -> &'static [FunctorTable] {
    static F: OnceLock<Vec<FunctorTable>> = OnceLock::new();
    F.get_or_init(|| {
        [
            InvolutiveAlgebra::cyclic(2, Ring::Rationals).unwrap(),
            InvolutiveAlgebra::cyclic(3, Ring::Rationals).unwrap(),
            InvolutiveAlgebra::klein_four(Ring::Rationals),
        ]
        .into_iter()
        .map(|a| BarFunctor::new(a, BarVariant::Full).unwrap().tabulate(category()).unwrap())
        .collect()
    })
}

/// A composable pair `(f, g)` chosen by two seeds.
fn composable(x: usize, y: usize) -> (u32, u32) {
    let t = category().table();
    let f = (x % t.num_morphisms()) as u32;
    let out = t.out(t.tgt(f));
    let g = out.start + (y % out.len()) as u32;
    (f, g)
}

fn dense_rank(m: &SparseMatrix) -> usize {
    let mut rows: Vec<Vec<Rat>> = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m.get(i, j)).collect()).collect();
    let mut r = 0;
    for c in 0..m.ncols() {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in r + 1..rows.len() {
            let f = &rows[i][c] / &rows[r][c];
            for j in c..m.ncols() {
                let v = &rows[r][j] * &f;
                rows[i][j] = &rows[i][j] - &v;
            }
        }
        r += 1;
    }
    r
}

fn int_matrix() -> impl Strategy<Value = SparseMatrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(m, n)| {
        proptest::collection::vec(-4i64..5, m * n).prop_map(move |v| {
            let rows: Vec<&[i64]> = v.chunks(n).collect();
            SparseMatrix::from_dense_ints(&rows)
        })
    })
}

fn one_step(ring: Ring, d: SparseMatrix) -> TruncatedComplex {
    let (m, n) = (d.nrows(), d.ncols());
    TruncatedComplex::new(ring, vec![m, n, 0], vec![d, SparseMatrix::zeros(n, 0)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pair_form_round_trips_and_composes(x in any::<usize>(), y in any::<usize>()) {
        let cat = category();
        let (f, g) = composable(x, y);
        let (mf, mg) = (cat.morphism(f), cat.morphism(g));
        let (pf, pg) = (ifas_to_pair(mf).unwrap(), ifas_to_pair(mg).unwrap());
        prop_assert_eq!(&pair_to_ifas(&pf), mf);
        prop_assert_eq!(pair_to_ifas(&pg.compose(&pf).unwrap()), mg.compose(mf).unwrap());
        prop_assert_eq!(cat.morphism(cat.table().compose(g, f)), &mg.compose(mf).unwrap());
    }

    #[test]
    fn composition_is_associative(x in any::<usize>(), y in any::<usize>(), z in any::<usize>()) {
        let t = category().table();
        let (f, g) = composable(x, y);
        let out = t.out(t.tgt(g));
        let h = out.start + (z % out.len()) as u32;
        prop_assert_eq!(t.compose(h, t.compose(g, f)), t.compose(t.compose(h, g), f));
    }

    #[test]
    fn bar_functor_is_functorial(x in any::<usize>(), y in any::<usize>(), a in 0usize..3) {
        let t = category().table();
        let (f, g) = composable(x, y);
        let tab = &functors()[a];
        prop_assert_eq!(tab.matrix(t.compose(g, f)), &tab.matrix(g).mul(tab.matrix(f)));
    }

    #[test]
    fn rational_betti_numbers_from_rank(d in int_matrix()) {
        let r = dense_rank(&d);
        let (m, n) = (d.nrows(), d.ncols());
        let c = one_step(Ring::Rationals, d);
        prop_assert_eq!(rational_ranks(&c), exact_rational_ranks(&c));
        prop_assert_eq!(homology(&c).unwrap().betti, vec![m - r, n - r]);
    }

    #[test]
    fn invariant_factors_divide_in_order(d in int_matrix()) {
        let f = invariant_factors(&d);
        prop_assert_eq!(f.len(), dense_rank(&d));
        for w in f.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(f.iter().all(|x| *x > BigInt::from(0)));
    }

    #[test]
    fn universal_coefficients_hold(d in int_matrix(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let c = one_step(Ring::Integers, d);
        let report = uct_check(&c, &CoefficientModule::cyclic(p)).unwrap();
        prop_assert!(report.holds());
    }
}
