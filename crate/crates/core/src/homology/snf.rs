//! Smith normal form invariants of integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{axpy, SparseMatrix, SparseVec};
use crate::scalar::Rat;

/// Non-zero invariant factors `d_1 | d_2 | …` (positive, units included).
/// Entries must be integers.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    assert!(m.columns().iter().flatten().all(|(_, v)| v.is_integer()), "matrix is not integral");
    let (units, rest) = eliminate_unit_pivots(m);
    let mut out = vec![BigInt::one(); units];
    out.extend(dense_snf(rest));
    out
}

/// Unimodular elimination on `±1` pivots. Returns the number of pivots and
/// the remaining dense block.
fn eliminate_unit_pivots(m: &SparseMatrix) -> (usize, Vec<Vec<BigInt>>) {
    let mut cols: Vec<SparseVec> = m.columns().to_vec();
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); m.nrows()];
    for (j, c) in cols.iter().enumerate() {
        for (i, _) in c {
            row_cols[*i as usize].push(j as u32);
        }
    }
    let mut active = vec![true; cols.len()];
    let mut row_done = vec![false; m.nrows()];
    let mut units = 0;
    loop {
        let mut progress = false;
        let mut order: Vec<usize> = (0..cols.len()).filter(|&j| active[j] && !cols[j].is_empty()).collect();
        order.sort_by_key(|&j| cols[j].len());
        for c in order {
            if !active[c] {
                continue;
            }
            let pivot = cols[c]
                .iter()
                .filter(|(r, v)| !row_done[*r as usize] && (v.is_one() || *v == Rat::from_int(-1)))
                .min_by_key(|(r, _)| row_cols[*r as usize].len())
                .map(|(r, v)| (*r, v.clone()));
            let Some((r, v)) = pivot else {
                continue;
            };
            let pivot_col = std::mem::take(&mut cols[c]);
            let mut others = std::mem::take(&mut row_cols[r as usize]);
            others.sort_unstable();
            others.dedup();
            for &o in &others {
                let o = o as usize;
                if o == c || !active[o] {
                    continue;
                }
                let Ok(k) = cols[o].binary_search_by_key(&r, |e| e.0) else {
                    continue;
                };
                let a = cols[o][k].1.clone();
                let coeff = -(&a * &v);
                let updated = axpy(&cols[o], &coeff, &pivot_col);
                for (i, _) in &pivot_col {
                    row_cols[*i as usize].push(o as u32);
                }
                cols[o] = updated;
            }
            active[c] = false;
            row_done[r as usize] = true;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let remaining: Vec<usize> = (0..cols.len()).filter(|&j| active[j] && !cols[j].is_empty()).collect();
    let mut row_index = vec![u32::MAX; m.nrows()];
    let mut nrows = 0;
    for &j in &remaining {
        for (i, _) in &cols[j] {
            debug_assert!(!row_done[*i as usize]);
            if row_index[*i as usize] == u32::MAX {
                row_index[*i as usize] = nrows;
                nrows += 1;
            }
        }
    }
    let mut dense = vec![vec![BigInt::zero(); remaining.len()]; nrows as usize];
    for (jj, &j) in remaining.iter().enumerate() {
        for (i, v) in &cols[j] {
            dense[row_index[*i as usize] as usize][jj] = v.to_bigint().unwrap();
        }
    }
    (units, dense)
}

/// Diagonal of the Smith normal form of a dense integer matrix (non-zero part).
pub fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest non-zero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else {
            break;
        };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                    if !a[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let s = &q * &a[i][t];
                        a[i][j] -= s;
                    }
                    if !a[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // move the smallest remainder in the pivot row/column to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.1 == t {
                    a.swap(t, best.0);
                } else {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            let p = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn scalar_two() {
        assert_eq!(invariant_factors(&SparseMatrix::from_dense_ints(&[&[2]])), big(&[2]));
    }

    #[test]
    fn diagonal() {
        let m = SparseMatrix::from_dense_ints(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 6]]);
        assert_eq!(invariant_factors(&m), big(&[1, 2, 6]));
        let m = SparseMatrix::from_dense_ints(&[&[2, 0], &[0, 3]]);
        assert_eq!(invariant_factors(&m), big(&[1, 6]));
    }

    #[test]
    fn mixed_entries() {
        let m = SparseMatrix::from_dense_ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(invariant_factors(&m), big(&[2, 6, 12]));
        let m = SparseMatrix::from_dense_ints(&[&[1, 1], &[1, -1]]);
        assert_eq!(invariant_factors(&m), big(&[1, 2]));
    }
}
