//! Sparse column-major matrices over [`Rat`].

use std::fmt;

use crate::scalar::Rat;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(u32, Rat)>;

/// Sorts, merges duplicate indices and drops zeros.
pub fn normalize(mut entries: Vec<(u32, Rat)>) -> SparseVec {
    if entries.len() <= 1 {
        entries.retain(|(_, v)| !v.is_zero());
        return entries;
    }
    entries.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some((j, w)) if *j == i => *w += &v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// `a + c * b` for sorted sparse vectors.
pub fn axpy(a: &[(u32, Rat)], c: &Rat, b: &[(u32, Rat)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> SparseMatrix {
        SparseMatrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i as u32, Rat::one())]).collect() }
    }

    /// Builds a matrix from already-normalized columns.
    pub fn from_columns(rows: usize, data: Vec<SparseVec>) -> SparseMatrix {
        debug_assert!(data.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(data.iter().all(|c| c.iter().all(|(i, v)| (*i as usize) < rows && !v.is_zero())));
        SparseMatrix { rows, cols: data.len(), data }
    }

    /// Builds from a row-major dense array.
    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<Rat>]) -> SparseMatrix {
        let mut data = vec![Vec::new(); cols];
        for (i, row) in dense.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    data[j].push((i as u32, v.clone()));
                }
            }
        }
        SparseMatrix { rows, cols, data }
    }

    pub fn from_dense_ints(rows: &[&[i64]]) -> SparseMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let dense: Vec<Vec<Rat>> = rows.iter().map(|row| row.iter().map(|&v| Rat::from_int(v)).collect()).collect();
        SparseMatrix::from_dense(r, c, &dense)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(u32, Rat)] {
        &self.data[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        match self.data[j].binary_search_by_key(&(i as u32), |e| e.0) {
            Ok(k) => self.data[j][k].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn mul_vec(&self, v: &[(u32, Rat)]) -> SparseVec {
        let mut acc = Vec::new();
        for (j, c) in v {
            for (i, a) in &self.data[*j as usize] {
                acc.push((*i, a * c));
            }
        }
        normalize(acc)
    }

    /// Matrix product `self * rhs`. Panics on shape mismatch.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let data = rhs.data.iter().map(|c| self.mul_vec(c)).collect();
        SparseMatrix { rows: self.rows, cols: rhs.cols, data }
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.axpy(&Rat::one(), rhs)
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.axpy(&Rat::from_int(-1), rhs)
    }

    /// `self + c * rhs`.
    pub fn axpy(&self, c: &Rat, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| axpy(a, c, b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Rat) -> SparseMatrix {
        if c.is_zero() {
            return SparseMatrix::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|col| col.iter().map(|(i, v)| (*i, v * c)).collect()).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data = vec![Vec::new(); self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for (i, v) in col {
                data[*i as usize].push((j as u32, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Submatrix on the given rows and columns (in the given order).
    /// Entries in unselected rows are dropped.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_map = vec![u32::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            row_map[r] = k as u32;
        }
        let data = cols
            .iter()
            .map(|&j| {
                normalize(
                    self.data[j]
                        .iter()
                        .filter(|(i, _)| row_map[*i as usize] != u32::MAX)
                        .map(|(i, v)| (row_map[*i as usize], v.clone()))
                        .collect(),
                )
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// True when every entry outside the selected rows vanishes in the selected columns.
    pub fn is_supported_on(&self, rows: &[usize], cols: &[usize]) -> bool {
        let mut keep = vec![false; self.rows];
        for &r in rows {
            keep[r] = true;
        }
        cols.iter().all(|&j| self.data[j].iter().all(|(i, _)| keep[*i as usize]))
    }

    pub fn map_entries(&self, f: impl Fn(&Rat) -> Rat) -> SparseMatrix {
        let data = self
            .data
            .iter()
            .map(|c| c.iter().map(|(i, v)| (*i, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for (i, v) in col {
                out[*i as usize][j] = v.clone();
            }
        }
        out
    }

    /// Block-diagonal sum `diag(self, rhs)`.
    pub fn direct_sum(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let mut data = self.data.clone();
        let off = self.rows as u32;
        data.extend(rhs.data.iter().map(|c| c.iter().map(|(i, v)| (i + off, v.clone())).collect()));
        SparseMatrix { rows: self.rows + rhs.rows, cols: self.cols + rhs.cols, data }
    }

    /// Kronecker product `self ⊗ rhs` with row index `i * rhs.rows + k`.
    pub fn kron(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let mut data = Vec::with_capacity(self.cols * rhs.cols);
        for a in &self.data {
            for b in &rhs.data {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (i, x) in a {
                    for (k, y) in b {
                        col.push((i * rhs.rows as u32 + k, x * y));
                    }
                }
                data.push(col);
            }
        }
        SparseMatrix { rows: self.rows * rhs.rows, cols: self.cols * rhs.cols, data }
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} ({} nnz)", self.rows, self.cols, self.nnz())?;
        if self.rows <= 12 && self.cols <= 12 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
                writeln!(f, "  [{}]", cells.join(" "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense_ints(&[&[1, 2], &[0, 1]]);
        let b = SparseMatrix::from_dense_ints(&[&[1, 0], &[3, 1]]);
        let ab = a.mul(&b);
        assert_eq!(ab, SparseMatrix::from_dense_ints(&[&[7, 2], &[3, 1]]));
        assert_eq!(ab.transpose().transpose(), ab);
        assert_eq!(a.mul(&SparseMatrix::identity(2)), a);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn kron_matches_index_convention() {
        let a = SparseMatrix::from_dense_ints(&[&[0, 1], &[1, 0]]);
        let b = SparseMatrix::from_dense_ints(&[&[2, 0], &[0, 3]]);
        let k = a.kron(&b);
        // column (j=0, l=1) -> entries at row (1, 1) = 3
        assert_eq!(k.get(3, 1), Rat::from_int(3));
        assert_eq!(k.get(2, 0), Rat::from_int(2));
        assert_eq!(k.nnz(), 4);
    }

    #[test]
    fn normalize_merges() {
        let v = normalize(vec![(3, Rat::one()), (1, Rat::one()), (3, Rat::from_int(-1))]);
        assert_eq!(v, vec![(1, Rat::one())]);
    }
}
