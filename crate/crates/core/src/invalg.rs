//! Finite-dimensional involutive algebras over exact ground rings.

use crate::error::{Error, Result};
use crate::matrix::{normalize, SparseVec};
use crate::ring::Ring;
use crate::scalar::Rat;

/// An associative unital algebra with basis `b_0 … b_{d-1}`, an
/// anti-involution and optionally an augmentation.
///
/// `involution[i][j]` is the coefficient of `b_i` in `\bar{b_j}`;
/// `structure[(i * d + j) * d + k]` is the coefficient of `b_k` in `b_i b_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutiveAlgebra {
    ring: Ring,
    names: Vec<String>,
    structure: Vec<Rat>,
    unit: Vec<Rat>,
    involution: Vec<Vec<Rat>>,
    augmentation: Option<Vec<Rat>>,
    products: Vec<SparseVec>,
    involution_cols: Vec<SparseVec>,
}

impl InvolutiveAlgebra {
    /// Validates and builds an algebra; every scalar must lie in `ring`.
    pub fn new(
        ring: Ring,
        names: Vec<String>,
        structure: Vec<Rat>,
        unit: Vec<Rat>,
        involution: Vec<Vec<Rat>>,
        augmentation: Option<Vec<Rat>>,
    ) -> Result<InvolutiveAlgebra> {
        let d = names.len();
        if d == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if structure.len() != d * d * d {
            return Err(Error::DimensionMismatch { expected: d * d * d, got: structure.len() });
        }
        if unit.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: unit.len() });
        }
        if involution.len() != d || involution.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidAlgebra("involution must be a d x d matrix".into()));
        }
        if let Some(e) = &augmentation {
            if e.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: e.len() });
            }
        }
        let red = |v: &Rat| ring.reduce(v);
        let structure = structure.iter().map(red).collect::<Result<Vec<_>>>()?;
        let unit = unit.iter().map(red).collect::<Result<Vec<_>>>()?;
        let involution =
            involution.iter().map(|r| r.iter().map(red).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let augmentation = augmentation.map(|e| e.iter().map(red).collect::<Result<Vec<_>>>()).transpose()?;
        let products = (0..d * d)
            .map(|ij| normalize((0..d).map(|k| (k as u32, structure[ij * d + k].clone())).collect()))
            .collect();
        let involution_cols =
            (0..d).map(|j| normalize((0..d).map(|i| (i as u32, involution[i][j].clone())).collect())).collect();
        let alg = InvolutiveAlgebra { ring, names, structure, unit, involution, augmentation, products, involution_cols };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        let r = self.ring;
        let eq = |a: &[Rat], b: &[Rat]| a.iter().zip(b).all(|(x, y)| r.equal(x, y));
        for i in 0..d {
            let bi = self.basis_vector(i);
            if !eq(&self.mul(&self.unit, &bi), &bi) || !eq(&self.mul(&bi, &self.unit), &bi) {
                return Err(Error::InvalidAlgebra(format!("unit is not neutral on {}", self.names[i])));
            }
            if !eq(&self.involve(&self.involve(&bi)), &bi) {
                return Err(Error::InvalidAlgebra("involution does not square to the identity".into()));
            }
            for j in 0..d {
                let bj = self.basis_vector(j);
                let bij = self.mul(&bi, &bj);
                let lhs = self.involve(&bij);
                let rhs = self.mul(&self.involve(&bj), &self.involve(&bi));
                if !eq(&lhs, &rhs) {
                    return Err(Error::InvalidAlgebra(format!(
                        "involution is not an anti-homomorphism on ({}, {})",
                        self.names[i], self.names[j]
                    )));
                }
                for k in 0..d {
                    let bk = self.basis_vector(k);
                    if !eq(&self.mul(&bij, &bk), &self.mul(&bi, &self.mul(&bj, &bk))) {
                        return Err(Error::InvalidAlgebra(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
                if let Some(e) = &self.augmentation {
                    if !r.equal(&self.apply_augmentation(e, &bij), &r.mul(&e[i], &e[j])) {
                        return Err(Error::InvalidAlgebra("augmentation is not multiplicative".into()));
                    }
                }
            }
            if let Some(e) = &self.augmentation {
                if !r.equal(&self.apply_augmentation(e, &self.involve(&bi)), &e[i]) {
                    return Err(Error::InvalidAlgebra("augmentation does not commute with the involution".into()));
                }
            }
        }
        if let Some(e) = &self.augmentation {
            if !r.equal(&self.apply_augmentation(e, &self.unit), &Rat::one()) {
                return Err(Error::InvalidAlgebra("augmentation does not send 1 to 1".into()));
            }
        }
        Ok(())
    }

    fn apply_augmentation(&self, e: &[Rat], x: &[Rat]) -> Rat {
        let s = e.iter().zip(x).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        self.ring.norm(s)
    }

    /// The group algebra `k[G]` with `g ↦ g^{-1}` and `ε(g) = 1`.
    /// `table[a][b]` is the index of `g_a g_b`.
    pub fn group_algebra(names: Vec<String>, table: &[Vec<usize>], ring: Ring) -> Result<InvolutiveAlgebra> {
        let n = names.len();
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroupTable("table must be n x n with entries below n".into()));
        }
        let e = (0..n)
            .find(|&a| (0..n).all(|b| table[a][b] == b && table[b][a] == b))
            .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroupTable("multiplication is not associative".into()));
                    }
                }
            }
        }
        let mut inverse = vec![0; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| table[a][b] == e && table[b][a] == e)
                .ok_or_else(|| Error::InvalidGroupTable(format!("{} has no inverse", names[a])))?;
        }
        let mut structure = vec![Rat::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                structure[(a * n + b) * n + table[a][b]] = Rat::one();
            }
        }
        let mut involution = vec![vec![Rat::zero(); n]; n];
        for a in 0..n {
            involution[inverse[a]][a] = Rat::one();
        }
        let unit = (0..n).map(|a| if a == e { Rat::one() } else { Rat::zero() }).collect();
        InvolutiveAlgebra::new(ring, names, structure, unit, involution, Some(vec![Rat::one(); n]))
    }

    /// The ground ring itself, with trivial involution and `ε = id`.
    pub fn ground_ring(ring: Ring) -> InvolutiveAlgebra {
        InvolutiveAlgebra::group_algebra(vec!["1".into()], &[vec![0]], ring).expect("trivial group")
    }

    /// `k[C_n]` on the basis `1, g, …, g^{n-1}`.
    pub fn cyclic(n: usize, ring: Ring) -> Result<InvolutiveAlgebra> {
        if n == 0 {
            return Err(Error::InvalidGroupTable("cyclic group of order 0".into()));
        }
        let names = (0..n)
            .map(|a| match a {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{a}"),
            })
            .collect();
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        InvolutiveAlgebra::group_algebra(names, &table, ring)
    }

    /// `k[C_2 × C_2]` on the basis `1, a, b, ab`.
    pub fn klein_four(ring: Ring) -> InvolutiveAlgebra {
        let names = ["1", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        let table: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        InvolutiveAlgebra::group_algebra(names, &table, ring).expect("Klein four-group")
    }

    /// `k[S_3]`, elements listed as permutations of `{0,1,2}` in lexicographic
    /// one-line order.
    pub fn symmetric3(ring: Ring) -> InvolutiveAlgebra {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let names = perms.iter().map(|p| format!("({}{}{})", p[0], p[1], p[2])).collect();
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        InvolutiveAlgebra::group_algebra(names, &table, ring).expect("symmetric group")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &[Rat] {
        &self.unit
    }

    pub fn augmentation(&self) -> Option<&[Rat]> {
        self.augmentation.as_deref()
    }

    pub fn involution_matrix(&self) -> &[Vec<Rat>] {
        &self.involution
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        let d = self.dim();
        &self.structure[(i * d + j) * d + k]
    }

    /// `b_i b_j` as a sparse vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim() + j]
    }

    /// `\bar{b_j}` as a sparse vector.
    pub fn basis_involution(&self, j: usize) -> &SparseVec {
        &self.involution_cols[j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        v[i] = Rat::one();
        v
    }

    fn mul(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let d = self.dim();
        let mut out = vec![Rat::zero(); d];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for (k, s) in self.basis_product(i, j) {
                    out[*k as usize] += &(&c * s);
                }
            }
        }
        out.into_iter().map(|v| self.ring.norm(v)).collect()
    }

    pub fn multiply(&self, x: &[Rat], y: &[Rat]) -> Result<Vec<Rat>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    pub fn involve(&self, x: &[Rat]) -> Vec<Rat> {
        let d = self.dim();
        let mut out = vec![Rat::zero(); d];
        for (j, xj) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (i, s) in self.basis_involution(j) {
                out[*i as usize] += &(xj * s);
            }
        }
        out.into_iter().map(|v| self.ring.norm(v)).collect()
    }

    pub fn involve_checked(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        self.check_len(x)?;
        Ok(self.involve(x))
    }

    pub fn augment(&self, x: &[Rat]) -> Result<Rat> {
        self.check_len(x)?;
        let e = self.augmentation.as_ref().ok_or(Error::MissingAugmentation)?;
        Ok(self.apply_augmentation(e, x))
    }

    fn check_len(&self, x: &[Rat]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.len() });
        }
        Ok(())
    }

    /// True when `b_0 = 1` and `ε(b_i) = 0` for `i ≥ 1`.
    pub fn is_adapted(&self) -> bool {
        let Some(e) = &self.augmentation else {
            return false;
        };
        let r = self.ring;
        self.unit.iter().enumerate().all(|(i, u)| r.equal(u, &if i == 0 { Rat::one() } else { Rat::zero() }))
            && e.iter().skip(1).all(|x| r.equal(x, &Rat::zero()))
    }

    /// Rewrites the algebra on a basis `{1} ∪ (basis of the augmentation ideal)`.
    pub fn adapt_basis(&self) -> Result<InvolutiveAlgebra> {
        let e = self.augmentation.as_ref().ok_or(Error::MissingAugmentation)?;
        if self.is_adapted() {
            return Ok(self.clone());
        }
        let d = self.dim();
        let r = self.ring;
        // columns of `p` are the new basis vectors in old coordinates
        let mut p = unit_completion(&self.unit, r)?;
        for col in p.iter_mut().skip(1) {
            let eps = self.apply_augmentation(e, col);
            for (c, u) in col.iter_mut().zip(&self.unit) {
                *c = r.norm(&*c - &(&eps * u));
            }
        }
        let pinv = invert(&p, r).ok_or(Error::NonSplitAugmentation(r))?;
        let to_new = |v: &[Rat]| -> Vec<Rat> {
            (0..d).map(|i| r.norm((0..d).fold(Rat::zero(), |acc, k| acc + &pinv[k][i] * &v[k]))).collect()
        };
        let mut structure = vec![Rat::zero(); d * d * d];
        for i in 0..d {
            for j in 0..d {
                let prod = to_new(&self.mul(&p[i], &p[j]));
                for (k, v) in prod.into_iter().enumerate() {
                    structure[(i * d + j) * d + k] = v;
                }
            }
        }
        let mut involution = vec![vec![Rat::zero(); d]; d];
        for j in 0..d {
            for (i, v) in to_new(&self.involve(&p[j])).into_iter().enumerate() {
                involution[i][j] = v;
            }
        }
        let unit = to_new(&self.unit);
        let augmentation = (0..d).map(|j| self.apply_augmentation(e, &p[j])).collect();
        let names = (0..d).map(|j| describe(&p[j], &self.names, j == 0)).collect();
        let adapted = InvolutiveAlgebra::new(r, names, structure, unit, involution, Some(augmentation))?;
        debug_assert!(adapted.is_adapted());
        Ok(adapted)
    }
}

/// A basis (as columns) whose first vector is `u`, unimodular over `ℤ`.
fn unit_completion(u: &[Rat], r: Ring) -> Result<Vec<Vec<Rat>>> {
    let d = u.len();
    if let Some(piv) = (0..d).find(|&i| r.is_unit(&u[i])) {
        let mut cols = vec![u.to_vec()];
        cols.extend((0..d).filter(|&j| j != piv).map(|j| {
            let mut v = vec![Rat::zero(); d];
            v[j] = Rat::one();
            v
        }));
        return Ok(cols);
    }
    if r != Ring::Integers {
        return Err(Error::NonSplitAugmentation(r));
    }
    // Euclid on the coordinates of u: maintain m with m·u = current vector,
    // m unimodular, until the vector is ±e_0; then the columns of m^{-1} work.
    let mut v: Vec<i128> = u.iter().map(|x| x.to_i64().map(i128::from)).collect::<Option<_>>().ok_or(Error::NonSplitAugmentation(r))?;
    let mut m: Vec<Vec<i128>> = (0..d).map(|i| (0..d).map(|j| i128::from(i == j)).collect()).collect();
    loop {
        let nonzero: Vec<usize> = (0..d).filter(|&i| v[i] != 0).collect();
        if nonzero.len() <= 1 {
            break;
        }
        let piv = *nonzero.iter().min_by_key(|&&i| v[i].abs()).unwrap();
        for &i in &nonzero {
            if i != piv {
                let q = v[i].div_euclid(v[piv]);
                v[i] -= q * v[piv];
                for k in 0..d {
                    m[i][k] -= q * m[piv][k];
                }
            }
        }
    }
    let piv = (0..d).find(|&i| v[i] != 0).ok_or(Error::NonSplitAugmentation(r))?;
    if v[piv].abs() != 1 {
        return Err(Error::NonSplitAugmentation(r));
    }
    m.swap(0, piv);
    v.swap(0, piv);
    let m: Vec<Vec<Rat>> =
        m.iter().map(|row| row.iter().map(|&x| Rat::from_int(x as i64) * Rat::from_int(v[0] as i64)).collect()).collect();
    // m·u = e_0, so column 0 of m^{-1} is u
    invert(&transpose(&m), r).ok_or(Error::NonSplitAugmentation(r))
}

fn transpose(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let d = a.len();
    (0..d).map(|j| (0..d).map(|i| a[i][j].clone()).collect()).collect()
}

/// Inverse of the matrix whose columns are `cols`, returned as columns.
/// Over `ℤ` the inverse must be integral.
fn invert(cols: &[Vec<Rat>], r: Ring) -> Option<Vec<Vec<Rat>>> {
    let d = cols.len();
    // row-major augmented [A | I] with A[i][j] = cols[j][i]
    let mut a: Vec<Vec<Rat>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rat> = (0..d).map(|j| cols[j][i].clone()).collect();
            row.extend((0..d).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    let field = |x: Rat| if let Ring::PrimeField(_) = r { r.norm(x) } else { x };
    for c in 0..d {
        let piv = (c..d).find(|&i| !field(a[i][c].clone()).is_zero())?;
        a.swap(c, piv);
        let inv = match r {
            Ring::PrimeField(_) => r.inverse(&a[c][c])?,
            _ => a[c][c].recip(),
        };
        for x in a[c].iter_mut() {
            *x = field(&*x * &inv);
        }
        for i in 0..d {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = field(&*x - &(&f * y));
                }
            }
        }
    }
    let inv_rows: Vec<Vec<Rat>> = a.into_iter().map(|row| row[d..].to_vec()).collect();
    if r == Ring::Integers && inv_rows.iter().flatten().any(|x| !x.is_integer()) {
        return None;
    }
    Some(transpose(&inv_rows))
}

fn describe(v: &[Rat], names: &[String], is_unit: bool) -> String {
    if is_unit {
        return "1".into();
    }
    let mut terms = Vec::new();
    let mut order: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    order.sort_by_key(|&i| v[i].is_negative());
    for i in order {
        let c = &v[i];
        let name = &names[i];
        terms.push(if c.is_one() {
            name.clone()
        } else if *c == Rat::from_int(-1) {
            format!("-{name}")
        } else {
            format!("{c}{name}")
        });
    }
    terms.join("+").replace("+-", "-")
}

/// Index arithmetic for tensor powers. Factor `0` is the most significant
/// digit. The ideal variant uses digits `1..d` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorBasis {
    pub dim: usize,
    pub ideal: bool,
}

impl TensorBasis {
    pub fn radix(&self) -> usize {
        if self.ideal {
            self.dim - 1
        } else {
            self.dim
        }
    }

    /// Number of basis tensors on `[n]`, i.e. with `n + 1` factors (`1` on the
    /// empty object).
    pub fn size(&self, n: i32) -> usize {
        self.radix().pow((n + 1) as u32)
    }

    pub fn decode(&self, n: i32, mut index: usize) -> Vec<usize> {
        let len = (n + 1) as usize;
        let r = self.radix();
        let mut out = vec![0; len];
        for k in (0..len).rev() {
            out[k] = index % r + usize::from(self.ideal);
            index /= r;
        }
        out
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        let r = self.radix();
        digits.iter().fold(0, |acc, &x| acc * r + x - usize::from(self.ideal))
    }
}
