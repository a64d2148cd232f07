//! Dense linear algebra over a prime field `F_p`, `p < 2^16`.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field `Z/p`. Elements are residues `0..p` stored as `u32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub const MAX_PRIME: u64 = 1 << 16;

    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= Self::MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `acc += scale * x`, entrywise.
    pub fn axpy(self, acc: &mut [u32], scale: u32, x: &[u32]) {
        if scale == 0 {
            return;
        }
        for (a, &b) in acc.iter_mut().zip(x) {
            *a = self.add(*a, self.mul(scale, b));
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Row-major dense matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.modulus();
        }
        m
    }

    /// Builds a matrix from row-major entries, reducing each mod `p`.
    pub fn from_entries(field: Fp, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let data = entries.into_iter().map(|x| field.reduce(x)).collect();
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| x % field.modulus()));
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Fp, rows: usize, columns: &[Vec<u32>]) -> Result<Self> {
        Ok(Self::from_rows(field, rows, columns)?.transpose())
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: u32) {
        self.data[r * self.cols + c] = value % self.field.modulus();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            let acc = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                f.axpy(acc, self.get(r, k), other.row(k));
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `M x`.
    pub fn apply(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row-echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(found) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, found);
            let scale = f.inv(m.get(row, col));
            for c in 0..m.cols {
                let v = f.mul(m.get(row, c), scale);
                m.data[row * m.cols + c] = v;
            }
            let pivot_row = m.row(row).to_vec();
            for r in 0..m.rows {
                if r != row {
                    let factor = m.get(r, col);
                    if factor != 0 {
                        let target = &mut m.data[r * m.cols..(r + 1) * m.cols];
                        f.axpy(target, f.neg(factor), &pivot_row);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Inverse by Gauss-Jordan elimination on `[M | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.get(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1 % self.field.modulus();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::SingularMatrix);
        }
        let mut inv = Self::zeros(self.field, n, n);
        for r in 0..n {
            inv.data[r * n..(r + 1) * n].copy_from_slice(&red.row(r)[n..]);
        }
        Ok(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Incrementally maintained echelon basis, used to test linear independence
/// of a growing family of vectors.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: Fp,
    dim: usize,
    // (pivot column, row normalised so the pivot is 1)
    rows: Vec<(usize, Vec<u32>)>,
}

impl EchelonBasis {
    pub fn new(field: Fp, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut w = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = w[*pivot];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` if it is independent of the current span; returns whether it was.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let f = self.field;
        let mut w = self.reduce(v);
        let Some(pivot) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let scale = f.inv(w[pivot]);
        for x in w.iter_mut() {
            *x = f.mul(*x, scale);
        }
        // keep earlier rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                f.axpy(row, f.neg(c), &w);
            }
        }
        self.rows.push((pivot, w));
        true
    }
}

/// A linear subspace of `F_p^n`, stored as its unique reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Fp, ambient_dim: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let m = Matrix::from_rows(field, ambient_dim, vectors)?;
        let (red, pivots) = m.rref();
        let mut basis = Matrix::zeros(field, pivots.len(), ambient_dim);
        for r in 0..pivots.len() {
            basis.data[r * ambient_dim..(r + 1) * ambient_dim].copy_from_slice(red.row(r));
        }
        Ok(Self {
            ambient_dim,
            basis,
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Reduces `v` modulo the subspace. The result is zero on every pivot
    /// coordinate, so the non-pivot coordinates give quotient coordinates.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.basis.field();
        let mut w = v.to_vec();
        for (r, &pivot) in self.pivots.iter().enumerate() {
            let c = w[pivot];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), self.basis.row(r));
            }
        }
        w
    }

    /// Image under the linear map `v -> M v`.
    pub fn image(&self, m: &Matrix) -> Result<Subspace> {
        let vectors = (0..self.dim())
            .map(|r| m.apply(self.basis.row(r)))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(m.field(), m.rows(), &vectors)
    }
}
