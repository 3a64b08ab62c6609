//! Dense linear algebra over the prime field `F_p`.
//!
//! Entries are canonical residues in `0..p`. Sizes here are tiny (module
//! ranks rarely exceed a few dozen), so everything is straightforward
//! Gaussian elimination.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a nonzero mod p
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Matrix {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> Matrix {
        let mut m = Matrix::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().map(|&x| x % p));
        }
        Matrix { p, rows: r, cols: c, data }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u64) -> Matrix {
        let c = c % self.p;
        let data = self.data.iter().map(|&a| a * c % self.p).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % self.p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &x)| (acc + a * (x % self.p)) % self.p)
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form; returns `(rref, pivot_columns)`.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            for j in 0..m.cols {
                let (a, b) = (m.get(r, j), m.get(pr, j));
                m.set(r, j, b);
                m.set(pr, j, a);
            }
            let inv = fp_inv(m.get(r, c), m.p);
            for j in 0..m.cols {
                m.set(r, j, m.get(r, j) * inv % m.p);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + (m.p - f) * m.get(r, j)) % m.p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : Mv = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let (rref, pivots) = self.rref();
        let mut out = Vec::new();
        let mut piv_iter = pivots.iter().copied().enumerate();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, col) in &mut piv_iter {
            pivot_of_col[col] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[free] = 1;
            for (col, slot) in pivot_of_col.iter().enumerate() {
                if let Some(row) = slot {
                    v[col] = (self.p - rref.get(*row, free)) % self.p;
                }
            }
            out.push(v);
        }
        out
    }

    /// A particular solution of `Mx = b` (free variables set to zero), or
    /// `None` when inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(self.rows, b.len());
        let mut aug = Matrix::zero(self.p, self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi % self.p);
        }
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (row, col) in pivots.iter().enumerate() {
            x[*col] = rref.get(row, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Ok(Matrix::zero(self.p, 0, 0));
        }
        let mut aug = Matrix::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::domain("matrix is singular"));
        }
        let mut out = Matrix::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, rref.get(i, n + j));
            }
        }
        Ok(out)
    }
}

/// Incremental row space: insert vectors one at a time, keeping a reduced
/// echelon basis. Used for span closures and membership tests.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u64,
    dim: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(p: u64, dim: usize) -> Echelon {
        Echelon { p, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Echelon basis rows, ordered by pivot column.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = v.iter().map(|&x| x % self.p).collect();
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = (*x + (self.p - c) * r) % self.p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Add `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let red = self.reduce(v);
        let Some(piv) = red.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = fp_inv(red[piv], self.p);
        let norm: Vec<u64> = red.iter().map(|&x| x * inv % self.p).collect();
        // back-substitute into existing rows to keep the basis reduced
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (x, &n) in row.iter_mut().zip(&norm) {
                    *x = (*x + (self.p - c) * n) % self.p;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.rows.insert(at, norm);
        self.pivots.insert(at, piv);
        true
    }
}
