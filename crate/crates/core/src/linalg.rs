//! Exact integer linear algebra.
//!
//! Everything here works over `i64` storage with `i128` scratch space and
//! checked arithmetic. Ranks use fraction-free (Bareiss) elimination, lattice
//! kernels use unimodular row reduction, and the Smith form is computed by
//! the classical pivot-and-clear loop.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension);
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::Dimension);
            }
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension);
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc: i128 = 0;
                for l in 0..self.cols {
                    acc += i128::from(self[(i, l)]) * i128::from(rhs[(l, j)]);
                }
                out[(i, j)] = narrow(acc)?;
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, i64::checked_add)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, i64::checked_sub)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(i64, i64) -> Option<i64>) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension);
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| f(a, b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension);
        }
        (0..self.rows)
            .map(|i| {
                let acc: i128 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| i128::from(a) * i128::from(b))
                    .sum();
                narrow(acc)
            })
            .collect()
    }

    /// `self - I`; the matrix must be square.
    pub fn minus_identity(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension);
        }
        self.checked_sub(&Self::identity(self.rows))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| i128::from(self[(i, j)]) == -i128::from(self[(j, i)]))
            })
    }

    /// Restricts a bilinear form to the span of `basis`: entry `(i, j)` is
    /// `basis[i]^T * self * basis[j]`.
    pub fn restrict_form(&self, basis: &[Vec<i64>]) -> Result<Self> {
        let mut out = Self::zeros(basis.len(), basis.len());
        for (i, u) in basis.iter().enumerate() {
            let su = self.transpose().mul_vec(u)?;
            for (j, v) in basis.iter().enumerate() {
                out[(i, j)] = dot(&su, v)?;
            }
        }
        Ok(out)
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> Result<usize> {
        let mut a = self.widen();
        Ok(bareiss(&mut a, self.rows, self.cols)?.0)
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<i64> {
        if !self.is_square() {
            return Err(Error::Dimension);
        }
        if self.rows == 0 {
            return Ok(1);
        }
        let mut a = self.widen();
        let (rank, sign) = bareiss(&mut a, self.rows, self.cols)?;
        if rank < self.rows {
            return Ok(0);
        }
        let last = a[self.rows - 1][self.cols - 1];
        narrow(last * i128::from(sign))
    }

    /// A saturated integral basis of `{x in Z^n : self * x = 0}`, returned in
    /// row Hermite normal form so the basis is canonical.
    pub fn integer_kernel(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.cols;
        // Row-reduce the transpose while recording the unimodular transform;
        // rows of the transform that land on zero rows span the kernel.
        let mut b: Vec<Vec<i128>> = self.transpose().widen();
        let mut u: Vec<Vec<i128>> = Self::identity(n).widen();
        let rank = echelon_with_transform(&mut b, Some(&mut u), self.rows)?;
        let kernel: Vec<Vec<i128>> = u.into_iter().skip(rank).collect();
        let hnf = hermite_rows(kernel, n)?;
        hnf.into_iter()
            .map(|r| r.into_iter().map(narrow).collect())
            .collect()
    }

    /// Smith normal form diagonal.
    pub fn smith_form(&self) -> Result<SmithForm> {
        let mut a = self.widen();
        let (rows, cols) = (self.rows, self.cols);
        let mut t = 0;
        while t < rows.min(cols) {
            // Smallest nonzero entry in the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] = checked_axpy(a[i][j], -q, a[t][j])?;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = checked_axpy(row[j], -q, row[t])?;
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // The pivot must divide the remaining block.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            if let Some(i) = offender {
                for j in t..cols {
                    a[t][j] = a[t][j].checked_add(a[i][j]).ok_or(Error::Overflow)?;
                }
                continue;
            }
            t += 1;
        }
        let divisors = (0..t)
            .map(|i| narrow(a[i][i].abs()))
            .collect::<Result<Vec<_>>>()?;
        Ok(SmithForm {
            elementary_divisors: divisors,
            rows,
            cols,
        })
    }

    fn widen(&self) -> Vec<Vec<i128>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| i128::from(x)).collect())
            .collect()
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i)))
            .finish()
    }
}

/// Diagonal of the Smith normal form: the nonzero elementary divisors in
/// divisibility order. Their count is the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SmithForm {
    pub elementary_divisors: Vec<i64>,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.elementary_divisors.len()
    }

    /// Torsion orders of the cokernel (divisors greater than one).
    pub fn torsion(&self) -> Vec<i64> {
        self.elementary_divisors
            .iter()
            .copied()
            .filter(|&d| d > 1)
            .collect()
    }

    /// Rank of the free part of the cokernel `Z^rows / image`.
    pub fn cokernel_free_rank(&self) -> usize {
        self.rows - self.rank()
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// A vector is primitive when the gcd of its entries is 1.
pub fn is_primitive(v: &[i64]) -> bool {
    content(v) == 1
}

pub fn dot(u: &[i64], v: &[i64]) -> Result<i64> {
    if u.len() != v.len() {
        return Err(Error::Dimension);
    }
    narrow(
        u.iter()
            .zip(v)
            .map(|(&a, &b)| i128::from(a) * i128::from(b))
            .sum(),
    )
}

fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

fn checked_axpy(y: i128, a: i128, x: i128) -> Result<i128> {
    a.checked_mul(x)
        .and_then(|ax| y.checked_add(ax))
        .ok_or(Error::Overflow)
}

/// Extended gcd: returns `(g, x, y)` with `x*a + y*b = g >= 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Fraction-free elimination in place. Returns the rank and the sign of the
/// row permutation.
fn bareiss(a: &mut [Vec<i128>], rows: usize, cols: usize) -> Result<(usize, i64)> {
    let mut prev: i128 = 1;
    let mut r = 0;
    let mut sign = 1;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = a[r][c]
                    .checked_mul(a[i][j])
                    .zip(a[i][c].checked_mul(a[r][j]))
                    .and_then(|(x, y)| x.checked_sub(y))
                    .ok_or(Error::Overflow)?;
                a[i][j] = num / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    Ok((r, sign))
}

/// Unimodular row reduction to echelon form over the first `width` columns.
/// When `transform` is given, the same row operations are applied to it.
/// Returns the number of nonzero rows.
fn echelon_with_transform(
    b: &mut [Vec<i128>],
    mut transform: Option<&mut Vec<Vec<i128>>>,
    width: usize,
) -> Result<usize> {
    let n = b.len();
    let mut pivot = 0;
    for col in 0..width {
        if pivot == n {
            break;
        }
        for i in pivot + 1..n {
            if b[i][col] == 0 {
                continue;
            }
            let (x0, y0) = (b[pivot][col], b[i][col]);
            let (g, s, t) = ext_gcd(x0, y0);
            let (u, v) = (-y0 / g, x0 / g);
            combine_rows(b, pivot, i, [s, t, u, v])?;
            if let Some(tr) = transform.as_deref_mut() {
                combine_rows(tr, pivot, i, [s, t, u, v])?;
            }
        }
        if b[pivot][col] != 0 {
            pivot += 1;
        }
    }
    Ok(pivot)
}

/// Replaces rows `(p, q)` by `(s*p + t*q, u*p + v*q)`.
fn combine_rows(m: &mut [Vec<i128>], p: usize, q: usize, [s, t, u, v]: [i128; 4]) -> Result<()> {
    for j in 0..m[p].len() {
        let (x, y) = (m[p][j], m[q][j]);
        let nx = s
            .checked_mul(x)
            .zip(t.checked_mul(y))
            .and_then(|(a, b)| a.checked_add(b))
            .ok_or(Error::Overflow)?;
        let ny = u
            .checked_mul(x)
            .zip(v.checked_mul(y))
            .and_then(|(a, b)| a.checked_add(b))
            .ok_or(Error::Overflow)?;
        m[p][j] = nx;
        m[q][j] = ny;
    }
    Ok(())
}

/// Row Hermite normal form of the lattice spanned by `rows` (zero rows dropped).
fn hermite_rows(mut rows: Vec<Vec<i128>>, width: usize) -> Result<Vec<Vec<i128>>> {
    let rank = echelon_with_transform(&mut rows, None, width)?;
    rows.truncate(rank);
    let mut pivots = Vec::with_capacity(rank);
    for r in 0..rank {
        let c = rows[r].iter().position(|&x| x != 0).ok_or(Error::Dimension)?;
        if rows[r][c] < 0 {
            rows[r].iter_mut().for_each(|x| *x = -*x);
        }
        pivots.push(c);
    }
    for r in 0..rank {
        let c = pivots[r];
        let p = rows[r][c];
        for i in 0..r {
            let q = rows[i][c].div_euclid(p);
            if q != 0 {
                for j in 0..width {
                    rows[i][j] = checked_axpy(rows[i][j], -q, rows[r][j])?;
                }
            }
        }
    }
    Ok(rows)
}

/// Row Hermite normal form of the lattice spanned by the given vectors.
pub fn hermite_normal_form(vectors: &[Vec<i64>], width: usize) -> Result<Vec<Vec<i64>>> {
    let rows = vectors
        .iter()
        .map(|v| {
            if v.len() == width {
                Ok(v.iter().map(|&x| i128::from(x)).collect())
            } else {
                Err(Error::Dimension)
            }
        })
        .collect::<Result<Vec<Vec<i128>>>>()?;
    hermite_rows(rows, width)?
        .into_iter()
        .map(|r| r.into_iter().map(narrow).collect())
        .collect()
}
