//! Dense matrices over arbitrary-precision rationals.
//!
//! Everything in this crate that manipulates matrices goes through [`QMat`],
//! a row-major dense matrix of [`BigRational`] entries. Sizes are small
//! (2×2 up to 6×6), so plain Gaussian elimination over ℚ is exact and fast.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Shorthand: an integer as a [`BigRational`].
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand: the fraction `n/d` as a [`BigRational`]. Panics if `d == 0`.
pub fn ratq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand: an `i64` as a [`BigInt`].
pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// A dense matrix with `BigRational` entries.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    /// Builds a matrix from row-major data. Panics unless
    /// `data.len() == rows * cols`.
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "QMat::new: expected {}x{}={} entries, got {}",
            rows,
            cols,
            rows * cols,
            data.len()
        );
        QMat { rows, cols, data }
    }

    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat::new(rows, cols, vec![BigRational::zero(); rows * cols])
    }

    /// The `n × n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix by evaluating `f(row, col)` at every position.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMat::new(rows, cols, data)
    }

    /// Builds a matrix from rows of `i64` entries. Panics if the rows are
    /// ragged or empty.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        assert!(!rows.is_empty(), "QMat::from_i64: no rows");
        let cols = rows[0].len();
        assert!(cols > 0, "QMat::from_i64: empty rows");
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "QMat::from_i64: ragged rows");
            for &v in *r {
                data.push(rat(v));
            }
        }
        QMat::new(rows.len(), cols, data)
    }

    /// Diagonal matrix with the given `i64` diagonal.
    pub fn diag_i64(d: &[i64]) -> Self {
        let n = d.len();
        let mut m = QMat::zero(n, n);
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, rat(v));
        }
        m
    }

    /// Diagonal matrix with the given rational diagonal.
    pub fn diag(d: &[BigRational]) -> Self {
        let n = d.len();
        let mut m = QMat::zero(n, n);
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Whether the matrix is square.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at `(i, j)` (0-based).
    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        assert!(i < self.rows && j < self.cols, "QMat::at: index out of range");
        &self.data[i * self.cols + j]
    }

    /// Sets entry `(i, j)` (0-based).
    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        assert!(i < self.rows && j < self.cols, "QMat::set: index out of range");
        self.data[i * self.cols + j] = v;
    }

    /// The transpose.
    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Matrix product. Panics on a shape mismatch.
    pub fn matmul(&self, other: &QMat) -> QMat {
        assert_eq!(
            self.cols, other.rows,
            "QMat::matmul: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    /// Multiplies every entry by `s`.
    pub fn scale(&self, s: &BigRational) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * s)
    }

    /// Applies `f` entrywise.
    pub fn map(&self, mut f: impl FnMut(&BigRational) -> BigRational) -> QMat {
        QMat::from_fn(self.rows, self.cols, |i, j| f(self.at(i, j)))
    }

    /// Sum of the diagonal. Panics if not square.
    pub fn trace(&self) -> BigRational {
        assert!(self.is_square(), "QMat::trace: not square");
        let mut t = BigRational::zero();
        for i in 0..self.rows {
            t += self.at(i, i);
        }
        t
    }

    /// Whether every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integer())
    }

    /// Whether the matrix equals its transpose.
    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the matrix equals minus its transpose.
    pub fn is_skew_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.at(i, j) != -self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// The contiguous submatrix of shape `nr × nc` with top-left corner at
    /// `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> QMat {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "QMat::block: out of range");
        QMat::from_fn(nr, nc, |i, j| self.at(r0 + i, c0 + j).clone())
    }

    /// Assembles a square matrix `[[a, b], [c, d]]` from four equally sized
    /// square blocks.
    pub fn from_blocks_2x2(a: &QMat, b: &QMat, c: &QMat, d: &QMat) -> QMat {
        let n = a.rows();
        for m in [a, b, c, d] {
            assert!(m.rows() == n && m.cols() == n, "from_blocks_2x2: blocks must be equal square");
        }
        QMat::from_fn(2 * n, 2 * n, |i, j| {
            let (bi, ii) = (i / n, i % n);
            let (bj, jj) = (j / n, j % n);
            match (bi, bj) {
                (0, 0) => a.at(ii, jj).clone(),
                (0, 1) => b.at(ii, jj).clone(),
                (1, 0) => c.at(ii, jj).clone(),
                _ => d.at(ii, jj).clone(),
            }
        })
    }

    /// Determinant via fraction-free-ish Gaussian elimination over ℚ.
    /// Panics if not square.
    pub fn det(&self) -> BigRational {
        assert!(self.is_square(), "QMat::det: not square");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for k in 0..n {
            // Find a pivot in column k at or below row k.
            let mut pivot = None;
            for i in k..n {
                if !m.at(i, k).is_zero() {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(p) = pivot else {
                return BigRational::zero();
            };
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let pv = m.at(k, k).clone();
            det *= &pv;
            for i in (k + 1)..n {
                let factor = m.at(i, k) / &pv;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.at(i, j) - &factor * m.at(k, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// The inverse, or `None` if singular. Panics if not square.
    pub fn inverse(&self) -> Option<QMat> {
        assert!(self.is_square(), "QMat::inverse: not square");
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = QMat::identity(n);
        for k in 0..n {
            let mut pivot = None;
            for i in k..n {
                if !m.at(i, k).is_zero() {
                    pivot = Some(i);
                    break;
                }
            }
            let p = pivot?;
            if p != k {
                m.swap_rows(p, k);
                inv.swap_rows(p, k);
            }
            let pv = m.at(k, k).clone();
            for j in 0..n {
                let v = m.at(k, j) / &pv;
                m.set(k, j, v);
                let w = inv.at(k, j) / &pv;
                inv.set(k, j, w);
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = m.at(i, k).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = m.at(i, j) - &factor * m.at(k, j);
                    m.set(i, j, v);
                    let w = inv.at(i, j) - &factor * inv.at(k, j);
                    inv.set(i, j, w);
                }
            }
        }
        Some(inv)
    }

    /// A basis of the right kernel `{x : Mx = 0}`, each vector of length
    /// `cols`.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        // Reduced row echelon form, tracking pivot columns.
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            if r >= rows {
                break;
            }
            let mut pivot = None;
            for i in r..rows {
                if !m.at(i, c).is_zero() {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            m.swap_rows(p, r);
            let pv = m.at(r, c).clone();
            for j in 0..cols {
                let v = m.at(r, j) / &pv;
                m.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m.at(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let v = m.at(i, j) - &factor * m.at(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (pr, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(pr, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Signature `(positive, negative, zero)` of a symmetric matrix, computed
    /// by exact congruence diagonalization. Panics if not symmetric.
    pub fn signature(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "QMat::signature: matrix not symmetric");
        let n = self.rows;
        let mut m = self.clone();
        let mut k = 0usize;
        while k < n {
            if m.at(k, k).is_zero() {
                // Try to bring a nonzero diagonal entry to position k.
                let mut found = None;
                for i in (k + 1)..n {
                    if !m.at(i, i).is_zero() {
                        found = Some(i);
                        break;
                    }
                }
                if let Some(i) = found {
                    m.swap_rows(i, k);
                    m.swap_cols(i, k);
                } else {
                    // Diagonal of the trailing block is all zero; find any
                    // nonzero off-diagonal entry and symmetrize it onto the
                    // diagonal (row/col addition keeps congruence class).
                    let mut off = None;
                    'search: for i in k..n {
                        for j in (i + 1)..n {
                            if !m.at(i, j).is_zero() {
                                off = Some((i, j));
                                break 'search;
                            }
                        }
                    }
                    let Some((i, j)) = off else { break };
                    m.add_row(j, i);
                    m.add_col(j, i);
                    if i != k {
                        m.swap_rows(i, k);
                        m.swap_cols(i, k);
                    }
                }
            }
            if m.at(k, k).is_zero() {
                break;
            }
            let pv = m.at(k, k).clone();
            for i in (k + 1)..n {
                let factor = m.at(i, k) / &pv;
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = m.at(i, j) - &factor * m.at(k, j);
                    m.set(i, j, v);
                }
                for j in 0..n {
                    let v = m.at(j, i) - &factor * m.at(j, k);
                    m.set(j, i, v);
                }
            }
            k += 1;
        }
        let mut plus = 0;
        let mut minus = 0;
        for i in 0..n {
            let d = m.at(i, i);
            if d.is_positive() {
                plus += 1;
            } else if d.is_negative() {
                minus += 1;
            }
        }
        (plus, minus, n - plus - minus)
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Adds row `src` to row `dst` in place.
    fn add_row(&mut self, src: usize, dst: usize) {
        for j in 0..self.cols {
            let v = self.at(dst, j) + self.at(src, j);
            self.set(dst, j, v);
        }
    }

    /// Adds column `src` to column `dst` in place.
    fn add_col(&mut self, src: usize, dst: usize) {
        for i in 0..self.rows {
            let v = self.at(i, dst) + self.at(i, src);
            self.set(i, dst, v);
        }
    }

    /// Matrix–vector product `M v`.
    pub fn matvec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "QMat::matvec: length mismatch");
        let mut out = vec![BigRational::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = BigRational::zero();
            for j in 0..self.cols {
                acc += self.at(i, j) * &v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// `k`-th power for square matrices (`k >= 0`).
    pub fn pow(&self, k: u32) -> QMat {
        assert!(self.is_square(), "QMat::pow: not square");
        let mut out = QMat::identity(self.rows);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Mul for &QMat {
    type Output = QMat;
    fn mul(self, rhs: &QMat) -> QMat {
        self.matmul(rhs)
    }
}

impl Add for &QMat {
    type Output = QMat;
    fn add(self, rhs: &QMat) -> QMat {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "QMat add: shape mismatch");
        QMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + rhs.at(i, j))
    }
}

impl Sub for &QMat {
    type Output = QMat;
    fn sub(self, rhs: &QMat) -> QMat {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "QMat sub: shape mismatch");
        QMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - rhs.at(i, j))
    }
}

impl Neg for &QMat {
    type Output = QMat;
    fn neg(self) -> QMat {
        self.map(|v| -v.clone())
    }
}
