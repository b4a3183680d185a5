use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cone, czero, Real};

/// Column vector in ℂⁿ.
pub type CVector<T> = Vec<Complex<T>>;

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = cone();
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix must be non-empty, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(index) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            entries.iter().map(|&x| Complex::new(T::lit(x), T::zero())).collect(),
        )
    }

    pub fn from_columns(columns: &[CVector<T>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if cols == 0 || rows == 0 {
            return Err(Error::EmptyFamily);
        }
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        Ok(Self::from_fn(rows, cols, |i, j| columns[j][i]))
    }

    pub fn diagonal(entries: &[Complex<T>]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    /// Matrix unit e_ij (1 at (i, j), 0 elsewhere).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = cone();
        m
    }

    /// |x⟩⟨y|
    pub fn outer(x: &[Complex<T>], y: &[Complex<T>]) -> Self {
        Self::from_fn(x.len(), y.len(), |i, j| x[i] * y[j].conj())
    }

    /// P_x = |x⟩⟨x|
    pub fn projector(x: &[Complex<T>]) -> Self {
        Self::outer(x, x)
    }

    /// Inverse of [`Matrix::vec`] for a square `n×n` matrix.
    pub fn unvec(n: usize, v: &[Complex<T>]) -> Result<Self> {
        if v.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} is not a vectorized {n}x{n} matrix",
                v.len()
            )));
        }
        Ok(Self {
            rows: n,
            cols: n,
            data: v.to_vec(),
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    /// Row-major vectorization, vec(A)_{i·n + j} = A_ij; vec(|x⟩⟨x|) = x ⊗ x̄.
    pub fn vec(&self) -> CVector<T> {
        self.data.clone()
    }

    pub fn into_vec(self) -> CVector<T> {
        self.data
    }

    pub fn column(&self, j: usize) -> CVector<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<CVector<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    /// ‖A‖_max, the largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// ‖A − B‖_max
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    /// ‖M − M†‖_max
    pub fn hermiticity_deviation(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let mut dev = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_real(&self, tol: T) -> bool {
        self.data.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o = *o + a * *b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[Complex<T>]) -> Result<CVector<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(czero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect())
    }

    /// Kronecker product A ⊗ B.
    pub fn kron(&self, other: &Self) -> Self {
        let (r, c) = (other.rows, other.cols);
        Self::from_fn(self.rows * r, self.cols * c, |i, j| {
            self[(i / r, j / c)] * other[(i % r, j % c)]
        })
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(z.re.as_f64(), z.im.as_f64()))
                .collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl<T: Real> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

/// Panics on shape mismatch; use [`Matrix::matmul`] for a checked product.
impl<T: Real> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.matmul(rhs).expect("shape mismatch in matrix product")
    }
}

/// ⟨a|b⟩, antilinear in the first argument.
pub fn inner<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(czero(), |acc, (x, y)| acc + x.conj() * *y)
}

pub fn norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// Returns `None` for the zero vector.
pub fn normalized<T: Real>(v: &[Complex<T>]) -> Option<CVector<T>> {
    let n = norm(v);
    if n == T::zero() || !n.is_finite() {
        return None;
    }
    Some(v.iter().map(|z| *z / n).collect())
}

pub fn conj<T: Real>(v: &[Complex<T>]) -> CVector<T> {
    v.iter().map(|z| z.conj()).collect()
}

/// a ⊗ b
pub fn kron_vec<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> CVector<T> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(*x * *y);
        }
    }
    out
}

/// Standard basis vector e_i in ℂⁿ (0-based).
pub fn basis_vector<T: Real>(n: usize, i: usize) -> CVector<T> {
    let mut v = vec![czero(); n];
    v[i] = cone();
    v
}
