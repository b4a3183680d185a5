use num_complex::Complex;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    /// Ascending.
    pub values: Vec<T>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: Matrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    pub fn vector(&self, k: usize) -> Vec<Complex<T>> {
        self.vectors.column(k)
    }
}

/// Unitary 2×2 rotation acting on coordinates (p, q) that annihilates the
/// (p, q) entry of a Hermitian pair `[[alpha, gamma], [conj(gamma), beta]]`.
///
/// The transform maps column p to `c·col_p − s·w̄·col_q` and column q to
/// `s·col_p + c·w̄·col_q` where `w = gamma / |gamma|`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Rotation<T> {
    pub c: T,
    pub s: T,
    pub w: Complex<T>,
}

impl<T: Real> Rotation<T> {
    pub(crate) fn annihilating(alpha: T, beta: T, gamma: Complex<T>) -> Self {
        let g = gamma.norm();
        let w = gamma / g;
        let zeta = (beta - alpha) / (g + g);
        let t = if zeta == T::zero() {
            T::one()
        } else {
            zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
        };
        let c = T::one() / (T::one() + t * t).sqrt();
        Self { c, s: t * c, w }
    }

    /// Apply to a pair of column entries (a_p, a_q).
    #[inline]
    pub(crate) fn apply(&self, a_p: Complex<T>, a_q: Complex<T>) -> (Complex<T>, Complex<T>) {
        let wq = self.w.conj() * a_q;
        (a_p * self.c - wq * self.s, a_p * self.s + wq * self.c)
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Fails with `NotHermitian` when `‖M − M†‖_max > hermitian_tol·max(1, ‖M‖_max)`.
pub fn hermitian_eig<T: Real>(m: &Matrix<T>, hermitian_tol: T) -> Result<HermitianEigen<T>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigen-decomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let dev = m.hermiticity_deviation();
    if dev > hermitian_tol * T::one().max(m.max_abs()) {
        return Err(Error::NotHermitian { deviation: dev.as_f64() });
    }

    let n = m.rows();
    // symmetrize so rounding in the input cannot leak in
    let mut a = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex::new(m[(i, i)].re, T::zero())
        } else {
            (m[(i, j)] + m[(j, i)].conj()) * T::lit(0.5)
        }
    });
    let mut v = Matrix::<T>::identity(n);

    let scale = a.frobenius_norm();
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<T>()
            .sqrt();
        if off <= eps * scale || scale == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let gamma = a[(p, q)];
                if gamma.norm() <= T::min_positive_value() {
                    continue;
                }
                let rot = Rotation::annihilating(a[(p, p)].re, a[(q, q)].re, gamma);
                // A ← A·Q
                for i in 0..n {
                    let (x, y) = rot.apply(a[(i, p)], a[(i, q)]);
                    a[(i, p)] = x;
                    a[(i, q)] = y;
                }
                // A ← Q†·A (conjugate of the column transform on rows)
                for j in 0..n {
                    let (x, y) = rot.apply(a[(p, j)].conj(), a[(q, j)].conj());
                    a[(p, j)] = x.conj();
                    a[(q, j)] = y.conj();
                }
                a[(p, q)] = Complex::new(T::zero(), T::zero());
                a[(q, p)] = Complex::new(T::zero(), T::zero());
                a[(p, p)].im = T::zero();
                a[(q, q)].im = T::zero();
                for i in 0..n {
                    let (x, y) = rot.apply(v[(i, p)], v[(i, q)]);
                    v[(i, p)] = x;
                    v[(i, q)] = y;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}
