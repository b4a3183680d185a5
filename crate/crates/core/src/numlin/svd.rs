//! One-sided (Hestenes) Jacobi SVD and the rank/nullspace queries built on it.

use super::eigen::Rotation;
use super::matrix::{inner, CVector, Matrix};
use crate::error::{Error, Result};
use crate::scalar::{cone, czero, Real};

const MAX_SWEEPS: usize = 80;

/// Singular values with the matching right singular vectors.
#[derive(Debug, Clone)]
pub struct RightSvd<T> {
    /// Descending.
    pub singular_values: Vec<T>,
    /// Columns are right singular vectors, in the order of `singular_values`.
    pub v: Matrix<T>,
}

impl<T: Real> RightSvd<T> {
    pub fn max_singular_value(&self) -> T {
        self.singular_values.first().copied().unwrap_or_else(T::zero)
    }

    /// Count of singular values strictly above `tol·σ_max`.
    pub fn rank(&self, tol: T) -> usize {
        let cutoff = tol * self.max_singular_value();
        if self.max_singular_value() == T::zero() {
            return 0;
        }
        self.singular_values.iter().filter(|&&s| s > cutoff).count()
    }
}

/// Column-oriented Jacobi SVD of an m×n matrix. Returns all n singular values
/// (including the structural zeros when m < n).
pub fn right_svd<T: Real>(a: &Matrix<T>) -> RightSvd<T> {
    svd_of_columns(a.columns())
}

pub(crate) fn svd_of_columns<T: Real>(mut cols: Vec<CVector<T>>) -> RightSvd<T> {
    let n = cols.len();
    let mut v: Vec<CVector<T>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { cone() } else { czero() }).collect())
        .collect();
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: T = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: T = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = inner(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let rot = Rotation::annihilating(alpha, beta, gamma);
                let (lo, hi) = cols.split_at_mut(q);
                for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (nx, ny) = rot.apply(*x, *y);
                    *x = nx;
                    *y = ny;
                }
                let (lo, hi) = v.split_at_mut(q);
                for (x, y) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                    let (nx, ny) = rot.apply(*x, *y);
                    *x = nx;
                    *y = ny;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<T> = cols
        .iter()
        .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).expect("finite singular values"));
    RightSvd {
        singular_values: order.iter().map(|&k| norms[k]).collect(),
        v: Matrix::from_fn(n, n, |i, j| v[order[j]][i]),
    }
}

/// Orthonormal basis of `{v : ‖Mv‖ ≤ tol·‖M‖}`, i.e. right singular vectors whose
/// singular value is at most `tol·σ_max`. The zero matrix yields the full space.
pub fn nullspace<T: Real>(m: &Matrix<T>, tol: T) -> Vec<CVector<T>> {
    let svd = right_svd(m);
    let cutoff = tol * svd.max_singular_value();
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| svd.max_singular_value() == T::zero() || s <= cutoff)
        .map(|(k, _)| svd.v.column(k))
        .collect()
}

/// Numerical rank of a family of equal-length vectors: singular values of the
/// stacked matrix above `tol_rank·σ_max`.
pub fn family_rank<T: Real>(vectors: &[CVector<T>], tol_rank: T) -> Result<usize> {
    let len = vectors.first().ok_or(Error::EmptyFamily)?.len();
    if vectors.iter().any(|v| v.len() != len) {
        return Err(Error::DimensionMismatch("family vectors of unequal length".into()));
    }
    Ok(svd_of_columns(vectors.to_vec()).rank(tol_rank))
}

/// Spectral norm ‖M‖₂.
pub fn spectral_norm<T: Real>(m: &Matrix<T>) -> T {
    right_svd(m).max_singular_value()
}
