//! Commutant of the range of a map, {Z : [Φ(X), Z] = 0 for all X}.
//!
//! With row-major vectorization vec(AZB) = (A ⊗ Bᵗ)·vec(Z), so each range
//! element Y contributes the block Y ⊗ I − I ⊗ Yᵗ. Stacking the blocks for a
//! basis of Mₙ gives an n⁴×n² system whose nullspace is the commutant.

use crate::error::{Error, Result};
use crate::numlin::{inner, norm, right_svd, CVector, Matrix};
use crate::posmap::LinearMap;
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct CommutantResult<T> {
    pub dim: usize,
    /// Orthonormal vec(Z) solutions.
    pub basis: Vec<CVector<T>>,
    /// vec(I) lies in the span of `basis` within the solver tolerance.
    pub contains_identity: bool,
    /// Largest ‖[Y, Z]‖_max over the range basis Y and solutions Z.
    pub max_residual: T,
}

impl<T: Real> CommutantResult<T> {
    pub fn basis_matrices(&self, n: usize) -> Result<Vec<Matrix<T>>> {
        self.basis.iter().map(|v| Matrix::unvec(n, v)).collect()
    }
}

fn commutator_system<T: Real>(range: &[Matrix<T>], n: usize) -> Matrix<T> {
    let eye = Matrix::<T>::identity(n);
    let blocks: Vec<Matrix<T>> = range
        .iter()
        .map(|y| &y.kron(&eye) - &eye.kron(&y.transpose()))
        .collect();
    let n2 = n * n;
    Matrix::from_fn(n2 * blocks.len(), n2, |r, c| blocks[r / n2][(r % n2, c)])
}

/// Commutant of {Φ(B) : B ∈ basis}; `basis` should span Mₙ for the result to be
/// the commutant of the whole range.
pub fn commutant_with_basis<T: Real>(map: &LinearMap<T>, basis: &[Matrix<T>], tol: T) -> Result<CommutantResult<T>> {
    let n = map.n();
    if basis.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let range = basis.iter().map(|b| map.apply(b)).collect::<Result<Vec<_>>>()?;
    // Threshold relative to the range itself, so that a commutator system that
    // vanishes up to rounding still yields the full space.
    let scale = range.iter().fold(T::zero(), |m, y| m.max(y.frobenius_norm()));
    let svd = right_svd(&commutator_system(&range, n));
    let cutoff = tol * svd.max_singular_value().max(scale);
    let solutions: Vec<CVector<T>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(k, _)| svd.v.column(k))
        .collect();

    let mut max_residual = T::zero();
    for z in &solutions {
        let z = Matrix::unvec(n, z)?;
        for y in &range {
            max_residual = max_residual.max((&(y * &z) - &(&z * y)).max_abs());
        }
    }

    let id = Matrix::<T>::identity(n).scale_real(T::one() / T::from_usize(n).expect("n fits").sqrt()).into_vec();
    let captured = solutions
        .iter()
        .map(|b| inner(b, &id).norm_sqr())
        .sum::<T>();
    let missing = (T::one() - captured).max(T::zero()).sqrt();

    Ok(CommutantResult {
        dim: solutions.len(),
        basis: solutions,
        contains_identity: missing <= tol.sqrt(),
        max_residual,
    })
}

/// Commutant of the range of Φ, probed on the matrix units E_ij.
pub fn commutant_of_range<T: Real>(map: &LinearMap<T>, tol: T) -> Result<CommutantResult<T>> {
    let n = map.n();
    let units: Vec<Matrix<T>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| Matrix::unit(n, i, j))
        .collect();
    commutant_with_basis(map, &units, tol)
}

/// Whether the commutant of the range is the scalars.
///
/// Fails with `InconsistentResult` when a one-dimensional commutant is not
/// spanned by the identity.
pub fn is_irreducible<T: Real>(map: &LinearMap<T>, tol: T) -> Result<bool> {
    let result = commutant_of_range(map, tol)?;
    if result.dim == 1 {
        let id = Matrix::<T>::identity(map.n()).into_vec();
        let overlap = inner(&result.basis[0], &id).norm() / norm(&id);
        if !result.contains_identity || (T::one() - overlap).abs() > tol.sqrt() {
            return Err(Error::InconsistentResult(format!(
                "one-dimensional commutant not spanned by the identity (overlap {})",
                overlap
            )));
        }
    }
    Ok(result.dim == 1)
}
