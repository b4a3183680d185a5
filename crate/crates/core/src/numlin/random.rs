//! Seeded sampling of unit vectors and Haar unitaries.
//!
//! All randomness goes through [`SeededRng`] (ChaCha8), whose output stream is
//! value-stable across platforms, so a seed fully determines every report.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{inner, norm, CVector, Matrix};
use crate::scalar::Real;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian vector (i.i.d. N(0,1) real and imaginary parts).
pub fn gaussian_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector<T> {
    (0..n)
        .map(|_| Complex::new(T::standard_normal(rng), T::standard_normal(rng)))
        .collect()
}

/// Uniformly distributed point on the unit sphere of ℂⁿ.
pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector<T> {
    loop {
        let g = gaussian_vector::<T, R>(rng, n);
        let len = norm(&g);
        if len > T::epsilon() {
            return g.into_iter().map(|z| z / len).collect();
        }
    }
}

/// Haar-distributed n×n unitary.
///
/// A Ginibre matrix is orthonormalized column by column with re-orthogonalized
/// Gram–Schmidt. That is the QR factorization whose R has a positive real
/// diagonal, which is exactly the phase fixing that makes Q Haar distributed.
pub fn random_haar_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<T> {
    let mut q: Vec<CVector<T>> = Vec::with_capacity(n);
    while q.len() < n {
        let mut col = gaussian_vector::<T, R>(rng, n);
        for _ in 0..2 {
            for b in &q {
                let c = inner(b, &col);
                for (x, y) in col.iter_mut().zip(b) {
                    *x = *x - c * *y;
                }
            }
        }
        let len = norm(&col);
        if len > T::epsilon() {
            q.push(col.into_iter().map(|z| z / len).collect());
        }
    }
    Matrix::from_columns(&q).expect("n ≥ 1 columns of length n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a = random_unit_vector::<f64, _>(&mut seeded_rng(42), 4);
        let b = random_unit_vector::<f64, _>(&mut seeded_rng(42), 4);
        assert_eq!(a, b);
        let c = random_unit_vector::<f64, _>(&mut seeded_rng(43), 4);
        assert_ne!(a, c);
    }

    #[test]
    fn unit_norm() {
        let mut rng = seeded_rng(1);
        for n in 1..8 {
            let x = random_unit_vector::<f64, _>(&mut rng, n);
            assert!((norm(&x) - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn haar_unitaries_are_unitary() {
        let mut rng = seeded_rng(5);
        for draw in 0..100 {
            let n = 1 + draw % 8;
            let u = random_haar_unitary::<f64, _>(&mut rng, n);
            let gram = &u.adjoint() * &u;
            assert!(gram.max_abs_diff(&Matrix::identity(n)) <= 1e-12);
        }
    }

    #[test]
    fn first_coordinate_second_moment() {
        // E|⟨e₁|x⟩|² = 1/n for the uniform measure on the sphere.
        let mut rng = seeded_rng(2024);
        let draws = 100_000;
        let mean: f64 = (0..draws)
            .map(|_| random_unit_vector::<f64, _>(&mut rng, 4)[0].norm_sqr())
            .sum::<f64>()
            / draws as f64;
        assert!((mean - 0.25).abs() <= 0.01, "mean {mean}");
    }
}
