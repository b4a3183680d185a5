use num_complex::Complex;

use super::matrix::{inner, norm, CVector};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Incrementally grown orthonormal basis of the span of a vector stream.
#[derive(Debug, Clone)]
pub struct SpanAccumulator<T> {
    ambient_dim: usize,
    basis: Vec<CVector<T>>,
    tol_rank: T,
}

impl<T: Real> SpanAccumulator<T> {
    pub fn new(ambient_dim: usize, tol_rank: T) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            tol_rank,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn tol_rank(&self) -> T {
        self.tol_rank
    }

    pub fn basis(&self) -> &[CVector<T>] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// Component of `v` orthogonal to the current span (Gram–Schmidt applied twice).
    pub fn residual(&self, v: &[Complex<T>]) -> Result<CVector<T>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} fed to span in dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        let mut r = v.to_vec();
        for _ in 0..2 {
            for b in &self.basis {
                let c = inner(b, &r);
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri = *ri - c * *bi;
                }
            }
        }
        Ok(r)
    }

    /// Appends the normalized residual of `v` when it exceeds `tol_rank·‖v‖`.
    /// Returns whether the dimension grew.
    pub fn try_add(&mut self, v: &[Complex<T>]) -> Result<bool> {
        let r = self.residual(v)?;
        let v_norm = norm(v);
        if self.is_full() || v_norm == T::zero() {
            return Ok(false);
        }
        let r_norm = norm(&r);
        if r_norm > self.tol_rank * v_norm {
            self.basis.push(r.into_iter().map(|z| z / r_norm).collect());
            Ok(true)
        } else {
            Ok(false)
        }
    }

    /// Feeds a whole family; returns how many vectors were added.
    pub fn extend<'a, I>(&mut self, vectors: I) -> Result<usize>
    where
        I: IntoIterator<Item = &'a CVector<T>>,
    {
        let mut added = 0;
        for v in vectors {
            if self.try_add(v)? {
                added += 1;
            }
        }
        Ok(added)
    }
}
