use crate::error::{Error, Result};
use crate::numlin::{hermitian_eig, norm, normalized, CVector};
use crate::posmap::LinearMap;
use crate::scalar::Real;

/// Unit vectors (x, y) with Φ(P_x)y = 0 up to `residual = ‖Φ(P_x)y‖`.
#[derive(Debug, Clone)]
pub struct KernelPair<T> {
    pub x: CVector<T>,
    pub y: CVector<T>,
    pub residual: T,
}

/// Orthonormal basis of ker Φ(P_x): eigenvectors of Φ(P_x) with eigenvalue at most
/// `tol_kernel·max(‖Φ(P_x)‖, 1)`.
///
/// `x` is normalized first. Any eigenvalue below `−tol_kernel·max(‖Φ(P_x)‖, 1)`
/// is reported as `NonpositiveState`, so this doubles as a positivity alarm.
pub fn kernel_of_state<T: Real>(map: &LinearMap<T>, x: &[num_complex::Complex<T>], tol_kernel: T) -> Result<Vec<CVector<T>>> {
    let x = normalized(x).ok_or_else(|| Error::InvalidArgument("zero state vector".into()))?;
    let image = map.apply_to_projector(&x)?;
    let eig = hermitian_eig(&image, T::default_tolerances().hermitian)?;
    let scale = eig
        .values
        .iter()
        .fold(T::one(), |m, v| m.max(v.abs()));
    let threshold = tol_kernel * scale;
    if let Some(&lowest) = eig.values.first() {
        if lowest < -threshold {
            return Err(Error::NonpositiveState { eigenvalue: lowest.as_f64() });
        }
    }
    Ok(eig
        .values
        .iter()
        .enumerate()
        .take_while(|(_, &v)| v <= threshold)
        .map(|(k, _)| eig.vector(k))
        .collect())
}

/// Kernel vectors of Φ(P_x) packaged as pairs, each residual recomputed by
/// direct application of Φ rather than taken from the eigen-solver.
pub fn kernel_pairs<T: Real>(map: &LinearMap<T>, x: &[num_complex::Complex<T>], tol_kernel: T) -> Result<Vec<KernelPair<T>>> {
    let x = normalized(x).ok_or_else(|| Error::InvalidArgument("zero state vector".into()))?;
    let image = map.apply_to_projector(&x)?;
    kernel_of_state(map, &x, tol_kernel)?
        .into_iter()
        .map(|y| {
            let residual = norm(&image.matvec(&y)?);
            Ok(KernelPair {
                x: x.clone(),
                y,
                residual,
            })
        })
        .collect()
}
