//! Antisymmetric unitaries (Uᵗ = −U, U†U = I) and their real canonical form
//! U = R·diag{e^{iα_k}·J}·Rᵗ with J = [[0, 1], [−1, 0]] and R real orthogonal.
//!
//! The decomposition goes through the eigenvectors of U. If Uv = λv then
//! U v̄ = −λ v̄, so the real and imaginary parts of v span a real plane on which
//! U acts as e^{iα}J with e^{iα} = −iλ. The two Hermitian parts of U commute,
//! which lets the eigenvectors be found with the Hermitian solver alone.

use std::cmp::Ordering;

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numlin::{hermitian_eig, inner, random_haar_unitary, CVector, Matrix};
use crate::scalar::{cone, Real};

/// n×n matrix certified antisymmetric and unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymmetricUnitary<T> {
    matrix: Matrix<T>,
}

impl<T: Real> AntisymmetricUnitary<T> {
    /// Certifies `matrix` with the default tolerance for `T` (1e−12 in f64).
    pub fn new(matrix: Matrix<T>) -> Result<Self> {
        Self::with_tolerance(matrix, T::default_tolerances().hermitian)
    }

    pub fn with_tolerance(matrix: Matrix<T>, tol: T) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "antisymmetric unitary must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rows() % 2 == 1 {
            return Err(Error::OddDimension(matrix.rows()));
        }
        let antisymmetry = antisymmetry_residual(&matrix);
        let unitarity = unitarity_residual(&matrix);
        if antisymmetry > tol || unitarity > tol {
            return Err(Error::NotAntisymmetricUnitary {
                antisymmetry: antisymmetry.as_f64(),
                unitarity: unitarity.as_f64(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }
}

/// ‖Uᵗ + U‖_max
pub fn antisymmetry_residual<T: Real>(u: &Matrix<T>) -> T {
    (&u.transpose() + u).max_abs()
}

/// ‖U†U − I‖_max
pub fn unitarity_residual<T: Real>(u: &Matrix<T>) -> T {
    match u.adjoint().matmul(u) {
        Ok(g) if g.is_square() => g.max_abs_diff(&Matrix::identity(g.rows())),
        _ => T::infinity(),
    }
}

/// J = iσ_y = [[0, 1], [−1, 0]]
fn j_block<T: Real>() -> Matrix<T> {
    Matrix::from_real(2, 2, &[0., 1., -1., 0.]).expect("2x2")
}

/// U₀ = J ⊕ J ⊕ … ⊕ J (n/2 blocks).
pub fn u0<T: Real>(n: usize) -> Result<AntisymmetricUnitary<T>> {
    if n % 2 == 1 || n == 0 {
        return Err(Error::OddDimension(n));
    }
    let mut m = Matrix::zeros(n, n);
    for k in 0..n / 2 {
        m[(2 * k, 2 * k + 1)] = cone();
        m[(2 * k + 1, 2 * k)] = -cone::<T>();
    }
    Ok(AntisymmetricUnitary { matrix: m })
}

/// U = V·U₀·Vᵗ for a unitary V.
pub fn from_conjugator<T: Real>(v: &Matrix<T>) -> Result<AntisymmetricUnitary<T>> {
    let n = v.rows();
    if !v.is_square() {
        return Err(Error::DimensionMismatch("conjugator must be square".into()));
    }
    let base = u0::<T>(n)?;
    AntisymmetricUnitary::new(&(v * base.matrix()) * &v.transpose())
}

/// V·U₀·Vᵗ with V Haar distributed.
pub fn random_antisymmetric_unitary<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
) -> Result<AntisymmetricUnitary<T>> {
    if n % 2 == 1 || n == 0 {
        return Err(Error::OddDimension(n));
    }
    from_conjugator(&random_haar_unitary::<T, R>(rng, n))
}

/// U = R·diag{e^{iα_k}·J}·Rᵗ.
#[derive(Debug, Clone)]
pub struct CanonicalForm<T> {
    rotation: Matrix<T>,
    phases: Vec<T>,
}

impl<T: Real> CanonicalForm<T> {
    /// Real orthogonal R (stored with zero imaginary parts).
    pub fn rotation(&self) -> &Matrix<T> {
        &self.rotation
    }

    /// α_k in [0, 2π), ascending.
    pub fn phases(&self) -> &[T] {
        &self.phases
    }

    pub fn reconstruct(&self) -> Matrix<T> {
        let n = self.rotation.rows();
        let mut core = Matrix::zeros(n, n);
        let j = j_block::<T>();
        for (k, &alpha) in self.phases.iter().enumerate() {
            let e = Complex::from_polar(T::one(), alpha);
            for a in 0..2 {
                for b in 0..2 {
                    core[(2 * k + a, 2 * k + b)] = j[(a, b)] * e;
                }
            }
        }
        &(&self.rotation * &core) * &self.rotation.transpose()
    }

    /// Unitary V = R·diag{e^{iα_k/2}·I₂} with U = V·U₀·Vᵗ.
    pub fn conjugator(&self) -> Matrix<T> {
        let half = T::lit(0.5);
        let d: Vec<Complex<T>> = self
            .phases
            .iter()
            .flat_map(|&a| {
                let e = Complex::from_polar(T::one(), a * half);
                [e, e]
            })
            .collect();
        &self.rotation * &Matrix::diagonal(&d)
    }

    /// ‖RᵗR − I‖_max
    pub fn orthogonality_residual(&self) -> T {
        let n = self.rotation.rows();
        (&self.rotation.transpose() * &self.rotation).max_abs_diff(&Matrix::identity(n))
    }

    /// Largest imaginary part of any entry of R.
    pub fn realness_residual(&self) -> T {
        self.rotation
            .data()
            .iter()
            .fold(T::zero(), |m, z| m.max(z.im.abs()))
    }
}

/// Eigenpairs of a unitary, from simultaneous diagonalization of its commuting
/// Hermitian parts (U + U†)/2 and (U − U†)/2i.
struct UnitaryEigen<T> {
    values: Vec<Complex<T>>,
    vectors: Vec<CVector<T>>,
}

fn unitary_eigen<T: Real>(u: &Matrix<T>) -> Result<UnitaryEigen<T>> {
    let n = u.rows();
    let u_adj = u.adjoint();
    let half = T::lit(0.5);
    let h_re = (u + &u_adj).scale_real(half);
    let h_im = (u - &u_adj).scale(Complex::new(T::zero(), -half));
    let herm_tol = T::epsilon().sqrt();

    let first = hermitian_eig(&h_re, herm_tol)?;
    let cluster_tol = T::epsilon().sqrt();
    let mut vectors: Vec<CVector<T>> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && first.values[end] - first.values[end - 1] <= cluster_tol {
            end += 1;
        }
        let block: Vec<CVector<T>> = (start..end).map(|k| first.vector(k)).collect();
        if block.len() == 1 {
            vectors.extend(block);
        } else {
            // Q†·H_im·Q restricted to the cluster
            let q = Matrix::from_columns(&block)?;
            let small = &(&q.adjoint() * &h_im) * &q;
            let sub = hermitian_eig(&small, herm_tol)?;
            for k in 0..block.len() {
                vectors.push(q.matvec(&sub.vector(k))?);
            }
        }
        start = end;
    }
    let values = vectors
        .iter()
        .map(|v| u.matvec(v).map(|uv| inner(v, &uv)))
        .collect::<Result<Vec<_>>>()?;
    Ok(UnitaryEigen { values, vectors })
}

/// Index of the still-unused eigenvalue closest to −λ.
fn closest_partner<T: Real>(values: &[Complex<T>], used: &[bool], j: usize) -> Option<(usize, T)> {
    let target = -values[j];
    (0..values.len())
        .filter(|&k| k != j && !used[k])
        .map(|k| (k, (values[k] - target).norm()))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal))
}

/// Splits the spectrum into (λ, −λ) pairs. Returns (kept index, partner index, residual)
/// where the kept member has e^{iα} = −iλ with α in [0, π).
fn pair_spectrum<T: Real>(values: &[Complex<T>], tol: T) -> Result<Vec<(usize, usize, T)>> {
    let n = values.len();
    let mut used = vec![false; n];
    let mut pairs = Vec::with_capacity(n / 2);
    let boundary = T::epsilon().sqrt();
    let mut worst = T::zero();
    for j in 0..n {
        if used[j] {
            continue;
        }
        let Some((k, residual)) = closest_partner(values, &used, j) else {
            return Err(Error::PairingFailed { residual: f64::INFINITY });
        };
        worst = worst.max(residual);
        used[j] = true;
        used[k] = true;
        let a = (values[j] * Complex::new(T::zero(), -T::one())).arg();
        let keep_j = a > -boundary && a <= T::PI() - boundary;
        pairs.push(if keep_j { (j, k, residual) } else { (k, j, residual) });
    }
    if worst > tol {
        return Err(Error::PairingFailed { residual: worst.as_f64() });
    }
    Ok(pairs)
}

/// Eigenphases of U grouped into (λ, −λ) pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePair<T> {
    /// arg λ in [0, 2π).
    pub phase: T,
    /// arg of the partner eigenvalue in [0, 2π), ≈ phase ± π.
    pub partner: T,
    /// |λ + λ_partner|
    pub residual: T,
}

fn phase_in_turn<T: Real>(z: Complex<T>) -> T {
    let a = z.arg();
    if a < T::zero() {
        a + T::TAU()
    } else {
        a
    }
}

/// Pairs the eigenvalues of U as (λ, −λ); fails when the pairing residual exceeds 1e−8.
pub fn eigenphase_pairs<T: Real>(u: &AntisymmetricUnitary<T>) -> Result<Vec<PhasePair<T>>> {
    let eig = unitary_eigen(u.matrix())?;
    let pairs = pair_spectrum(&eig.values, T::lit(1e-8))?;
    let mut out: Vec<PhasePair<T>> = pairs
        .into_iter()
        .map(|(j, k, residual)| PhasePair {
            phase: phase_in_turn(eig.values[j]),
            partner: phase_in_turn(eig.values[k]),
            residual,
        })
        .collect();
    out.sort_by(|a, b| a.phase.partial_cmp(&b.phase).unwrap_or(Ordering::Equal));
    Ok(out)
}

/// Computes R and α_k with U = R·diag{e^{iα_k}·J}·Rᵗ.
///
/// Fails with `DecompositionFailed` when `‖U − R·D·Rᵗ‖_max > tol`.
pub fn canonical_decompose<T: Real>(u: &AntisymmetricUnitary<T>, tol: T) -> Result<CanonicalForm<T>> {
    let m = u.matrix();
    let n = u.n();
    let eig = unitary_eigen(m)?;
    let pairs = pair_spectrum(&eig.values, T::epsilon().sqrt())
        .map_err(|e| match e {
            Error::PairingFailed { residual } => Error::DecompositionFailed { residual },
            other => other,
        })?;

    let sqrt2 = T::lit(2.0).sqrt();
    let mut planes: Vec<(CVector<T>, CVector<T>)> = Vec::with_capacity(n / 2);
    for (j, _, _) in pairs {
        let v = fix_phase(&eig.vectors[j]);
        let x = v.iter().map(|z| Complex::new(z.re * sqrt2, T::zero())).collect();
        let y = v.iter().map(|z| Complex::new(z.im * sqrt2, T::zero())).collect();
        planes.push((x, y));
    }

    let columns: Vec<CVector<T>> = planes
        .iter()
        .flat_map(|(x, y)| [x.clone(), y.clone()])
        .collect();
    let r = Matrix::from_columns(&columns)?;
    let w = &(&r.transpose() * m) * &r;
    let snap = T::lit(8.0) * T::epsilon();
    let phases: Vec<T> = (0..n / 2)
        .map(|k| {
            let a = w[(2 * k, 2 * k + 1)].arg();
            if a < T::zero() {
                if a > -snap {
                    T::zero()
                } else {
                    a + T::TAU()
                }
            } else {
                a
            }
        })
        .collect();

    let mut order: Vec<usize> = (0..n / 2).collect();
    order.sort_by(|&a, &b| phases[a].partial_cmp(&phases[b]).unwrap_or(Ordering::Equal));
    let sorted_columns: Vec<CVector<T>> = order
        .iter()
        .flat_map(|&k| [columns[2 * k].clone(), columns[2 * k + 1].clone()])
        .collect();
    let form = CanonicalForm {
        rotation: Matrix::from_columns(&sorted_columns)?,
        phases: order.iter().map(|&k| phases[k]).collect(),
    };

    let residual = form.reconstruct().max_abs_diff(m);
    if !(residual <= tol) {
        return Err(Error::DecompositionFailed { residual: residual.as_f64() });
    }
    Ok(form)
}

/// Rotates v so its largest-modulus entry (first one, on ties) is real positive.
fn fix_phase<T: Real>(v: &[Complex<T>]) -> CVector<T> {
    let max = v.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    let pivot = v
        .iter()
        .position(|z| z.norm() >= max * (T::one() - T::lit(1e-9)))
        .unwrap_or(0);
    let p = v[pivot];
    if p.norm() == T::zero() {
        return v.to_vec();
    }
    let rot = p.conj() / p.norm();
    v.iter().map(|z| *z * rot).collect()
}
