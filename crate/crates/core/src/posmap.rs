//! Linear maps on Mₙ(ℂ) stored as n²×n² superoperators, plus the concrete maps
//! this toolkit studies: transposition, reduction, Robertson and Breuer–Hall.
//!
//! Vectorization is row-major throughout: `vec(A)[i·n + j] = A[i][j]`, so
//! `vec(|x⟩⟨x|) = x ⊗ x̄` and the superoperator `S` satisfies
//! `vec(Φ(X)) = S · vec(X)`.

use num_complex::Complex;
use rand::Rng;

use crate::antisym::{u0, AntisymmetricUnitary};
use crate::error::{Error, Result};
use crate::numlin::{inner, random_unit_vector, seeded_rng, CVector, Matrix};
use crate::scalar::{czero, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap<T> {
    n: usize,
    superop: Matrix<T>,
    name: String,
}

impl<T: Real> LinearMap<T> {
    pub fn from_superop(name: impl Into<String>, superop: Matrix<T>) -> Result<Self> {
        let n = square_root_dim(superop.rows())?;
        if !superop.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "superoperator must be square, got {}x{}",
                superop.rows(),
                superop.cols()
            )));
        }
        Ok(Self {
            n,
            superop,
            name: name.into(),
        })
    }

    /// Tabulates `f` on the matrix units.
    pub fn from_fn(name: impl Into<String>, n: usize, f: impl Fn(&Matrix<T>) -> Matrix<T>) -> Self {
        let mut superop = Matrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let image = f(&Matrix::unit(n, i, j));
                assert_eq!((image.rows(), image.cols()), (n, n), "map must be Mₙ → Mₙ");
                let col = i * n + j;
                for (row, z) in image.data().iter().enumerate() {
                    superop[(row, col)] = *z;
                }
            }
        }
        Self {
            n,
            superop,
            name: name.into(),
        }
    }

    /// Inverse of [`LinearMap::choi`].
    pub fn from_choi(name: impl Into<String>, choi: &Matrix<T>) -> Result<Self> {
        let n = square_root_dim(choi.rows())?;
        if !choi.is_square() {
            return Err(Error::DimensionMismatch("Choi matrix must be square".into()));
        }
        let superop = Matrix::from_fn(n * n, n * n, |r, c| {
            let (a, b) = (r / n, r % n);
            let (i, j) = (c / n, c % n);
            choi[(i * n + a, j * n + b)]
        });
        Ok(Self {
            n,
            superop,
            name: name.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn superop(&self) -> &Matrix<T> {
        &self.superop
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn apply(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        if (x.rows(), x.cols()) != (self.n, self.n) {
            return Err(Error::DimensionMismatch(format!(
                "map on M_{} applied to a {}x{} matrix",
                self.n,
                x.rows(),
                x.cols()
            )));
        }
        Matrix::unvec(self.n, &self.superop.matvec(x.data())?)
    }

    /// Φ(|x⟩⟨x|)
    pub fn apply_to_projector(&self, x: &[Complex<T>]) -> Result<Matrix<T>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "state of length {} for map on M_{}",
                x.len(),
                self.n
            )));
        }
        self.apply(&Matrix::projector(x))
    }

    /// C = Σ_ij e_ij ⊗ Φ(e_ij)
    pub fn choi(&self) -> Matrix<T> {
        let n = self.n;
        Matrix::from_fn(n * n, n * n, |r, c| {
            let (i, a) = (r / n, r % n);
            let (j, b) = (c / n, c % n);
            self.superop[(a * n + b, i * n + j)]
        })
    }

    /// X ↦ W·Φ(W†XW)·W†
    pub fn conjugated(&self, w: &Matrix<T>) -> Result<Self> {
        if (w.rows(), w.cols()) != (self.n, self.n) {
            return Err(Error::DimensionMismatch("conjugating matrix has wrong shape".into()));
        }
        let w_adj = w.adjoint();
        let inner_map = self.clone();
        Ok(Self::from_fn(format!("{}∘Ad", self.name), self.n, move |x| {
            let pulled = &(&w_adj * x) * w;
            let image = inner_map.apply(&pulled).expect("shape checked");
            &(w * &image) * &w_adj
        }))
    }

    /// max ‖Φ(I) − I‖_max
    pub fn unitality_deviation(&self) -> T {
        let id = Matrix::identity(self.n);
        self.apply(&id).expect("square").max_abs_diff(&id)
    }
}

fn square_root_dim(len: usize) -> Result<usize> {
    let n = (len as f64).sqrt().round() as usize;
    if n == 0 || n * n != len {
        return Err(Error::DimensionMismatch(format!(
            "{len} is not n² for an integer n"
        )));
    }
    Ok(n)
}

/// Evaluates a map given through its Choi matrix by partial contraction:
/// Φ(X)_ab = Σ_ij X_ij C_(i,a),(j,b).
pub fn apply_choi<T: Real>(choi: &Matrix<T>, x: &Matrix<T>) -> Result<Matrix<T>> {
    let n = x.rows();
    if !x.is_square() || (choi.rows(), choi.cols()) != (n * n, n * n) {
        return Err(Error::DimensionMismatch("Choi matrix and argument disagree".into()));
    }
    Ok(Matrix::from_fn(n, n, |a, b| {
        let mut acc = czero();
        for i in 0..n {
            for j in 0..n {
                acc = acc + x[(i, j)] * choi[(i * n + a, j * n + b)];
            }
        }
        acc
    }))
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::BadDimension(n));
    }
    Ok(())
}

pub fn identity_map<T: Real>(n: usize) -> LinearMap<T> {
    LinearMap::from_fn("identity", n, |x| x.clone())
}

/// X ↦ Tr(X)·I/n. Its range is the scalars.
pub fn completely_depolarizing<T: Real>(n: usize) -> LinearMap<T> {
    let inv = T::one() / T::from_usize(n).expect("small n");
    LinearMap::from_fn("depolarizing", n, move |x| Matrix::identity(n).scale(x.trace() * inv))
}

/// τ(X) = Xᵗ
pub fn transpose_map<T: Real>(n: usize) -> Result<LinearMap<T>> {
    check_dim(n)?;
    Ok(LinearMap::from_fn("transpose", n, Matrix::transpose))
}

/// Rₙ(X) = I·Tr X − X
pub fn reduction_map<T: Real>(n: usize) -> Result<LinearMap<T>> {
    check_dim(n)?;
    Ok(LinearMap::from_fn("reduction", n, move |x| {
        &Matrix::identity(n).scale(x.trace()) - x
    }))
}

/// Φ₀(X) = ½(I₄ Tr X − X − U₀XᵗU₀†) on M₄.
pub fn robertson_map<T: Real>() -> LinearMap<T> {
    let u: Matrix<T> = u0(4).expect("4 is even").into_matrix();
    let u_adj = u.adjoint();
    let half = T::lit(0.5);
    LinearMap::from_fn("robertson", 4, move |x| {
        let flipped = &(&u * &x.transpose()) * &u_adj;
        (&(&Matrix::identity(4).scale(x.trace()) - x) - &flipped).scale_real(half)
    })
}

/// Φ₀ evaluated blockwise. Writing X = Σ e_ij ⊗ X_ij with 2×2 blocks,
///
/// ```text
/// Φ₀(X) = ½ [ I₂ Tr X₂₂             −(X₁₂ + R₂(X₂₁)) ]
///           [ −(X₂₁ + R₂(X₁₂))       I₂ Tr X₁₁       ]
/// ```
pub fn robertson_block_form<T: Real>(x: &Matrix<T>) -> Result<Matrix<T>> {
    if (x.rows(), x.cols()) != (4, 4) {
        return Err(Error::BadDimension(x.rows()));
    }
    let block = |bi: usize, bj: usize| Matrix::from_fn(2, 2, |a, b| x[(2 * bi + a, 2 * bj + b)]);
    let r2 = |m: &Matrix<T>| &Matrix::identity(2).scale(m.trace()) - m;
    let (x11, x12, x21, x22) = (block(0, 0), block(0, 1), block(1, 0), block(1, 1));

    let top_left = Matrix::identity(2).scale(x22.trace());
    let bottom_right = Matrix::identity(2).scale(x11.trace());
    let top_right = (&x12 + &r2(&x21)).scale_real(-T::one());
    let bottom_left = (&x21 + &r2(&x12)).scale_real(-T::one());

    let half = T::lit(0.5);
    Ok(Matrix::from_fn(4, 4, |i, j| {
        let (a, b) = (i % 2, j % 2);
        let z = match (i / 2, j / 2) {
            (0, 0) => top_left[(a, b)],
            (0, 1) => top_right[(a, b)],
            (1, 0) => bottom_left[(a, b)],
            _ => bottom_right[(a, b)],
        };
        z * half
    }))
}

/// Φ_U(X) = (n−2)⁻¹(I Tr X − X − UXᵗU†) for an antisymmetric unitary U, n even, n ≥ 4.
pub fn breuer_hall<T: Real>(u: &AntisymmetricUnitary<T>) -> Result<LinearMap<T>> {
    let n = u.n();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if n < 4 {
        return Err(Error::DimensionTooSmall(n));
    }
    let um = u.matrix().clone();
    let u_adj = um.adjoint();
    let norm = T::one() / T::from_usize(n - 2).expect("small n");
    Ok(LinearMap::from_fn("breuer-hall", n, move |x| {
        let flipped = &(&um * &x.transpose()) * &u_adj;
        (&(&Matrix::identity(n).scale(x.trace()) - x) - &flipped).scale_real(norm)
    }))
}

/// Lowest sampled value of ⟨y|Φ(P_x)|y⟩ and where it was attained.
#[derive(Debug, Clone)]
pub struct PositivitySample<T> {
    pub min_value: T,
    pub x: CVector<T>,
    pub y: CVector<T>,
    pub trials: usize,
    /// 1-based index of the first trial that went below `−tol`, if any.
    pub first_violation: Option<usize>,
}

/// Monte-Carlo necessary check of positivity over uniformly random unit pairs.
/// A minimum below `−tol` certifies that the map is not positive.
pub fn positivity_sample_test<T: Real>(
    map: &LinearMap<T>,
    trials: usize,
    seed: u64,
    tol: T,
) -> Result<PositivitySample<T>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let mut rng = seeded_rng(seed);
    positivity_sample_with(map, trials, &mut rng, tol)
}

pub fn positivity_sample_with<T: Real, R: Rng + ?Sized>(
    map: &LinearMap<T>,
    trials: usize,
    rng: &mut R,
    tol: T,
) -> Result<PositivitySample<T>> {
    let n = map.n();
    let mut best: Option<PositivitySample<T>> = None;
    let mut first_violation = None;
    for trial in 1..=trials {
        let x = random_unit_vector::<T, R>(rng, n);
        let y = random_unit_vector::<T, R>(rng, n);
        let image = map.apply_to_projector(&x)?;
        let value = inner(&y, &image.matvec(&y)?).re;
        if value < -tol && first_violation.is_none() {
            first_violation = Some(trial);
        }
        if best.as_ref().map_or(true, |b| value < b.min_value) {
            best = Some(PositivitySample {
                min_value: value,
                x,
                y,
                trials,
                first_violation: None,
            });
        }
    }
    let mut best = best.expect("trials ≥ 1");
    best.first_violation = first_violation;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antisym::random_antisymmetric_unitary;
    use crate::numlin::{hermitian_eig, kron_vec, norm, random_haar_unitary};
    use crate::scalar::cplx;

    fn random_matrix(rng: &mut crate::numlin::SeededRng, n: usize) -> Matrix<f64> {
        let v = crate::numlin::random::gaussian_vector::<f64, _>(rng, n * n);
        Matrix::unvec(n, &v).unwrap()
    }

    #[test]
    fn transpose_on_matrix_units() {
        let tau = transpose_map::<f64>(2).unwrap();
        assert_eq!(tau.apply(&Matrix::unit(2, 0, 1)).unwrap(), Matrix::unit(2, 1, 0));
        let x = vec![cplx(1., 0.), cplx(1., 0.)];
        let p = Matrix::projector(&x);
        assert_eq!(tau.apply(&p).unwrap(), p);
        assert_eq!(transpose_map::<f64>(1), Err(Error::BadDimension(1)));
    }

    #[test]
    fn transpose_kernel_condition() {
        // τ(P_x)y = 0 iff Σ x_i y_i = 0
        let tau = transpose_map::<f64>(2).unwrap();
        let x = vec![cplx(1., 0.), cplx(0., 1.)];
        let img = tau.apply_to_projector(&x).unwrap();
        let in_kernel = vec![cplx(0., 1.), cplx(-1., 0.)];
        assert!(norm(&img.matvec(&in_kernel).unwrap()) < 1e-15);
        let not_in_kernel = vec![cplx(1., 0.), cplx(0., -1.)];
        assert!(norm(&img.matvec(&not_in_kernel).unwrap()) > 0.5);
    }

    #[test]
    fn reduction_values() {
        let r2 = reduction_map::<f64>(2).unwrap();
        assert_eq!(r2.apply(&Matrix::identity(2)).unwrap(), Matrix::identity(2));
        let r3 = reduction_map::<f64>(3).unwrap();
        assert_eq!(
            r3.apply(&Matrix::identity(3)).unwrap(),
            Matrix::identity(3).scale_real(2.0)
        );
        // R₂(P_x)y = 0 iff y ∝ x
        let x = vec![cplx(1., 0.), cplx(0., -1.)];
        let img = r2.apply_to_projector(&x).unwrap();
        assert!(norm(&img.matvec(&x).unwrap()) < 1e-15);
        let other = vec![cplx(1., 0.), cplx(0., 1.)];
        assert!(norm(&img.matvec(&other).unwrap()) > 0.5);
    }

    #[test]
    fn robertson_unital_and_on_e1() {
        let phi = robertson_map::<f64>();
        assert_eq!(phi.apply(&Matrix::identity(4)).unwrap(), Matrix::identity(4));
        let e1 = crate::numlin::basis_vector::<f64>(4, 0);
        let img = phi.apply_to_projector(&e1).unwrap();
        let want = Matrix::diagonal(&[cplx(0., 0.), cplx(0., 0.), cplx(0.5, 0.), cplx(0.5, 0.)]);
        assert_eq!(img, want);
    }

    #[test]
    fn robertson_projector_identity() {
        let phi = robertson_map::<f64>();
        let u: Matrix<f64> = u0(4).unwrap().into_matrix();
        let mut rng = seeded_rng(8);
        for _ in 0..100 {
            let x = random_unit_vector::<f64, _>(&mut rng, 4);
            let ux = u.matvec(&crate::numlin::conj(&x)).unwrap();
            let want = (&(&Matrix::identity(4) - &Matrix::projector(&x)) - &Matrix::projector(&ux))
                .scale_real(0.5);
            assert!(phi.apply_to_projector(&x).unwrap().max_abs_diff(&want) <= 1e-12);
        }
    }

    #[test]
    fn block_form_matches_definition() {
        let phi = robertson_map::<f64>();
        assert!(robertson_block_form(&Matrix::<f64>::identity(4))
            .unwrap()
            .max_abs_diff(&Matrix::identity(4))
            < 1e-15);
        let e11 = Matrix::<f64>::unit(4, 0, 0);
        assert!(robertson_block_form(&e11).unwrap().max_abs_diff(&phi.apply(&e11).unwrap()) < 1e-15);
        let mut rng = seeded_rng(9);
        for _ in 0..1000 {
            let x = random_matrix(&mut rng, 4);
            let dev = robertson_block_form(&x).unwrap().max_abs_diff(&phi.apply(&x).unwrap());
            assert!(dev <= 1e-12);
        }
        assert!(robertson_block_form(&Matrix::<f64>::identity(3)).is_err());
    }

    #[test]
    fn breuer_hall_reproduces_robertson() {
        let bh = breuer_hall(&u0::<f64>(4).unwrap()).unwrap();
        assert!(bh.superop().max_abs_diff(robertson_map::<f64>().superop()) <= 1e-14);
        assert_eq!(breuer_hall(&u0::<f64>(2).unwrap()), Err(Error::DimensionTooSmall(2)));
    }

    #[test]
    fn breuer_hall_unital_and_two_dim_kernel() {
        let mut rng = seeded_rng(10);
        for n in [4, 6, 8] {
            let u = random_antisymmetric_unitary::<f64, _>(&mut rng, n).unwrap();
            let phi = breuer_hall(&u).unwrap();
            assert!(phi.unitality_deviation() <= 1e-12);
            let inv = 1.0 / (n as f64 - 2.0);
            for _ in 0..100 {
                let x = random_unit_vector::<f64, _>(&mut rng, n);
                let eig = hermitian_eig(&phi.apply_to_projector(&x).unwrap(), 1e-12).unwrap();
                assert!(eig.values[0].abs() < 1e-12 && eig.values[1].abs() < 1e-12);
                assert!(eig.values[2..].iter().all(|v| (v - inv).abs() < 1e-12));
            }
        }
    }

    #[test]
    fn hermiticity_preserved_by_constructors() {
        let mut rng = seeded_rng(12);
        let u6 = random_antisymmetric_unitary::<f64, _>(&mut rng, 6).unwrap();
        let maps = vec![
            transpose_map::<f64>(3).unwrap(),
            reduction_map(3).unwrap(),
            robertson_map(),
            breuer_hall(&u6).unwrap(),
        ];
        for phi in &maps {
            let n = phi.n();
            for _ in 0..100 {
                let a = random_matrix(&mut rng, n);
                let h = &a + &a.adjoint();
                assert!(phi.apply(&h).unwrap().hermiticity_deviation() <= 1e-12, "{}", phi.name());
                let lhs = phi.apply(&a.adjoint()).unwrap();
                let rhs = phi.apply(&a).unwrap().adjoint();
                assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
            }
        }
    }

    #[test]
    fn breuer_hall_preserves_trace() {
        let mut rng = seeded_rng(13);
        let u = random_antisymmetric_unitary::<f64, _>(&mut rng, 6).unwrap();
        let phi = breuer_hall(&u).unwrap();
        for _ in 0..20 {
            let x = random_matrix(&mut rng, 6);
            assert!((phi.apply(&x).unwrap().trace() - x.trace()).norm() <= 1e-12);
        }
    }

    #[test]
    fn choi_examples() {
        let id = identity_map::<f64>(2);
        let omega = vec![cplx(1., 0.), cplx(0., 0.), cplx(0., 0.), cplx(1., 0.)];
        assert_eq!(id.choi(), Matrix::outer(&omega, &omega));

        // Choi of the transposition is the swap: |ab⟩ ↦ |ba⟩.
        let swap = Matrix::<f64>::from_fn(4, 4, |r, c| {
            let (a, b) = (c / 2, c % 2);
            if r == b * 2 + a { cplx(1., 0.) } else { cplx(0., 0.) }
        });
        assert_eq!(transpose_map::<f64>(2).unwrap().choi(), swap);

        let choi = robertson_map::<f64>().choi();
        assert!(choi.hermiticity_deviation() < 1e-15);
        let eig = hermitian_eig(&choi, 1e-12).unwrap();
        assert!(eig.values[0] < -0.1, "Robertson map is not completely positive");
    }

    #[test]
    fn choi_contraction_reproduces_superop() {
        let mut rng = seeded_rng(14);
        let u = random_antisymmetric_unitary::<f64, _>(&mut rng, 4).unwrap();
        let phi = breuer_hall(&u).unwrap();
        let choi = phi.choi();
        let back = LinearMap::from_choi("back", &choi).unwrap();
        assert_eq!(back.superop(), phi.superop());
        for _ in 0..100 {
            let x = random_matrix(&mut rng, 4);
            assert!(apply_choi(&choi, &x).unwrap().max_abs_diff(&phi.apply(&x).unwrap()) <= 1e-12);
        }
    }

    #[test]
    fn transpose_superop_is_permutation() {
        let s = transpose_map::<f64>(2).unwrap();
        let s = s.superop();
        for r in 0..4 {
            let ones = (0..4).filter(|&c| s[(r, c)] == cplx(1., 0.)).count();
            let zeros = (0..4).filter(|&c| s[(r, c)] == cplx(0., 0.)).count();
            assert_eq!((ones, zeros), (1, 3));
        }
    }

    #[test]
    fn positivity_sampling() {
        let id = identity_map::<f64>(3);
        let s = positivity_sample_test(&id, 1000, 0, 1e-10).unwrap();
        assert!(s.min_value >= -1e-14);
        assert!(s.first_violation.is_none());

        let neg = LinearMap::<f64>::from_fn("negation", 3, |x| x.scale_real(-1.0));
        let s = positivity_sample_test(&neg, 10, 0, 1e-10).unwrap();
        assert!(s.min_value < 0.0);
        assert_eq!(s.first_violation, Some(1));

        assert!(positivity_sample_test(&id, 0, 0, 1e-10).is_err());
    }

    #[test]
    fn conjugated_map_is_unitarily_equivalent() {
        let mut rng = seeded_rng(15);
        let phi = robertson_map::<f64>();
        let w = random_haar_unitary::<f64, _>(&mut rng, 4);
        let psi = phi.conjugated(&w).unwrap();
        let x = random_matrix(&mut rng, 4);
        let want = &(&w * &phi.apply(&(&(&w.adjoint() * &x) * &w)).unwrap()) * &w.adjoint();
        assert!(psi.apply(&x).unwrap().max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn vec_convention() {
        let x = vec![cplx(0.6, 0.), cplx(0., 0.8)];
        let p = Matrix::<f64>::projector(&x);
        assert_eq!(p.vec(), kron_vec(&x, &crate::numlin::conj(&x)));
    }
}
