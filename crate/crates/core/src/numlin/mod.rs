//! Dense complex linear algebra with explicit tolerances.

mod eigen;
mod matrix;
pub mod random;
mod span;
mod svd;

pub use eigen::{hermitian_eig, HermitianEigen};
pub use matrix::{basis_vector, conj, inner, kron_vec, norm, normalized, CVector, Matrix};
pub use random::{random_haar_unitary, random_unit_vector, seeded_rng, SeededRng};
pub use span::SpanAccumulator;
pub use svd::{family_rank, nullspace, right_svd, spectral_norm, RightSvd};
