//! Positive maps on Mₙ(ℂ) and numerical checks of the spanning and strong
//! spanning properties, irreducibility, and antisymmetric-unitary canonical forms.
//!
//! Everything is generic over the real scalar (`f32` or `f64`); the aliases
//! below fix it to `f64`.

pub mod antisym;
pub mod commutant;
pub mod error;
pub mod io;
pub mod numlin;
pub mod posmap;
pub mod scalar;
pub mod witness;

pub use error::{Error, Result};
pub use scalar::{Real, Tolerances};

pub type C64 = num_complex::Complex<f64>;
pub type CMatrix = numlin::Matrix<f64>;
pub type CMatrix32 = numlin::Matrix<f32>;
pub type MapRep = posmap::LinearMap<f64>;
pub type MapRep32 = posmap::LinearMap<f32>;
pub type AntiUnitary = antisym::AntisymmetricUnitary<f64>;
