//! Scalar abstraction. Every routine in the crate is written against [`Real`],
//! with complex entries represented as `Complex<T>`.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// Real floating point type backing the complex arithmetic (f32 or f64).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + 'static
{
    /// Draw from N(0, 1).
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Tolerances appropriate for this precision.
    fn default_tolerances() -> Tolerances<Self>;

    /// Convert an `f64` literal. Panics only for values the type cannot hold.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }

    fn default_tolerances() -> Tolerances<Self> {
        Tolerances {
            rank: 1e-9,
            kernel: 1e-10,
            hermitian: 1e-12,
        }
    }
}

impl Real for f32 {
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        StandardNormal.sample(rng)
    }

    fn default_tolerances() -> Tolerances<Self> {
        Tolerances {
            rank: 1e-4,
            kernel: 1e-4,
            hermitian: 1e-5,
        }
    }
}

/// Thresholds used throughout the crate.
///
/// `rank` is relative to the largest singular value (or to the input norm for
/// incremental span updates), `kernel` is relative to `max(‖Φ(P_x)‖, 1)` and
/// `hermitian` bounds `‖M − M†‖_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances<T> {
    pub rank: T,
    pub kernel: T,
    pub hermitian: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        T::default_tolerances()
    }
}

impl<T: Real> Tolerances<T> {
    pub fn to_f64(&self) -> Tolerances<f64> {
        Tolerances {
            rank: self.rank.as_f64(),
            kernel: self.kernel.as_f64(),
            hermitian: self.hermitian.as_f64(),
        }
    }
}

#[inline]
pub fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

#[inline]
pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}
