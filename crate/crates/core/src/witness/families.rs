//! Explicit vector families x ⊗ x̄ ⊗ y used to certify the strong spanning
//! property by hand-picked points instead of random sampling.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::antisym::u0;
use crate::error::{Error, Result};
use crate::numlin::{conj, kron_vec, CVector};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReferenceFamily {
    /// Transposition on M₂, six pairs with y₆ ∝ e₁ − ie₂ (the kernel vector of x₆).
    TransposeSix,
    /// Same six pairs with y₆ = e₁ − e₂ as originally tabulated; that y₆ is not
    /// in ker τ(P_{x₆}).
    TransposeSixPrinted,
    /// Reduction map on M₂, six points with y = x.
    ReductionSix,
    /// Robertson map on M₄: thirty points, each with y = x and y = U₀x̄.
    RobertsonSixty,
}

impl ReferenceFamily {
    pub const ALL: [ReferenceFamily; 4] = [
        Self::TransposeSix,
        Self::TransposeSixPrinted,
        Self::ReductionSix,
        Self::RobertsonSixty,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::TransposeSix => "example1",
            Self::TransposeSixPrinted => "example1-printed",
            Self::ReductionSix => "example2",
            Self::RobertsonSixty => "prop3",
        }
    }

    /// Dimension n of the underlying algebra.
    pub fn n(self) -> usize {
        match self {
            Self::RobertsonSixty => 4,
            _ => 2,
        }
    }

    /// Vectors x ⊗ x̄ ⊗ y in ℂ^{n³}, unnormalized (integer/Gaussian-integer entries).
    pub fn vectors<T: Real>(self) -> Vec<CVector<T>> {
        self.pairs::<T>()
            .into_iter()
            .map(|(x, y)| kron_vec(&kron_vec(&x, &conj(&x)), &y))
            .collect()
    }

    /// The underlying (x, y) pairs.
    pub fn pairs<T: Real>(self) -> Vec<(CVector<T>, CVector<T>)> {
        match self {
            Self::TransposeSix | Self::TransposeSixPrinted => {
                let y6 = if self == Self::TransposeSix {
                    v2(1., 0., 0., -1.)
                } else {
                    v2(1., 0., -1., 0.)
                };
                vec![
                    (v2(1., 0., 0., 0.), v2(0., 0., 1., 0.)),
                    (v2(0., 0., 1., 0.), v2(1., 0., 0., 0.)),
                    (v2(1., 0., 1., 0.), v2(1., 0., -1., 0.)),
                    (v2(1., 0., -1., 0.), v2(1., 0., 1., 0.)),
                    (v2(1., 0., 0., 1.), v2(1., 0., 0., 1.)),
                    (v2(1., 0., 0., -1.), y6),
                ]
            }
            Self::ReductionSix => [
                v2(1., 0., 0., 0.),
                v2(0., 0., 1., 0.),
                v2(1., 0., 1., 0.),
                v2(1., 0., -1., 0.),
                v2(1., 0., 0., 1.),
                v2(1., 0., 0., -1.),
            ]
            .into_iter()
            .map(|x| (x.clone(), x))
            .collect(),
            Self::RobertsonSixty => {
                let u = u0::<T>(4).expect("even").into_matrix();
                robertson_points::<T>()
                    .into_iter()
                    .flat_map(|x| {
                        let ux = u.matvec(&conj(&x)).expect("length 4");
                        [(x.clone(), x.clone()), (x, ux)]
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for ReferenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReferenceFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Vectors of a family looked up by name ("example1", "example1-printed",
/// "example2", "prop3").
pub fn reference_family<T: Real>(name: &str) -> Result<Vec<CVector<T>>> {
    Ok(name.parse::<ReferenceFamily>()?.vectors())
}

fn v2<T: Real>(a_re: f64, a_im: f64, b_re: f64, b_im: f64) -> CVector<T> {
    vec![
        Complex::new(T::lit(a_re), T::lit(a_im)),
        Complex::new(T::lit(b_re), T::lit(b_im)),
    ]
}

/// The thirty base points in ℂ⁴ for the Robertson family.
pub fn robertson_points<T: Real>() -> Vec<CVector<T>> {
    let e = |k: usize| -> CVector<T> {
        let mut v = vec![Complex::new(T::zero(), T::zero()); 4];
        v[k] = Complex::new(T::one(), T::zero());
        v
    };
    let combo = |terms: &[(usize, f64, f64)]| -> CVector<T> {
        let mut v = vec![Complex::new(T::zero(), T::zero()); 4];
        for &(k, re, im) in terms {
            v[k] = v[k] + Complex::new(T::lit(re), T::lit(im));
        }
        v
    };
    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|k| ((k + 1)..4).map(move |l| (k, l)))
        .collect();
    // (1,2) and (3,4) in 1-based labels
    let skipped = |&(k, l): &(usize, usize)| (k, l) != (0, 1) && (k, l) != (2, 3);

    let mut points: Vec<CVector<T>> = (0..4).map(e).collect();
    points.extend(pairs.iter().map(|&(k, l)| combo(&[(k, 1., 0.), (l, 1., 0.)])));
    points.extend(pairs.iter().filter(|p| skipped(p)).map(|&(k, l)| combo(&[(k, 1., 0.), (l, -1., 0.)])));
    points.extend(pairs.iter().map(|&(k, l)| combo(&[(k, 1., 0.), (l, 0., 1.)])));
    points.extend(pairs.iter().filter(|p| skipped(p)).map(|&(k, l)| combo(&[(k, 1., 0.), (l, 0., -1.)])));
    points.extend([
        combo(&[(0, 1., 0.), (1, 1., 0.), (2, 1., 0.)]),
        combo(&[(0, 0., 1.), (1, 1., 0.), (2, 1., 0.)]),
        combo(&[(0, 1., 0.), (1, 0., 1.), (2, 1., 0.)]),
        combo(&[(1, 1., 0.), (2, 1., 0.), (3, 1., 0.)]),
        combo(&[(1, 1., 0.), (2, 0., 1.), (3, 1., 0.)]),
        combo(&[(1, 1., 0.), (2, 1., 0.), (3, 0., 1.)]),
    ]);
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::{family_rank, norm, Matrix};
    use crate::posmap::{robertson_map, transpose_map};

    #[test]
    fn sizes() {
        assert_eq!(robertson_points::<f64>().len(), 30);
        assert_eq!(reference_family::<f64>("prop3").unwrap().len(), 60);
        assert_eq!(reference_family::<f64>("prop3").unwrap()[0].len(), 64);
        assert_eq!(reference_family::<f64>("example2").unwrap().len(), 6);
        assert_eq!(reference_family::<f64>("example2").unwrap()[0].len(), 8);
        assert!(matches!(reference_family::<f64>("example3"), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn ranks() {
        for (name, want) in [("example1", 6), ("example2", 6), ("prop3", 60)] {
            let fam = reference_family::<f64>(name).unwrap();
            assert_eq!(family_rank(&fam, 1e-9).unwrap(), want, "{name}");
        }
    }

    #[test]
    fn corrected_transpose_pairs_are_kernel_pairs() {
        let tau = transpose_map::<f64>(2).unwrap();
        let kernel_residual = |x: &CVector<f64>, y: &CVector<f64>| {
            norm(&tau.apply(&Matrix::projector(x)).unwrap().matvec(y).unwrap())
        };
        for (x, y) in ReferenceFamily::TransposeSix.pairs::<f64>() {
            assert!(kernel_residual(&x, &y) < 1e-14);
        }
        let printed = ReferenceFamily::TransposeSixPrinted.pairs::<f64>();
        let (x6, y6) = &printed[5];
        assert!(kernel_residual(x6, y6) > 0.5);
    }

    #[test]
    fn robertson_pairs_are_kernel_pairs() {
        let phi = robertson_map::<f64>();
        for (x, y) in ReferenceFamily::RobertsonSixty.pairs::<f64>() {
            let img = phi.apply(&Matrix::projector(&x)).unwrap();
            assert!(norm(&img.matvec(&y).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn names_round_trip() {
        for f in ReferenceFamily::ALL {
            assert_eq!(f.name().parse::<ReferenceFamily>().unwrap(), f);
        }
    }
}
