use std::fmt;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::dims::{m_target, n_target};
use super::kernel::kernel_of_state;
use crate::antisym::{from_conjugator, u0};
use crate::error::{Error, Result};
use crate::numlin::{kron_vec, normalized, random_haar_unitary, random_unit_vector, seeded_rng, CVector, Matrix, SpanAccumulator};
use crate::posmap::{breuer_hall, LinearMap};
use crate::scalar::{Real, Tolerances};

/// Consecutive non-contributing samples after which a span counts as saturated.
pub const DEFAULT_STOP_AFTER: usize = 64;

/// Which generator family is spanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpanKind {
    /// x ⊗ y with Φ(P_x)y = 0, in ℂⁿ ⊗ ℂⁿ.
    M,
    /// x ⊗ x̄ ⊗ y with Φ(P_x)y = 0, in ℂⁿ ⊗ ℂⁿ ⊗ ℂⁿ.
    N,
}

impl SpanKind {
    pub fn ambient_dim(self, n: usize) -> usize {
        match self {
            SpanKind::M => n * n,
            SpanKind::N => n * n * n,
        }
    }

    pub fn target_dim(self, n: usize) -> usize {
        match self {
            SpanKind::M => m_target(n),
            SpanKind::N => n_target(n),
        }
    }

    fn generator<T: Real>(self, x: &[Complex<T>], y: &[Complex<T>]) -> CVector<T> {
        match self {
            SpanKind::M => kron_vec(x, y),
            SpanKind::N => kron_vec(&Matrix::projector(x).into_vec(), y),
        }
    }
}

impl fmt::Display for SpanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpanKind::M => "M",
            SpanKind::N => "N",
        })
    }
}

impl std::str::FromStr for SpanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "M" | "m" => Ok(SpanKind::M),
            "N" | "n" => Ok(SpanKind::N),
            other => Err(Error::InvalidArgument(format!("span kind must be M or N, got {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EstimatorConfig<T> {
    /// Sample budget; `None` means 10·n³.
    pub budget: Option<usize>,
    pub seed: u64,
    pub tolerances: Tolerances<T>,
    pub stop_after: usize,
}

impl<T: Real> Default for EstimatorConfig<T> {
    fn default() -> Self {
        Self {
            budget: None,
            seed: 0,
            tolerances: T::default_tolerances(),
            stop_after: DEFAULT_STOP_AFTER,
        }
    }
}

impl<T: Real> EstimatorConfig<T> {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn effective_budget(&self, n: usize) -> usize {
        self.budget.unwrap_or(10 * n * n * n)
    }
}

/// Outcome of one span-saturation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanReport {
    pub map_name: String,
    pub kind: SpanKind,
    pub n: usize,
    pub target_dim: usize,
    pub ambient_dim: usize,
    pub achieved_dim: usize,
    pub samples_used: usize,
    /// The stop rule fired: either the span filled the ambient space or
    /// `stop_after` consecutive samples added nothing.
    pub saturated: bool,
    pub seed: u64,
    pub budget: usize,
    pub stop_after: usize,
    pub tolerances: Tolerances<f64>,
}

impl SpanReport {
    pub fn reaches_target(&self) -> bool {
        self.achieved_dim == self.target_dim
    }
}

/// Report together with the accumulated orthonormal basis.
#[derive(Debug, Clone)]
pub struct SpanEstimate<T> {
    pub report: SpanReport,
    pub span: SpanAccumulator<T>,
}

/// e_k, then e_k ± e_l and e_k ± i·e_l for k < l, all normalized.
pub fn structured_grid<T: Real>(n: usize) -> Vec<CVector<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    let mut grid = Vec::with_capacity(n + 2 * n * n);
    for k in 0..n {
        let mut v = vec![zero; n];
        v[k] = one;
        grid.push(v);
    }
    for k in 0..n {
        for l in (k + 1)..n {
            for c in [one, -one, i, -i] {
                let mut v = vec![zero; n];
                v[k] = one;
                v[l] = c;
                grid.push(normalized(&v).expect("nonzero"));
            }
        }
    }
    grid
}

/// Structured grid first, then Haar-random unit vectors from `rng`.
struct Samples<'a, T, R: ?Sized> {
    grid: std::vec::IntoIter<CVector<T>>,
    rng: &'a mut R,
    n: usize,
}

impl<T: Real, R: Rng + ?Sized> Iterator for Samples<'_, T, R> {
    type Item = CVector<T>;

    fn next(&mut self) -> Option<CVector<T>> {
        Some(match self.grid.next() {
            Some(x) => x,
            None => random_unit_vector(&mut *self.rng, self.n),
        })
    }
}

/// Runs the saturation loop and keeps the basis for further probing.
pub fn estimate_span<T: Real>(map: &LinearMap<T>, kind: SpanKind, config: &EstimatorConfig<T>) -> Result<SpanEstimate<T>> {
    let n = map.n();
    let budget = config.effective_budget(n);
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    if config.stop_after == 0 {
        return Err(Error::InvalidArgument("stop_after must be at least 1".into()));
    }
    let tol = &config.tolerances;
    let mut span = SpanAccumulator::new(kind.ambient_dim(n), tol.rank);
    let mut rng = seeded_rng(config.seed);
    let samples = Samples {
        grid: structured_grid::<T>(n).into_iter(),
        rng: &mut rng,
        n,
    };

    let mut used = 0;
    let mut misses = 0;
    let mut saturated = false;
    for x in samples.take(budget) {
        used += 1;
        let mut grew = false;
        for y in kernel_of_state(map, &x, tol.kernel)? {
            grew |= span.try_add(&kind.generator(&x, &y))?;
        }
        misses = if grew { 0 } else { misses + 1 };
        if span.is_full() || misses >= config.stop_after {
            saturated = true;
            break;
        }
    }

    let report = SpanReport {
        map_name: map.name().to_string(),
        kind,
        n,
        target_dim: kind.target_dim(n),
        ambient_dim: span.ambient_dim(),
        achieved_dim: span.dim(),
        samples_used: used,
        saturated,
        seed: config.seed,
        budget,
        stop_after: config.stop_after,
        tolerances: tol.to_f64(),
    };
    Ok(SpanEstimate { report, span })
}

/// dim span{x ⊗ y : Φ(P_x)y = 0}.
pub fn estimate_m_dim<T: Real>(map: &LinearMap<T>, config: &EstimatorConfig<T>) -> Result<SpanReport> {
    estimate_span(map, SpanKind::M, config).map(|e| e.report)
}

/// dim span{x ⊗ x̄ ⊗ y : Φ(P_x)y = 0}.
pub fn estimate_n_dim<T: Real>(map: &LinearMap<T>, config: &EstimatorConfig<T>) -> Result<SpanReport> {
    estimate_span(map, SpanKind::N, config).map(|e| e.report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpanVerdict {
    Holds,
    /// Saturated below (or above) the target.
    Fails,
    /// Budget ran out while the span was still growing.
    Inconclusive,
}

impl SpanVerdict {
    pub fn from_report(report: &SpanReport) -> Self {
        match (report.saturated, report.reaches_target()) {
            (true, true) => SpanVerdict::Holds,
            (true, false) => SpanVerdict::Fails,
            (false, _) => SpanVerdict::Inconclusive,
        }
    }

    pub fn holds(self) -> bool {
        self == SpanVerdict::Holds
    }
}

/// Spanning property: M-span reaches n².
pub fn spanning_check<T: Real>(map: &LinearMap<T>, config: &EstimatorConfig<T>) -> Result<(SpanVerdict, SpanReport)> {
    let report = estimate_m_dim(map, config)?;
    Ok((SpanVerdict::from_report(&report), report))
}

/// Strong spanning property: N-span reaches (n²−1)·n.
pub fn strong_spanning_check<T: Real>(map: &LinearMap<T>, config: &EstimatorConfig<T>) -> Result<(SpanVerdict, SpanReport)> {
    let report = estimate_n_dim(map, config)?;
    Ok((SpanVerdict::from_report(&report), report))
}

/// N-span dimensions of Φ_{U₀} and Φ_{VU₀Vᵗ}, in that order.
pub fn covariance_dims_with<T: Real>(v: &Matrix<T>, config: &EstimatorConfig<T>) -> Result<(SpanReport, SpanReport)> {
    let n = v.rows();
    let base = breuer_hall(&u0::<T>(n)?)?;
    let moved = breuer_hall(&from_conjugator(v)?)?;
    Ok((estimate_n_dim(&base, config)?, estimate_n_dim(&moved, config)?))
}

/// Whether dim N is unchanged by U₀ ↦ VU₀Vᵗ for a Haar-random V drawn from `seed`.
pub fn unitary_covariance_check(n: usize, seed: u64) -> Result<bool> {
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    if n < 4 {
        return Err(Error::DimensionTooSmall(n));
    }
    let v = random_haar_unitary::<f64, _>(&mut seeded_rng(seed), n);
    let (a, b) = covariance_dims_with(&v, &EstimatorConfig::with_seed(seed))?;
    Ok(a.saturated && b.saturated && a.achieved_dim == b.achieved_dim)
}
