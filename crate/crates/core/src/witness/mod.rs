//! Kernel pairs of Φ(P_x) and the spans they generate.
//!
//! The M-span is span{x ⊗ y : Φ(P_x)y = 0} in ℂⁿ ⊗ ℂⁿ; reaching n² is the spanning
//! property. The N-span is span{x ⊗ x̄ ⊗ y : Φ(P_x)y = 0} in ℂⁿ ⊗ ℂⁿ ⊗ ℂⁿ; reaching
//! (n²−1)·n is the strong spanning property. Only rank-one states P_x are sampled:
//! if Φ(Σλ_i P_{x_i})h = 0 with λ_i > 0 and Φ positive then each Φ(P_{x_i})h = 0.

mod dims;
mod estimate;
mod families;
mod kernel;

pub use dims::{dn_bound, dn_formula, m_target, n_target, reduction_m_dim, reduction_n_dim};
pub use estimate::{
    covariance_dims_with, estimate_m_dim, estimate_n_dim, estimate_span, spanning_check, strong_spanning_check,
    structured_grid, unitary_covariance_check, EstimatorConfig, SpanEstimate, SpanKind, SpanReport, SpanVerdict,
    DEFAULT_STOP_AFTER,
};
pub use families::{reference_family, robertson_points, ReferenceFamily};
pub use kernel::{kernel_of_state, kernel_pairs, KernelPair};
