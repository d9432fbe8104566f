//! Truncated multivariate basic hypergeometric series, product kernels, the
//! constant-term scalar product with its q-Dyson closed form, and the Gauss
//! summation check.

mod cterm;
mod gauss;
mod series;

pub use cterm::{
    check_c1, check_pi_normalized, check_qdyson, qdyson_value, qdyson_value_infinite_route,
    scalar_ct, CtKernel,
};
pub use gauss::{gauss_check, log_q_exact, poch_ratio_product};
pub use series::{
    check_kernel_identity, check_phi_one_product, check_y_specialization,
    kernel_pi_monomial_pairs, phi_one, phi_two, phi_two_integral_form, qbinomial_coeffs,
    symmetric_product_series, HyperParams, KernelSeries, TruncSeries,
};
