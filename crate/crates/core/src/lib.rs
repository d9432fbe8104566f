//! Exact-arithmetic library for multivariate q-series identities.
//!
//! Everything is computed over arbitrary-precision rationals: Macdonald
//! symmetric polynomials over exact `(q, t)` parameter points, partition
//! q-Pochhammer symbols, truncated multivariate basic hypergeometric series,
//! Jackson q-integrals with Selberg-type weights, and one-variable Hahn
//! polynomials. Quantities that are genuinely infinite (infinite q-products,
//! Jackson sums) are returned as a value together with a certified bound on
//! the truncation error, so every comparison the library makes is either an
//! exact rational equality or an inequality with a machine-checked budget.
//!
//! Module map:
//! - [`scalars`]: rational helpers, `(q, t)` parameter points, finite and
//!   infinite q-Pochhammer symbols, q-Gamma, rising factorials, and the
//!   [`scalars::TruncatedValue`] interval type.
//! - [`symfunc`]: partitions, symmetric polynomials in the monomial and
//!   power-sum bases, Laurent polynomials and constant terms.
//! - [`macdonald`]: the Macdonald basis `P/Q/J` over exact `(q, t)`, the
//!   `(q, t)` scalar product, principal specializations, and the partition
//!   q-Pochhammer symbol.
//! - [`hyper`]: truncated one- and two-alphabet hypergeometric series, the
//!   product kernels, the constant-term scalar product with its q-Dyson
//!   closed form, and the Gauss summation check.
//! - [`qselberg`]: Jackson integration on the unit cube, Selberg weights,
//!   closed-form evaluations, and the Laplace-limit checks.
//! - [`hahn`]: Hahn polynomials via forward differences, their symmetry,
//!   endpoint, and orthogonality properties.
//! - [`report`]: the [`report::CheckReport`] record shared by all identity
//!   checks.

pub mod hahn;
pub mod hyper;
pub mod macdonald;
pub mod qselberg;
pub mod report;
pub mod scalars;
pub mod symfunc;

use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated a precondition (range, integrality, shape).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A lower hypergeometric parameter makes a partition Pochhammer vanish.
    #[error("lower parameter {param} makes the partition Pochhammer vanish at {partition}")]
    VanishingPochhammer { param: String, partition: String },
    /// Evaluation point length does not match the variable count.
    #[error("point has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    /// A series or integral cannot be certified within the requested budget.
    #[error("truncation budget exceeded: {0}")]
    TruncationBudget(String),
    /// The operation is not defined for the given inputs.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
