//! Partitions, symmetric-polynomial arithmetic in the monomial and power-sum
//! bases, Laurent polynomials with constant terms, and the bar involution.

mod laurent;
mod partition;
mod sympoly;
pub(crate) mod transition;

pub use laurent::LaurentPoly;
pub use partition::{distinct_permutations, partitions_of_weight, partitions_upto, Partition};
pub use sympoly::{m_to_p, p_to_m, Basis, SymPoly};

use crate::scalars::Rational;

/// Coefficient of the zero exponent vector.
pub fn constant_term(f: &LaurentPoly) -> Rational {
    f.constant_term()
}

/// The substitution `x_i -> x_i^{-1}`.
pub fn bar_involution(f: &LaurentPoly) -> LaurentPoly {
    f.bar_involution()
}

/// `n(lambda) = sum_i (i - 1) lambda_i`.
pub fn nlambda(lambda: &Partition) -> u64 {
    lambda.n_lambda()
}
