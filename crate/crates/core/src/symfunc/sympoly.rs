//! Symmetric polynomials in n variables, monomial and power-sum bases.

use std::collections::BTreeMap;

use num::{One, Zero};

use super::laurent::LaurentPoly;
use super::partition::{distinct_permutations, Partition};
use super::transition;
use crate::scalars::{pow_i, Rational};
use crate::{Error, Result};

/// Which basis the coefficient map of a [`SymPoly`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    /// Monomial symmetric polynomials `m_lambda`; only partitions of length
    /// `<= nvars` are stored (longer ones vanish in n variables).
    Monomial,
    /// Power sums `p_lambda = prod p_{lambda_i}`. Treated as formal symbols:
    /// coefficients live in the free polynomial algebra on `p_1, p_2, ...`,
    /// which is what the `(q, t)` scalar product is defined on.
    PowerSum,
}

/// A symmetric polynomial in `nvars` variables as a sparse map from
/// partitions to rational coefficients, tagged by basis. No explicit zero
/// coefficients are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly {
    nvars: usize,
    basis: Basis,
    coeffs: BTreeMap<Partition, Rational>,
}

impl SymPoly {
    pub fn zero(nvars: usize, basis: Basis) -> Self {
        Self {
            nvars,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, basis: Basis, c: Rational) -> Self {
        let mut f = Self::zero(nvars, basis);
        f.add_coeff(Partition::empty(), c);
        f
    }

    pub fn one(nvars: usize, basis: Basis) -> Self {
        Self::constant(nvars, basis, Rational::one())
    }

    /// The single basis element `m_lambda` or `p_lambda`.
    pub fn basis_element(nvars: usize, basis: Basis, lambda: Partition) -> Self {
        let mut f = Self::zero(nvars, basis);
        f.add_coeff(lambda, Rational::one());
        f
    }

    pub fn from_coeffs(
        nvars: usize,
        basis: Basis,
        coeffs: impl IntoIterator<Item = (Partition, Rational)>,
    ) -> Self {
        let mut f = Self::zero(nvars, basis);
        for (lam, c) in coeffs {
            f.add_coeff(lam, c);
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.coeffs
            .get(lambda)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree (max weight of a supported partition).
    pub fn degree(&self) -> u32 {
        self.coeffs.keys().map(Partition::weight).max().unwrap_or(0)
    }

    /// Adds `c * b_lambda`. In the monomial basis, partitions longer than the
    /// variable count are dropped (those `m_lambda` vanish in n variables).
    pub fn add_coeff(&mut self, lambda: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        if self.basis == Basis::Monomial && lambda.len() > self.nvars {
            return;
        }
        let entry = self.coeffs.entry(lambda);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis);
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (lam, c) in &other.coeffs {
            out.add_coeff(lam.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.basis);
        }
        Self {
            nvars: self.nvars,
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .map(|(l, v)| (l.clone(), v * c))
                .collect(),
        }
    }

    /// Drops all terms of weight above `cap`.
    pub fn truncate(&self, cap: u32) -> Self {
        Self {
            nvars: self.nvars,
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(l, _)| l.weight() <= cap)
                .map(|(l, c)| (l.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact product. Power sums multiply by part-union; monomials multiply
    /// through the expanded exponent representation.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis);
        assert_eq!(self.nvars, other.nvars);
        match self.basis {
            Basis::PowerSum => {
                let mut out = Self::zero(self.nvars, Basis::PowerSum);
                for (la, ca) in &self.coeffs {
                    for (lb, cb) in &other.coeffs {
                        out.add_coeff(la.union_parts(lb), ca * cb);
                    }
                }
                out
            }
            Basis::Monomial => {
                let prod = self.to_laurent().mul(&other.to_laurent());
                Self::from_laurent_symmetric(&prod, self.nvars)
            }
        }
    }

    /// Product truncated at total degree `cap`.
    pub fn mul_trunc(&self, other: &Self, cap: u32) -> Self {
        self.truncate(cap).mul(&other.truncate(cap)).truncate(cap)
    }

    /// Expands a monomial-basis polynomial into its Laurent (exponent) form.
    pub fn to_laurent(&self) -> LaurentPoly {
        assert_eq!(self.basis, Basis::Monomial, "expansion needs the m basis");
        let mut out = LaurentPoly::zero(self.nvars);
        for (lam, c) in &self.coeffs {
            for perm in distinct_permutations(&lam.padded(self.nvars)) {
                out.add_term(perm.iter().map(|&e| e as i32).collect(), c.clone());
            }
        }
        out
    }

    /// Collects a symmetric Laurent polynomial with nonnegative exponents
    /// back into the monomial basis by reading the weakly decreasing
    /// exponent representatives.
    pub fn from_laurent_symmetric(f: &LaurentPoly, nvars: usize) -> Self {
        let mut out = Self::zero(nvars, Basis::Monomial);
        for (exps, c) in f.terms() {
            debug_assert!(exps.iter().all(|&e| e >= 0));
            if exps.windows(2).all(|w| w[0] >= w[1]) {
                let lam = Partition::from_unsorted(exps.iter().map(|&e| e as u32).collect());
                out.add_coeff(lam, c.clone());
            }
        }
        out
    }

    /// Exact evaluation at a rational point of length `nvars`.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        match self.basis {
            Basis::Monomial => {
                let mut acc = Rational::zero();
                for (lam, c) in &self.coeffs {
                    let mut msum = Rational::zero();
                    for perm in distinct_permutations(&lam.padded(self.nvars)) {
                        let mut term = Rational::one();
                        for (x, &e) in point.iter().zip(&perm) {
                            if e > 0 {
                                term *= pow_i(x, e as i64);
                            }
                        }
                        msum += term;
                    }
                    acc += c * msum;
                }
                Ok(acc)
            }
            Basis::PowerSum => {
                let mut acc = Rational::zero();
                for (lam, c) in &self.coeffs {
                    let mut term = c.clone();
                    for &r in lam.parts() {
                        let pr: Rational = point.iter().map(|x| pow_i(x, r as i64)).sum();
                        term *= pr;
                    }
                    acc += term;
                }
                Ok(acc)
            }
        }
    }
}

/// Converts a power-sum polynomial to the monomial basis in `n` variables.
/// Monomials indexed by partitions longer than `n` vanish and are dropped.
pub fn p_to_m(f: &SymPoly, n: usize) -> SymPoly {
    assert_eq!(f.basis(), Basis::PowerSum);
    let mut out = SymPoly::zero(n, Basis::Monomial);
    for (lam, c) in f.coeffs() {
        for (mu, w) in transition::p_in_m(lam).iter() {
            out.add_coeff(mu.clone(), c * w);
        }
    }
    out
}

/// Converts a monomial-basis polynomial to the power-sum basis.
///
/// The conversion uses the universal (variable-count independent) transition
/// tables, so it is the inverse of [`p_to_m`] whenever no monomial term was
/// dropped — in particular for degrees up to the variable count.
pub fn m_to_p(f: &SymPoly) -> SymPoly {
    assert_eq!(f.basis(), Basis::Monomial);
    let mut out = SymPoly::zero(f.nvars(), Basis::PowerSum);
    for (lam, c) in f.coeffs() {
        for (mu, w) in transition::m_in_p(lam).iter() {
            out.add_coeff(mu.clone(), c * w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, rat_int};
    use crate::symfunc::partition::partitions_upto;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn m(nvars: usize, parts: &[u32]) -> SymPoly {
        SymPoly::basis_element(nvars, Basis::Monomial, part(parts))
    }

    fn p(nvars: usize, parts: &[u32]) -> SymPoly {
        SymPoly::basis_element(nvars, Basis::PowerSum, part(parts))
    }

    #[test]
    fn p_to_m_small_cases() {
        // p_1 = m_1
        assert_eq!(p_to_m(&p(2, &[1]), 2), m(2, &[1]));
        // p_2 = m_2
        assert_eq!(p_to_m(&p(2, &[2]), 2), m(2, &[2]));
        // p_1^2 = m_2 + 2 m_11
        let got = p_to_m(&p(2, &[1, 1]), 2);
        let want = m(2, &[2]).add(&m(2, &[1, 1]).scale(&rat_int(2)));
        assert_eq!(got, want);
    }

    #[test]
    fn p_to_m_then_back_is_identity() {
        // degree <= n, so nothing is dropped
        for lam in partitions_upto(4, 4) {
            let f = SymPoly::basis_element(4, Basis::PowerSum, lam.clone());
            let round = m_to_p(&p_to_m(&f, 4));
            assert_eq!(round, f, "round trip failed at {lam}");
        }
        // and on a random-ish combination
        let f = p(4, &[2, 1])
            .scale(&rat(3, 7))
            .add(&p(4, &[4]).scale(&rat(-2, 5)))
            .add(&p(4, &[1, 1, 1]));
        assert_eq!(m_to_p(&p_to_m(&f, 4)), f);
    }

    #[test]
    fn monomial_multiplication_matches_expansion() {
        // m_1 * m_1 = m_2 + 2 m_11 in >= 2 variables
        let got = m(2, &[1]).mul(&m(2, &[1]));
        let want = m(2, &[2]).add(&m(2, &[1, 1]).scale(&rat_int(2)));
        assert_eq!(got, want);
        // in 1 variable: m_1 * m_1 = m_2
        let got1 = m(1, &[1]).mul(&m(1, &[1]));
        assert_eq!(got1, m(1, &[2]));
    }

    #[test]
    fn capped_multiplication_never_exceeds_the_cap() {
        let f = m(2, &[2]).add(&m(2, &[1]).scale(&rat(2, 3)));
        let g = m(2, &[2, 1]).add(&m(2, &[1, 1]));
        let capped = f.mul_trunc(&g, 3);
        assert!(capped.coeffs().all(|(l, _)| l.weight() <= 3));
        // and agrees with the full product below the cap
        let full = f.mul(&g).truncate(3);
        assert_eq!(capped, full);
    }

    #[test]
    fn evaluation_examples() {
        let f = m(2, &[1]);
        assert_eq!(f.evaluate(&[rat_int(3), rat_int(4)]).unwrap(), rat_int(7));
        let g = m(2, &[1, 1]);
        assert_eq!(g.evaluate(&[rat_int(2), rat_int(3)]).unwrap(), rat_int(6));
        // at the all-zero point every polynomial evaluates to its constant term
        let h = m(2, &[2, 1]).add(&SymPoly::constant(2, Basis::Monomial, rat(5, 3)));
        assert_eq!(
            h.evaluate(&[rat_int(0), rat_int(0)]).unwrap(),
            rat(5, 3)
        );
        assert!(f.evaluate(&[rat_int(1)]).is_err());
    }

    #[test]
    fn power_sum_and_monomial_evaluations_agree() {
        let pt = [rat(2, 3), rat(-1, 2), rat(5, 7)];
        for lam in partitions_upto(4, 4) {
            let f = SymPoly::basis_element(3, Basis::PowerSum, lam.clone());
            let via_p = f.evaluate(&pt).unwrap();
            let via_m = p_to_m(&f, 3).evaluate(&pt).unwrap();
            assert_eq!(via_p, via_m, "mismatch at {lam}");
        }
    }

    #[test]
    fn long_partitions_drop_in_monomial_basis() {
        let f = SymPoly::basis_element(2, Basis::Monomial, part(&[1, 1, 1]));
        assert!(f.is_zero());
        // p_111 in 2 variables loses its m_111 component only
        let g = p_to_m(&p(2, &[1, 1, 1]), 2);
        assert!(g.coeff(&part(&[1, 1, 1])).is_zero());
        let pt = [rat(1, 2), rat(1, 3)];
        let direct = p(2, &[1, 1, 1]).evaluate(&pt).unwrap();
        assert_eq!(g.evaluate(&pt).unwrap(), direct);
    }
}
