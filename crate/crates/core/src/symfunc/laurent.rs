//! Sparse Laurent polynomials in n variables over the rationals.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::scalars::{pow_i, Rational};
use crate::{Error, Result};

/// A Laurent polynomial: finitely many terms, integer exponent vectors,
/// no stored zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rational>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], Rational::one())
    }

    pub fn monomial(exps: Vec<i32>, coeff: Rational) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i32>, coeff: Rational) {
        debug_assert_eq!(exps.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    /// The coefficient of the zero exponent vector.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    /// The bar involution `x_i -> x_i^{-1}`: every exponent vector negated.
    pub fn bar_involution(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|&x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation. Coordinates hit by negative exponents must be nonzero.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (x, &e) in point.iter().zip(exps) {
                if e != 0 {
                    if x.is_zero() && e < 0 {
                        return Err(Error::InvalidParameter(
                            "zero coordinate with negative exponent".into(),
                        ));
                    }
                    term *= pow_i(x, e as i64);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Max of |coeff| over the terms; zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> Rational {
        let mut best = Rational::zero();
        for c in self.terms.values() {
            let a = c.abs();
            if a > best {
                best = a;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn binomial_pair() -> LaurentPoly {
        // (1 - x1/x2)(1 - x2/x1)
        let a = LaurentPoly::one(2).add(&LaurentPoly::monomial(vec![1, -1], rat(-1, 1)));
        let b = LaurentPoly::one(2).add(&LaurentPoly::monomial(vec![-1, 1], rat(-1, 1)));
        a.mul(&b)
    }

    #[test]
    fn constant_terms() {
        assert_eq!(LaurentPoly::one(2).constant_term(), Rational::one());
        assert_eq!(binomial_pair().constant_term(), rat(2, 1));
        let x1_over_x2 = LaurentPoly::monomial(vec![1, -1], Rational::one());
        assert_eq!(x1_over_x2.constant_term(), Rational::zero());
    }

    #[test]
    fn bar_involution_negates_exponents() {
        let f = LaurentPoly::monomial(vec![1, 1], Rational::one());
        let g = f.bar_involution();
        assert_eq!(g.coeff(&[-1, -1]), Rational::one());
        assert_eq!(LaurentPoly::one(3).bar_involution(), LaurentPoly::one(3));
        // constant term is bar-invariant
        let h = binomial_pair();
        assert_eq!(h.bar_involution().constant_term(), h.constant_term());
    }

    #[test]
    fn evaluation() {
        let f = LaurentPoly::monomial(vec![2, -1], rat(3, 1));
        let v = f.evaluate(&[rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(v, rat(9, 4));
        assert!(f.evaluate(&[rat(1, 2)]).is_err());
        assert!(f.evaluate(&[rat(1, 2), rat(0, 1)]).is_err());
    }
}
