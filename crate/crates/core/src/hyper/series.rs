//! Truncated multivariate basic hypergeometric series.
//!
//! One-alphabet series are stored as a degree-capped symmetric polynomial in
//! the monomial basis. Two-alphabet series are stored partition-wise, as the
//! coefficient of `P_lambda(x) P_lambda(y)`, and expanded to monomial pairs
//! only for final comparisons.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::macdonald::{qpoch_partition_list, MacdonaldCache};
use crate::report::{params, CheckReport};
use crate::scalars::{ParamPoint, Rational};
use crate::symfunc::{partitions_upto, transition, Basis, Partition, SymPoly};
use crate::{Error, Result};

/// Parameters of a truncated series: upper list `a`, lower list `b`, the
/// `(q, t)` point, the variable count, and the truncation weight.
#[derive(Clone, Debug)]
pub struct HyperParams {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub point: ParamPoint,
    pub n: usize,
    pub cap: u32,
}

impl HyperParams {
    pub fn new(
        upper: Vec<Rational>,
        lower: Vec<Rational>,
        point: ParamPoint,
        n: usize,
        cap: u32,
    ) -> Result<Self> {
        let hp = Self {
            upper,
            lower,
            point,
            n,
            cap,
        };
        hp.validate()?;
        Ok(hp)
    }

    /// No lower parameter may make `(b; q, t)_lambda` vanish for any
    /// partition within the truncation range.
    fn validate(&self) -> Result<()> {
        let one = Rational::one();
        for b in &self.lower {
            for i in 1..=self.n.min(self.cap as usize) {
                for j in 0..self.cap {
                    let factor = b * self.point.t_pow(1 - i as i64) * self.point.q_pow(j as i64);
                    if factor == one {
                        let lam = Partition::new(vec![j + 1; i]).unwrap();
                        return Err(Error::VanishingPochhammer {
                            param: b.to_string(),
                            partition: lam.to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A one-alphabet symmetric series truncated at total degree `cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries {
    nvars: usize,
    cap: u32,
    poly: SymPoly,
}

impl TruncSeries {
    pub fn new(nvars: usize, cap: u32, poly: SymPoly) -> Self {
        debug_assert_eq!(poly.basis(), Basis::Monomial);
        Self {
            nvars,
            cap,
            poly: poly.truncate(cap),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn poly(&self) -> &SymPoly {
        &self.poly
    }

    /// The weight-`d` homogeneous component.
    pub fn degree_component(&self, d: u32) -> SymPoly {
        SymPoly::from_coeffs(
            self.nvars,
            Basis::Monomial,
            self.poly
                .coeffs()
                .filter(|(l, _)| l.weight() == d)
                .map(|(l, c)| (l.clone(), c.clone())),
        )
    }
}

/// A two-alphabet kernel series truncated at `|lambda| <= cap`: the sparse
/// map `lambda -> r_lambda` representing `sum r_lambda P_lambda(x) P_lambda(y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSeries {
    nvars: usize,
    cap: u32,
    coeffs: BTreeMap<Partition, Rational>,
}

impl KernelSeries {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
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

    /// Expands to the monomial-pair map `(mu, nu) -> coefficient of
    /// m_mu(x) m_nu(y)` in `nvars` variables per alphabet.
    pub fn to_monomial_pairs(
        &self,
        cache: &mut MacdonaldCache,
    ) -> Result<BTreeMap<(Partition, Partition), Rational>> {
        let mut out = BTreeMap::new();
        for (lam, r) in &self.coeffs {
            let pm = cache.macdonald_p(lam, self.nvars)?;
            for (mu, cx) in pm.coeffs() {
                for (nu, cy) in pm.coeffs() {
                    let key = (mu.clone(), nu.clone());
                    let add = r * cx * cy;
                    let entry = out.entry(key).or_insert_with(Rational::zero);
                    *entry += add;
                    if entry.is_zero() {
                        out.remove(&(mu.clone(), nu.clone()));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies the geometric-alphabet specialization `y_i -> t^{i-1}` (the
    /// `u = t^n` principal specialization) to the second alphabet, returning
    /// the resulting one-alphabet series.
    pub fn specialize_y(&self, cache: &mut MacdonaldCache) -> Result<TruncSeries> {
        let u = cache.point().t_pow(self.nvars as i64);
        let mut poly = SymPoly::zero(self.nvars, Basis::Monomial);
        for (lam, r) in &self.coeffs {
            let eps = cache.eps_p(lam, &u);
            let pm = cache.macdonald_p(lam, self.nvars)?;
            poly = poly.add(&pm.scale(&(r * eps)));
        }
        Ok(TruncSeries::new(self.nvars, self.cap, poly))
    }
}

/// One-variable series coefficients `c_j = (a; q)_j / (q; q)_j`, `j <= cap`,
/// the q-binomial expansion of `(a x; q)_inf / (x; q)_inf`. With `a = 0`
/// these are the coefficients of `1 / (x; q)_inf`.
pub fn qbinomial_coeffs(a: &Rational, q: &Rational, cap: u32) -> Vec<Rational> {
    let one = Rational::one();
    let mut out = Vec::with_capacity(cap as usize + 1);
    let mut c = Rational::one();
    out.push(c.clone());
    let mut aq = a.clone(); // a q^j
    let mut qq = q.clone(); // q^{j+1}
    for _ in 0..cap {
        c *= (&one - &aq) / (&one - &qq);
        out.push(c.clone());
        aq *= q;
        qq *= q;
    }
    out
}

/// The truncated symmetric expansion of `prod_{i=1}^{n} h(x_i)` where `h` is
/// a one-variable series with the given coefficients: the coefficient of
/// `m_mu` is `prod_i c_{mu_i}` (parts padded with zeros to length n).
pub fn symmetric_product_series(coeffs: &[Rational], n: usize, cap: u32) -> TruncSeries {
    let mut poly = SymPoly::zero(n, Basis::Monomial);
    for mu in partitions_upto(cap.min(coeffs.len() as u32 - 1), n) {
        let mut c = num::pow::pow(coeffs[0].clone(), n - mu.len());
        for &part in mu.parts() {
            c *= &coeffs[part as usize];
        }
        poly.add_coeff(mu, c);
    }
    TruncSeries::new(n, cap, poly)
}

/// Coefficient of the weight-`lambda` term common to all the series: the
/// parameter Pochhammer ratio `(a)_lambda / (b)_lambda`.
fn param_ratio(hp: &HyperParams, lambda: &Partition) -> Rational {
    qpoch_partition_list(&hp.upper, lambda, &hp.point)
        / qpoch_partition_list(&hp.lower, lambda, &hp.point)
}

/// The one-alphabet series
/// `sum_lambda (a)_lambda / (b)_lambda t^{n(lambda)} J*_lambda(x)`
/// truncated at `|lambda| <= cap`, with exact coefficients.
pub fn phi_one(hp: &HyperParams, cache: &mut MacdonaldCache) -> Result<TruncSeries> {
    assert_eq!(cache.point(), &hp.point, "cache is for a different point");
    hp.validate()?;
    let mut poly = SymPoly::zero(hp.n, Basis::Monomial);
    for lam in partitions_upto(hp.cap, hp.n) {
        let coeff = param_ratio(hp, &lam)
            * hp.point.t_pow(lam.n_lambda() as i64)
            * cache.jstar_scale(&lam);
        let pm = cache.macdonald_p(&lam, hp.n)?;
        poly = poly.add(&pm.scale(&coeff));
    }
    Ok(TruncSeries::new(hp.n, hp.cap, poly))
}

/// The two-alphabet series through the dual-basis form
/// `sum (a)_lambda / ((b)_lambda (t^n)_lambda) P_lambda(x) Q_lambda(y)`.
pub fn phi_two(hp: &HyperParams, cache: &mut MacdonaldCache, cap_y: u32) -> Result<KernelSeries> {
    assert_eq!(cache.point(), &hp.point, "cache is for a different point");
    hp.validate()?;
    let cap = hp.cap.min(cap_y);
    let tn = hp.point.t_pow(hp.n as i64);
    let mut coeffs = BTreeMap::new();
    for lam in partitions_upto(cap, hp.n) {
        let r = param_ratio(hp, &lam)
            / (qpoch_partition_list(std::slice::from_ref(&tn), &lam, &hp.point) * cache.p_norm(&lam));
        if !r.is_zero() {
            coeffs.insert(lam, r);
        }
    }
    Ok(KernelSeries {
        nvars: hp.n,
        cap,
        coeffs,
    })
}

/// The same series built through the two-alphabet dual-kernel form: the
/// coefficient of `P (x) P (y)` is
/// `(a)/(b) t^{n(lambda)} s_lambda / eps_{t^n,t}(P_lambda)` where
/// `J*_lambda = s_lambda P_lambda`. Exactly equals [`phi_two`] term by term.
pub fn phi_two_integral_form(
    hp: &HyperParams,
    cache: &mut MacdonaldCache,
    cap_y: u32,
) -> Result<KernelSeries> {
    assert_eq!(cache.point(), &hp.point, "cache is for a different point");
    hp.validate()?;
    let cap = hp.cap.min(cap_y);
    let tn = hp.point.t_pow(hp.n as i64);
    let mut coeffs = BTreeMap::new();
    for lam in partitions_upto(cap, hp.n) {
        let eps = cache.eps_p(&lam, &tn);
        let r = param_ratio(hp, &lam) * hp.point.t_pow(lam.n_lambda() as i64)
            * cache.jstar_scale(&lam)
            / eps;
        if !r.is_zero() {
            coeffs.insert(lam, r);
        }
    }
    Ok(KernelSeries {
        nvars: hp.n,
        cap,
        coeffs,
    })
}

/// The reproducing kernel as monomial pairs:
/// `Pi(x, y) = sum_lambda z_lambda^{-1} prod_i (1 - t^{lambda_i})/(1 - q^{lambda_i}) p_lambda(x) p_lambda(y)`
/// truncated at `|lambda| <= cap`, with both alphabets restricted to `n`
/// variables.
pub fn kernel_pi_monomial_pairs(
    n: usize,
    point: &ParamPoint,
    cap: u32,
) -> BTreeMap<(Partition, Partition), Rational> {
    let one = Rational::one();
    let mut out: BTreeMap<(Partition, Partition), Rational> = BTreeMap::new();
    // all partitions of weight <= cap, any length: p_lambda does not vanish
    // in n variables even when the partition is long
    for lam in partitions_upto(cap, cap as usize) {
        let mut w = Rational::from(lam.z()).recip();
        for &r in lam.parts() {
            w *= (&one - point.t_pow(r as i64)) / (&one - point.q_pow(r as i64));
        }
        let expansion = transition::p_in_m(&lam);
        let restricted: Vec<(&Partition, &Rational)> = expansion
            .iter()
            .filter(|(mu, _)| mu.len() <= n)
            .collect();
        for (mu, cx) in &restricted {
            for (nu, cy) in &restricted {
                let add = &w * *cx * *cy;
                let key = ((*mu).clone(), (*nu).clone());
                let entry = out.entry(key).or_insert_with(Rational::zero);
                *entry += add;
                if entry.is_zero() {
                    out.remove(&((*mu).clone(), (*nu).clone()));
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Identity checks at the series level
// ---------------------------------------------------------------------------

/// Exact degreewise comparison of a one-parameter series with its product
/// form: `phi(a; x)` against `prod_i (a x_i; q)_inf / (x_i; q)_inf`
/// (with `a = 0` this is the inverse-Pochhammer product). Upper parameter
/// lists of length 0 or 1 are supported.
pub fn check_phi_one_product(
    cache: &mut MacdonaldCache,
    a: Option<Rational>,
    n: usize,
    cap: u32,
) -> Result<CheckReport> {
    let point = cache.point().clone();
    let upper: Vec<Rational> = a.clone().into_iter().collect();
    let hp = HyperParams::new(upper, vec![], point.clone(), n, cap)?;
    let series = phi_one(&hp, cache)?;
    let avalue = a.clone().unwrap_or_else(Rational::zero);
    let coeffs = qbinomial_coeffs(&avalue, point.q(), cap);
    let product = symmetric_product_series(&coeffs, n, cap);
    let pass = series == product;
    Ok(CheckReport::verdict(
        "phi_product",
        params(&[
            ("a", avalue.to_string()),
            ("n", n.to_string()),
            ("cap", cap.to_string()),
            ("q", point.q().to_string()),
            ("t", point.t().to_string()),
        ]),
        pass,
        format!("{} series coefficients", series.poly().coeffs().count()),
        format!("{} product coefficients", product.poly().coeffs().count()),
    ))
}

/// Exact degreewise comparison of `phi(t^n; x, y)` with the kernel `Pi(x, y)`.
pub fn check_kernel_identity(
    cache: &mut MacdonaldCache,
    n: usize,
    cap: u32,
) -> Result<CheckReport> {
    let point = cache.point().clone();
    let tn = point.t_pow(n as i64);
    let hp = HyperParams::new(vec![tn], vec![], point.clone(), n, cap)?;
    let series = phi_two(&hp, cache, cap)?;
    let lhs = series.to_monomial_pairs(cache)?;
    let rhs = kernel_pi_monomial_pairs(n, &point, cap);
    let pass = lhs == rhs;
    Ok(CheckReport::verdict(
        "kernel_product",
        params(&[
            ("n", n.to_string()),
            ("cap", cap.to_string()),
            ("q", point.q().to_string()),
            ("t", point.t().to_string()),
        ]),
        pass,
        format!("{} kernel terms", lhs.len()),
        format!("{} product terms", rhs.len()),
    ))
}

/// Exact check that specializing the second alphabet of the two-alphabet
/// series recovers the one-alphabet series, and that the two constructions
/// of the two-alphabet series agree term by term.
pub fn check_y_specialization(
    cache: &mut MacdonaldCache,
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    n: usize,
    cap: u32,
) -> Result<CheckReport> {
    let point = cache.point().clone();
    let hp = HyperParams::new(upper.clone(), lower.clone(), point.clone(), n, cap)?;
    let two_a = phi_two(&hp, cache, cap)?;
    let two_b = phi_two_integral_form(&hp, cache, cap)?;
    let routes_agree = two_a == two_b;
    let specialized = two_a.specialize_y(cache)?;
    let one = phi_one(&hp, cache)?;
    let pass = routes_agree && specialized == one;
    Ok(CheckReport::verdict(
        "kernel_specialization",
        params(&[
            ("upper", format!("{upper:?}")),
            ("lower", format!("{lower:?}")),
            ("n", n.to_string()),
            ("cap", cap.to_string()),
            ("q", point.q().to_string()),
            ("t", point.t().to_string()),
        ]),
        pass,
        format!("routes_agree={routes_agree}"),
        format!("specialization_matches={}", specialized == one),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn cache(q: (i64, i64), t: (i64, i64)) -> MacdonaldCache {
        MacdonaldCache::new(ParamPoint::new(rat(q.0, q.1), rat(t.0, t.1)).unwrap())
    }

    #[test]
    fn inverse_pochhammer_product_series() {
        // prod 1/(x_i; q)_inf truncated: degree-1 coefficient is 1/(1-q)
        let point = ParamPoint::new(rat(1, 2), rat(1, 3)).unwrap();
        let coeffs = qbinomial_coeffs(&Rational::zero(), point.q(), 3);
        assert_eq!(coeffs[1], (Rational::one() - point.q()).recip());
        let series = symmetric_product_series(&coeffs, 2, 3);
        assert_eq!(
            series.poly().coeff(&part(&[1])),
            (Rational::one() - point.q()).recip()
        );
        // m_(1,1) coefficient is (1/(1-q))^2
        let c = (Rational::one() - point.q()).recip();
        assert_eq!(series.poly().coeff(&part(&[1, 1])), &c * &c);
    }

    #[test]
    fn zero_upper_parameter_collapses() {
        // a = 0 in the one-parameter series gives the no-parameter series
        let mut c = cache((1, 2), (1, 3));
        let point = c.point().clone();
        let hp0 = HyperParams::new(vec![], vec![], point.clone(), 2, 4).unwrap();
        let hp1 =
            HyperParams::new(vec![Rational::zero()], vec![], point.clone(), 2, 4).unwrap();
        assert_eq!(phi_one(&hp0, &mut c).unwrap(), phi_one(&hp1, &mut c).unwrap());
    }

    #[test]
    fn product_evaluations_exact() {
        for (q, t, a) in [
            ((1i64, 2i64), (1i64, 3i64), (3i64, 4i64)),
            ((2, 5), (3, 7), (1, 6)),
            ((4, 7), (2, 3), (5, 9)),
        ] {
            let mut c = cache(q, t);
            for n in 1..=3usize {
                let r = check_phi_one_product(&mut c, None, n, 6).unwrap();
                assert!(r.passed(), "no-parameter product failed at n = {n}");
                let r = check_phi_one_product(&mut c, Some(rat(a.0, a.1)), n, 6).unwrap();
                assert!(r.passed(), "one-parameter product failed at n = {n}");
            }
        }
    }

    #[test]
    fn degree_components_partition_the_series() {
        let mut c = cache((1, 2), (1, 3));
        let point = c.point().clone();
        let hp = HyperParams::new(vec![rat(2, 5)], vec![], point, 2, 4).unwrap();
        let series = phi_one(&hp, &mut c).unwrap();
        let mut rebuilt = SymPoly::zero(2, Basis::Monomial);
        for d in 0..=series.cap() {
            let comp = series.degree_component(d);
            assert!(comp.coeffs().all(|(l, _)| l.weight() == d));
            rebuilt = rebuilt.add(&comp);
        }
        assert_eq!(&rebuilt, series.poly());
    }

    #[test]
    fn truncation_cap_zero_is_one() {
        let mut c = cache((1, 2), (1, 3));
        let point = c.point().clone();
        let hp = HyperParams::new(vec![], vec![], point, 2, 0).unwrap();
        let two = phi_two(&hp, &mut c, 0).unwrap();
        assert_eq!(two.coeffs().count(), 1);
        assert_eq!(two.coeff(&Partition::empty()), Rational::one());
    }

    #[test]
    fn kernel_identity_small() {
        let mut c = cache((1, 2), (1, 3));
        for n in 1..=2usize {
            let r = check_kernel_identity(&mut c, n, 4).unwrap();
            assert!(r.passed(), "kernel identity failed at n = {n}");
        }
    }

    #[test]
    fn kernel_degree_one_component() {
        // the weight-(1,1) kernel coefficient is (1-t)/(1-q) on m_1 (x) m_1
        let point = ParamPoint::new(rat(1, 2), rat(1, 3)).unwrap();
        let pairs = kernel_pi_monomial_pairs(2, &point, 1);
        let key = (part(&[1]), part(&[1]));
        let want = (Rational::one() - point.t()) / (Rational::one() - point.q());
        assert_eq!(pairs[&key], want);
        // degree-0 component is 1
        let key0 = (Partition::empty(), Partition::empty());
        assert_eq!(pairs[&key0], Rational::one());
    }

    #[test]
    fn cauchy_sum_matches_kernel() {
        // sum_lambda J_lambda(x) J*_lambda(y) = Pi(x, y) degreewise
        let mut c = cache((1, 2), (1, 3));
        let point = c.point().clone();
        let n = 2usize;
        let cap = 4u32;
        let mut lhs: BTreeMap<(Partition, Partition), Rational> = BTreeMap::new();
        for lam in partitions_upto(cap, n) {
            let jscale = crate::macdonald::c_lambda(&lam, &point);
            let jstar_scale = c.jstar_scale(&lam);
            let pm = c.macdonald_p(&lam, n).unwrap();
            for (mu, cx) in pm.coeffs() {
                for (nu, cy) in pm.coeffs() {
                    let add = &jscale * &jstar_scale * cx * cy;
                    let e = lhs
                        .entry((mu.clone(), nu.clone()))
                        .or_insert_with(Rational::zero);
                    *e += add;
                }
            }
        }
        lhs.retain(|_, v| !v.is_zero());
        let rhs = kernel_pi_monomial_pairs(n, &point, cap);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialization_and_route_agreement() {
        let mut c = cache((1, 2), (1, 3));
        // r = s = 0, r = 1, and a two-parameter instance with a lower entry
        let cases: Vec<(Vec<Rational>, Vec<Rational>)> = vec![
            (vec![], vec![]),
            (vec![rat(2, 5)], vec![]),
            (vec![rat(2, 5), rat(1, 4)], vec![rat(3, 10)]),
        ];
        for (upper, lower) in cases {
            for n in 1..=2usize {
                let r = check_y_specialization(&mut c, upper.clone(), lower.clone(), n, 4)
                    .unwrap();
                assert!(r.passed(), "failed for upper {upper:?} lower {lower:?} n {n}");
            }
        }
    }

    #[test]
    fn vanishing_lower_parameter_is_reported() {
        let point = ParamPoint::with_k(rat(1, 2), 1).unwrap();
        // b = t makes (b; q, t)_lambda vanish at two-row partitions:
        // b t^{1-2} q^0 = 1
        let bad = HyperParams::new(vec![], vec![point.t().clone()], point, 2, 3);
        match bad {
            Err(Error::VanishingPochhammer { .. }) => {}
            other => panic!("expected vanishing-parameter error, got {other:?}"),
        }
    }
}
