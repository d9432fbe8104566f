//! Macdonald symmetric polynomials over an exact `(q, t)` point.
//!
//! The basis is built by Gram–Schmidt on the monomial basis inside the full
//! ring of symmetric functions (alphabet-independent), using the power-sum
//! scalar product `<p_lambda, p_mu> = delta z_lambda prod (1-q^{l_i})/(1-t^{l_i})`.
//! Restriction to n variables just drops monomials indexed by partitions
//! longer than n, which is how [`MacdonaldCache::macdonald_p`] produces the
//! n-variable polynomials.
//!
//! Identities in `(q, t)` are certified by exact agreement at rational
//! parameter points; no symbolic rational-function arithmetic is involved.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::report::{params, CheckReport};
use crate::scalars::{pow_i, qpoch_finite, ParamPoint, Rational};
use crate::symfunc::{m_to_p, partitions_of_weight, Basis, Partition, SymPoly};
use crate::{Error, Result};

/// The specialization `p_r -> (1 - u^r) / (1 - t^r)`.
///
/// For `u = t^n` it agrees with substituting the geometric alphabet
/// `1, t, ..., t^{n-1}`.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub u: Rational,
    pub t: Rational,
}

impl Specialization {
    pub fn new(u: Rational, t: Rational) -> Self {
        Self { u, t }
    }

    /// Image of `p_r`.
    pub fn p_r(&self, r: u32) -> Rational {
        let one = Rational::one();
        (&one - pow_i(&self.u, r as i64)) / (&one - pow_i(&self.t, r as i64))
    }
}

/// Ring-homomorphic image of a power-sum polynomial under a specialization.
pub fn eps_ut(f: &SymPoly, spec: &Specialization) -> Rational {
    assert_eq!(f.basis(), Basis::PowerSum);
    let mut acc = Rational::zero();
    for (lam, c) in f.coeffs() {
        let mut term = c.clone();
        for &r in lam.parts() {
            term *= spec.p_r(r);
        }
        acc += term;
    }
    acc
}

/// The `(q, t)` scalar product of two power-sum polynomials:
/// `<p_lambda, p_mu> = delta_{lambda mu} z_lambda prod_i (1 - q^{lambda_i}) / (1 - t^{lambda_i})`.
pub fn scalar_qt(f: &SymPoly, g: &SymPoly, point: &ParamPoint) -> Rational {
    assert_eq!(f.basis(), Basis::PowerSum);
    assert_eq!(g.basis(), Basis::PowerSum);
    let mut acc = Rational::zero();
    for (lam, cf) in f.coeffs() {
        let cg = g.coeff(lam);
        if cg.is_zero() {
            continue;
        }
        acc += cf * cg * p_norm_qt(lam, point);
    }
    acc
}

/// `<p_lambda, p_lambda> = z_lambda prod_i (1 - q^{lambda_i})/(1 - t^{lambda_i})`.
fn p_norm_qt(lambda: &Partition, point: &ParamPoint) -> Rational {
    let one = Rational::one();
    let mut acc = Rational::from(lambda.z());
    for &r in lambda.parts() {
        acc *= (&one - point.q_pow(r as i64)) / (&one - point.t_pow(r as i64));
    }
    acc
}

/// Integral-form normalizer `c_lambda = prod_{s in lambda} (1 - q^{arm} t^{leg+1})`,
/// so that `J_lambda = c_lambda P_lambda`.
pub fn c_lambda(lambda: &Partition, point: &ParamPoint) -> Rational {
    let one = Rational::one();
    let mut acc = Rational::one();
    for (i, j) in lambda.cells() {
        acc *= &one
            - point.q_pow(lambda.arm(i, j) as i64) * point.t_pow(lambda.leg(i, j) as i64 + 1);
    }
    acc
}

/// The companion product `c'_lambda = prod_{s} (1 - q^{arm+1} t^{leg})`.
pub fn c_prime_lambda(lambda: &Partition, point: &ParamPoint) -> Rational {
    let one = Rational::one();
    let mut acc = Rational::one();
    for (i, j) in lambda.cells() {
        acc *= &one
            - point.q_pow(lambda.arm(i, j) as i64 + 1) * point.t_pow(lambda.leg(i, j) as i64);
    }
    acc
}

/// Partition q-Pochhammer `(u; q, t)_lambda = prod_i (u t^{1-i}; q)_{lambda_i}`.
pub fn qpoch_partition(u: &Rational, lambda: &Partition, point: &ParamPoint) -> Rational {
    let mut acc = Rational::one();
    for (i, &part) in lambda.parts().iter().enumerate() {
        let shifted = u * point.t_pow(-(i as i64));
        acc *= qpoch_finite(&shifted, point.q(), part);
    }
    acc
}

/// Product `(a_1; q,t)_lambda ... (a_r; q,t)_lambda` over a parameter list.
pub fn qpoch_partition_list(
    list: &[Rational],
    lambda: &Partition,
    point: &ParamPoint,
) -> Rational {
    list.iter()
        .map(|a| qpoch_partition(a, lambda, point))
        .product()
}

/// Memo table of Macdonald data at one `(q, t)` point.
///
/// Holds, per partition: `P_lambda` in both bases and the norm
/// `<P_lambda, P_lambda>_{q,t}`. Writes happen through `&mut self`
/// (single writer); the tables are deterministic functions of `(q, t)`.
pub struct MacdonaldCache {
    point: ParamPoint,
    p_in_m: BTreeMap<Partition, SymPoly>,
    p_in_p: BTreeMap<Partition, SymPoly>,
    norms: BTreeMap<Partition, Rational>,
    weights_done: Vec<u32>,
}

impl MacdonaldCache {
    pub fn new(point: ParamPoint) -> Self {
        Self {
            point,
            p_in_m: BTreeMap::new(),
            p_in_p: BTreeMap::new(),
            norms: BTreeMap::new(),
            weights_done: Vec::new(),
        }
    }

    pub fn point(&self) -> &ParamPoint {
        &self.point
    }

    pub fn ensure_weight(&mut self, d: u32) {
        if self.weights_done.contains(&d) {
            return;
        }
        // canonical linear extension of dominance: reverse of the
        // enumeration order (most-spread partition first)
        let mut order = partitions_of_weight(d, d as usize);
        order.reverse();
        let built = gram_schmidt(&self.point, &order);
        for (lam, (pm, pp, norm)) in built {
            self.p_in_m.insert(lam.clone(), pm);
            self.p_in_p.insert(lam.clone(), pp);
            self.norms.insert(lam, norm);
        }
        self.weights_done.push(d);
    }

    /// `P_lambda` expanded in monomial symmetric functions, restricted to
    /// `n` variables.
    pub fn macdonald_p(&mut self, lambda: &Partition, n: usize) -> Result<SymPoly> {
        if lambda.len() > n {
            return Err(Error::InvalidParameter(format!(
                "partition {lambda} does not fit in {n} variables"
            )));
        }
        self.ensure_weight(lambda.weight());
        let full = &self.p_in_m[lambda];
        Ok(SymPoly::from_coeffs(
            n,
            Basis::Monomial,
            full.coeffs().map(|(l, c)| (l.clone(), c.clone())),
        ))
    }

    /// `P_lambda` in the power-sum basis (alphabet independent).
    pub fn macdonald_p_powersum(&mut self, lambda: &Partition) -> SymPoly {
        self.ensure_weight(lambda.weight());
        self.p_in_p[lambda].clone()
    }

    /// `<P_lambda, P_lambda>_{q,t}`.
    pub fn p_norm(&mut self, lambda: &Partition) -> Rational {
        self.ensure_weight(lambda.weight());
        self.norms[lambda].clone()
    }

    /// `Q_lambda = P_lambda / <P_lambda, P_lambda>`, power-sum basis.
    pub fn macdonald_q_powersum(&mut self, lambda: &Partition) -> SymPoly {
        let norm = self.p_norm(lambda);
        self.macdonald_p_powersum(lambda).scale(&norm.recip())
    }

    /// `J_lambda = c_lambda P_lambda`, power-sum basis.
    pub fn j_powersum(&mut self, lambda: &Partition) -> SymPoly {
        let c = c_lambda(lambda, &self.point);
        self.macdonald_p_powersum(lambda).scale(&c)
    }

    /// `<J_lambda, J_lambda> = c_lambda^2 <P_lambda, P_lambda>`.
    pub fn j_norm(&mut self, lambda: &Partition) -> Rational {
        let c = c_lambda(lambda, &self.point);
        &c * &c * self.p_norm(lambda)
    }

    /// Scalar `s` with `J*_lambda = s P_lambda` (dual basis element of `J`).
    pub fn jstar_scale(&mut self, lambda: &Partition) -> Rational {
        // J* = J / <J, J> = P / (c <P, P>)
        let c = c_lambda(lambda, &self.point);
        (c * self.p_norm(lambda)).recip()
    }

    /// `eps_{u,t}(P_lambda)` via the power-sum homomorphism.
    pub fn eps_p(&mut self, lambda: &Partition, u: &Rational) -> Rational {
        let spec = Specialization::new(u.clone(), self.point.t().clone());
        let pp = self.macdonald_p_powersum(lambda);
        eps_ut(&pp, &spec)
    }
}

type Built = Vec<(Partition, (SymPoly, SymPoly, Rational))>;

/// Gram–Schmidt over the partitions of one weight, processed in the given
/// linear extension of dominance order (dominance-smaller first).
fn gram_schmidt(point: &ParamPoint, order: &[Partition]) -> Built {
    let mut built: Vec<(Partition, SymPoly, SymPoly, Rational)> = Vec::new();
    for lam in order {
        let d = lam.weight() as usize;
        let m_lam = SymPoly::basis_element(d.max(1), Basis::Monomial, lam.clone());
        let mut pm = m_lam.clone();
        let mut pp = m_to_p(&m_lam);
        for (_, prev_m, prev_p, prev_norm) in &built {
            let overlap = scalar_qt(&pp, prev_p, point);
            if overlap.is_zero() {
                continue;
            }
            let coeff = -overlap / prev_norm;
            pm = pm.add(&prev_m.scale(&coeff));
            pp = pp.add(&prev_p.scale(&coeff));
        }
        let norm = scalar_qt(&pp, &pp, point);
        debug_assert!(!norm.is_zero(), "vanishing Macdonald norm at {lam}");
        built.push((lam.clone(), pm, pp, norm));
    }
    built
        .into_iter()
        .map(|(lam, pm, pp, n)| (lam, (pm, pp, n)))
        .collect()
}

/// Gram–Schmidt with a caller-supplied processing order; used to verify that
/// the result does not depend on the linear extension of dominance chosen.
pub fn macdonald_p_via_extension(
    point: &ParamPoint,
    order: &[Partition],
) -> BTreeMap<Partition, SymPoly> {
    gram_schmidt(point, order)
        .into_iter()
        .map(|(lam, (pm, _, _))| (lam, pm))
        .collect()
}

/// Exact check of the integral-form principal specialization:
/// `eps_{u,t}(J_lambda) = t^{n(lambda)} (u; q, t)_lambda`.
pub fn check_eps_j(
    cache: &mut MacdonaldCache,
    lambda: &Partition,
    u: &Rational,
    n: usize,
) -> Result<CheckReport> {
    if lambda.len() > n {
        return Err(Error::InvalidParameter(format!(
            "partition {lambda} does not fit in {n} variables"
        )));
    }
    let point = cache.point().clone();
    let j = cache.j_powersum(lambda);
    let spec = Specialization::new(u.clone(), point.t().clone());
    let lhs = eps_ut(&j, &spec);
    let rhs = point.t_pow(lambda.n_lambda() as i64) * qpoch_partition(u, lambda, &point);
    Ok(CheckReport::exact(
        "eq_1_6",
        params(&[
            ("lambda", lambda.to_string()),
            ("n", n.to_string()),
            ("q", point.q().to_string()),
            ("t", point.t().to_string()),
            ("u", u.to_string()),
        ]),
        &lhs,
        &rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, rat_int};
    use crate::symfunc::{partitions_of_weight, partitions_upto};

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn generic_point() -> ParamPoint {
        ParamPoint::new(rat(1, 2), rat(1, 3)).unwrap()
    }

    #[test]
    fn scalar_qt_on_power_sums() {
        let point = generic_point();
        let p1 = SymPoly::basis_element(2, Basis::PowerSum, part(&[1]));
        let p2 = SymPoly::basis_element(2, Basis::PowerSum, part(&[2]));
        let one = Rational::one();
        // <p1, p1> = (1 - q)/(1 - t)
        assert_eq!(
            scalar_qt(&p1, &p1, &point),
            (&one - point.q()) / (&one - point.t())
        );
        // distinct partitions are orthogonal
        assert_eq!(scalar_qt(&p1, &p2, &point), Rational::zero());
        // <p2, p2> = 2 (1 - q^2)/(1 - t^2)
        assert_eq!(
            scalar_qt(&p2, &p2, &point),
            rat_int(2) * (&one - point.q_pow(2)) / (&one - point.t_pow(2))
        );
        // symmetry on a mixed pair
        let f = p1.scale(&rat(2, 3)).add(&p2.scale(&rat(-1, 5)));
        let g = p2.scale(&rat(7, 2)).add(&p1);
        assert_eq!(scalar_qt(&f, &g, &point), scalar_qt(&g, &f, &point));
    }

    #[test]
    fn macdonald_p_small_closed_forms() {
        let point = generic_point();
        let mut cache = MacdonaldCache::new(point.clone());
        // P_(1) = m_1, nothing below it
        let p1 = cache.macdonald_p(&part(&[1]), 2).unwrap();
        assert_eq!(p1.coeff(&part(&[1])), Rational::one());
        assert_eq!(p1.coeffs().count(), 1);
        // P_(11) = m_11
        let p11 = cache.macdonald_p(&part(&[1, 1]), 2).unwrap();
        assert_eq!(p11.coeff(&part(&[1, 1])), Rational::one());
        assert_eq!(p11.coeffs().count(), 1);
        // P_(2) = m_2 + (1 + q)(1 - t)/(1 - qt) m_11
        let p2 = cache.macdonald_p(&part(&[2]), 2).unwrap();
        let one = Rational::one();
        let expect =
            (&one + point.q()) * (&one - point.t()) / (&one - point.q() * point.t());
        assert_eq!(p2.coeff(&part(&[2])), Rational::one());
        assert_eq!(p2.coeff(&part(&[1, 1])), expect);
    }

    #[test]
    fn orthogonality_and_triangularity() {
        let point = generic_point();
        let mut cache = MacdonaldCache::new(point.clone());
        let lambdas = partitions_upto(6, 6);
        for la in &lambdas {
            let pa = cache.macdonald_p_powersum(la);
            for lb in &lambdas {
                if la >= lb {
                    continue;
                }
                let pb = cache.macdonald_p_powersum(lb);
                assert_eq!(
                    scalar_qt(&pa, &pb, &point),
                    Rational::zero(),
                    "<P_{la}, P_{lb}> != 0"
                );
            }
            // monic, dominance-triangular
            cache.ensure_weight(la.weight());
            let pm = &cache.p_in_m[la];
            assert_eq!(pm.coeff(la), Rational::one());
            for (mu, _) in pm.coeffs() {
                assert!(la.dominates(mu), "non-triangular term {mu} in P_{la}");
            }
        }
    }

    #[test]
    fn norm_product_formula() {
        // <P, P> = c'_lambda / c_lambda, the arm/leg product formula
        let point = generic_point();
        let mut cache = MacdonaldCache::new(point.clone());
        for lam in partitions_upto(5, 5) {
            let got = cache.p_norm(&lam);
            let want = c_prime_lambda(&lam, &point) / c_lambda(&lam, &point);
            assert_eq!(got, want, "norm mismatch at {lam}");
        }
    }

    #[test]
    fn duality_j_jstar() {
        let point = generic_point();
        let mut cache = MacdonaldCache::new(point.clone());
        let lambdas = partitions_upto(4, 4);
        for la in &lambdas {
            let j = cache.j_powersum(la);
            for lb in &lambdas {
                let jstar = {
                    let s = cache.jstar_scale(lb);
                    cache.macdonald_p_powersum(lb).scale(&s)
                };
                let got = scalar_qt(&j, &jstar, &point);
                let want = if la == lb {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                assert_eq!(got, want, "duality failed at ({la}, {lb})");
            }
        }
    }

    #[test]
    fn c_lambda_values() {
        let point = generic_point();
        let one = Rational::one();
        assert_eq!(c_lambda(&Partition::empty(), &point), one);
        assert_eq!(c_lambda(&part(&[1]), &point), &one - point.t());
        assert_eq!(
            c_lambda(&part(&[2]), &point),
            (&one - point.q() * point.t()) * (&one - point.t())
        );
    }

    #[test]
    fn qpoch_partition_values() {
        let point = generic_point();
        let u = rat(2, 7);
        let one = Rational::one();
        assert_eq!(
            qpoch_partition(&Rational::zero(), &part(&[3, 1]), &point),
            one
        );
        assert_eq!(qpoch_partition(&u, &Partition::empty(), &point), one);
        // (u; q, t)_(2,1) = (1 - u)(1 - uq)(1 - u/t)
        let want = (&one - &u) * (&one - &u * point.q()) * (&one - &u * point.t_pow(-1));
        assert_eq!(qpoch_partition(&u, &part(&[2, 1]), &point), want);
    }

    #[test]
    fn eps_examples() {
        let point = generic_point();
        let t = point.t().clone();
        // eps_{0,t} p_1 = 1/(1 - t)
        let spec = Specialization::new(Rational::zero(), t.clone());
        let p1 = SymPoly::basis_element(1, Basis::PowerSum, part(&[1]));
        assert_eq!(eps_ut(&p1, &spec), (Rational::one() - &t).recip());
        // eps_{u,t} J_(1) = 1 - u
        let mut cache = MacdonaldCache::new(point.clone());
        let j1 = cache.j_powersum(&part(&[1]));
        let u = rat(3, 5);
        let spec = Specialization::new(u.clone(), t);
        assert_eq!(eps_ut(&j1, &spec), Rational::one() - u);
        // constants map to themselves
        let c = SymPoly::constant(1, Basis::PowerSum, rat(4, 9));
        assert_eq!(eps_ut(&c, &spec), rat(4, 9));
    }

    #[test]
    fn eps_zero_gives_t_power() {
        // eps_{0,t}(J_lambda) = t^{n(lambda)}
        let point = generic_point();
        let mut cache = MacdonaldCache::new(point.clone());
        let spec = Specialization::new(Rational::zero(), point.t().clone());
        for lam in partitions_upto(6, 6) {
            let j = cache.j_powersum(&lam);
            assert_eq!(
                eps_ut(&j, &spec),
                point.t_pow(lam.n_lambda() as i64),
                "failed at {lam}"
            );
        }
    }

    #[test]
    fn eps_geometric_alphabet_agrees_with_substitution() {
        // eps_{t^n, t} f = f(1, t, ..., t^{n-1}) for n-variable expansions
        let point = generic_point();
        let mut cache = MacdonaldCache::new(point.clone());
        for n in 1..=3usize {
            let u = point.t_pow(n as i64);
            let alphabet: Vec<Rational> =
                (0..n).map(|i| point.t_pow(i as i64)).collect();
            for lam in partitions_upto(4, n) {
                let hom = cache.eps_p(&lam, &u);
                let poly = cache.macdonald_p(&lam, n).unwrap();
                let sub = poly.evaluate(&alphabet).unwrap();
                assert_eq!(hom, sub, "mismatch at {lam}, n = {n}");
            }
        }
    }

    #[test]
    fn specialization_identity_pinned_instance() {
        // lambda = (2,1), u = q^2 t at q = 1/2, t = 1/3
        let point = ParamPoint::new(rat(1, 2), rat(1, 3)).unwrap();
        let u = point.q_pow(2) * point.t();
        let mut cache = MacdonaldCache::new(point);
        let report = check_eps_j(&mut cache, &part(&[2, 1]), &u, 3).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn integral_form_specialization_identity_exact() {
        // eps_{u,t}(J_lambda) = t^{n(lambda)} (u; q, t)_lambda at several points
        let points = [
            (rat(1, 2), rat(1, 3), rat(2, 5)),
            (rat(2, 5), rat(3, 7), rat(-1, 2)),
            (rat(1, 3), rat(1, 3), rat(5, 6)),
        ];
        for (q, t, u) in points {
            let point = ParamPoint::new(q, t).unwrap();
            let mut cache = MacdonaldCache::new(point);
            for lam in partitions_upto(6, 6) {
                let n = lam.weight().max(1) as usize;
                let report = check_eps_j(&mut cache, &lam, &u, n).unwrap();
                assert!(report.passed(), "failed at {lam}: {report:?}");
            }
        }
    }

    #[test]
    fn gram_schmidt_extension_independence() {
        let point = generic_point();
        // weight 4: dominance is a total order, any extension agrees trivially;
        // weight 6 has incomparable pairs, so the two extensions differ.
        for d in [4u32, 6] {
            let mut ext1 = partitions_of_weight(d, d as usize);
            ext1.reverse(); // canonical: most-spread first
            let mut ext2 = ext1.clone();
            // order by n(lambda) descending, ties in canonical order;
            // n(.) strictly decreases along dominance and equal n means
            // incomparable, so this is a valid linear extension that
            // differs from ext1 at weight 6
            ext2.sort_by(|a, b| {
                b.n_lambda()
                    .cmp(&a.n_lambda())
                    .then_with(|| a.cmp(b))
            });
            let built1 = macdonald_p_via_extension(&point, &ext1);
            let built2 = macdonald_p_via_extension(&point, &ext2);
            assert_eq!(built1, built2, "extensions disagree at weight {d}");
            if d == 6 {
                assert_ne!(ext1, ext2, "expected genuinely different orders");
            }
        }
    }
}
