//! Gauss summation for the two-parameter, one-lower-parameter series at the
//! geometric evaluation point `x_i = c t^{1-i}`, `c = b/(a1 a2)`.
//!
//! The left side is the exact partial sum of the series; its tail is
//! certified by a majorant argument: every term is the corresponding term of
//! the no-parameter series (whose sum is the product `prod 1/(x_i; q)_inf`)
//! times a parameter ratio that is bounded by a computable constant
//! `K = K(a1) K(a2) / K(b)` built from convergent one-variable products. The
//! omitted tail is therefore at most `K * (product - partial majorant sum)`,
//! both factors certified. Terminating cases (`a_i = q^{-N}`) are summed
//! exactly and compared exactly whenever the right side telescopes to a
//! rational.
//!
//! Variable counts 1 and 2 are supported; for those the Macdonald polynomials
//! indexed by at most two rows have closed single-row expansions, which lets
//! the partial sums reach depths far beyond what Gram-Schmidt tables could.

use num::{One, Signed, Zero};

use crate::macdonald::c_prime_lambda;
use crate::report::{params, CheckReport};
use crate::scalars::{qpoch_finite, qpoch_infinite, ParamPoint, Rational, TruncatedValue};
use crate::symfunc::Partition;
use crate::{Error, Result};

/// Finds `m` with `r = q^m` exactly, for `0 <= m <= max`.
pub fn log_q_exact(r: &Rational, q: &Rational, max: u32) -> Option<u32> {
    if !r.is_positive() {
        return None;
    }
    let mut cur = Rational::one();
    for m in 0..=max {
        if &cur == r {
            return Some(m);
        }
        cur *= q;
        // powers of q in (0,1) decrease strictly; once below r, no match
        if &cur < r {
            return None;
        }
    }
    None
}

/// The termination order of an upper parameter: `N` with `a = q^{-N}`.
fn terminating_order(a: &Rational, q: &Rational) -> Option<u32> {
    if a.abs() <= Rational::one() {
        return None;
    }
    log_q_exact(&a.recip(), q, 512)
}

/// `prod (u; q)_inf / prod (v; q)_inf` over parameter lists, telescoping
/// pairs whose ratio is an exact power of `q` into finite products and
/// evaluating the remainder with certified truncation. Exact (zero tail)
/// when everything telescopes.
// indices are needed: matched entries are nulled out mid-iteration
#[allow(clippy::needless_range_loop)]
pub fn poch_ratio_product(
    nums: &[Rational],
    dens: &[Rational],
    q: &Rational,
    tol: &Rational,
) -> Result<TruncatedValue> {
    let one = Rational::one();
    let mut nums: Vec<Option<Rational>> = nums.iter().cloned().map(Some).collect();
    let mut dens: Vec<Option<Rational>> = dens.iter().cloned().map(Some).collect();
    let mut exact = Rational::one();
    for d in dens.iter().flatten() {
        if d == &one {
            return Err(Error::InvalidParameter(
                "denominator Pochhammer (1; q)_inf vanishes".into(),
            ));
        }
    }
    // telescope matching numerator/denominator pairs
    for ni in 0..nums.len() {
        let u = match &nums[ni] {
            Some(u) => u.clone(),
            None => continue,
        };
        for dj in 0..dens.len() {
            let v = match &dens[dj] {
                Some(v) => v.clone(),
                None => continue,
            };
            if u.is_zero() || v.is_zero() {
                if u.is_zero() && v.is_zero() {
                    nums[ni] = None;
                    dens[dj] = None;
                    break;
                }
                continue;
            }
            if (&u / &v).is_positive() {
                if let Some(m) = log_q_exact(&(&u / &v), q, 512) {
                    // u = v q^m: ratio is 1/(v; q)_m
                    exact /= qpoch_finite(&v, q, m);
                    nums[ni] = None;
                    dens[dj] = None;
                    break;
                }
                if let Some(m) = log_q_exact(&(&v / &u), q, 512) {
                    // v = u q^m: ratio is (u; q)_m
                    exact *= qpoch_finite(&u, q, m);
                    nums[ni] = None;
                    dens[dj] = None;
                    break;
                }
            }
        }
    }
    let mut acc = TruncatedValue::exact(exact);
    for u in nums.into_iter().flatten() {
        if u == one {
            return Ok(TruncatedValue::exact(Rational::zero()));
        }
        acc = acc.mul(&qpoch_infinite(&u, q, tol)?);
    }
    for v in dens.into_iter().flatten() {
        acc = acc.div(&qpoch_infinite(&v, q, tol)?)?;
    }
    Ok(acc)
}

/// Single-row expansion tables: `ratio[i] = (t; q)_i / (q; q)_i` and the
/// one-row Macdonald polynomial `P_(m)(x1, x2) = ratio[m]^{-1} sum_{i+j=m}
/// ratio[i] ratio[j] x1^i x2^j`.
struct TwoVarTables {
    ratio: Vec<Rational>,
    x1_pow: Vec<Rational>,
    x2_pow: Vec<Rational>,
}

impl TwoVarTables {
    fn new(point: &ParamPoint, x: &[Rational], cap: u32) -> Self {
        let one = Rational::one();
        let mut ratio = Vec::with_capacity(cap as usize + 1);
        ratio.push(Rational::one());
        let (mut tq, mut qq) = (point.t().clone(), point.q().clone());
        for i in 0..cap {
            let prev = ratio[i as usize].clone();
            ratio.push(prev * (&one - &tq) / (&one - &qq));
            tq *= point.q();
            qq *= point.q();
        }
        let powers = |v: &Rational| {
            let mut out = Vec::with_capacity(cap as usize + 1);
            out.push(Rational::one());
            for i in 0..cap as usize {
                let prev = out[i].clone();
                out.push(prev * v);
            }
            out
        };
        Self {
            ratio,
            x1_pow: powers(&x[0]),
            x2_pow: if x.len() > 1 {
                powers(&x[1])
            } else {
                Vec::new()
            },
        }
    }

    /// `P_lambda(x)` for a partition with at most two rows.
    fn p_eval(&self, l1: u32, l2: u32) -> Rational {
        if self.x2_pow.is_empty() {
            debug_assert_eq!(l2, 0);
            return self.x1_pow[l1 as usize].clone();
        }
        let m = (l1 - l2) as usize;
        let mut row = Rational::zero();
        for i in 0..=m {
            row += &self.ratio[i] * &self.ratio[m - i] * &self.x1_pow[i] * &self.x2_pow[m - i];
        }
        row /= &self.ratio[m];
        // factor out e_2^{l2}
        row * &self.x1_pow[l2 as usize] * &self.x2_pow[l2 as usize]
    }
}

/// `(a; q, t)_lambda` for a two-row partition, exact.
fn poch_partition_2(a: &Rational, l1: u32, l2: u32, point: &ParamPoint) -> Rational {
    let mut acc = qpoch_finite(a, point.q(), l1);
    if l2 > 0 {
        acc *= qpoch_finite(&(a * point.t_pow(-1)), point.q(), l2);
    }
    acc
}

/// Certified upper bound for `prod_{i<=n, j>=0} (1 + |a| t^{1-i} q^j)`, which
/// dominates `|(a; q, t)_lambda|` for every partition of length `<= n`.
fn param_upper_bound(a: &Rational, n: usize, point: &ParamPoint) -> Result<Rational> {
    let mut acc = Rational::one();
    let piece = crate::scalars::rat(1, 1_000_000);
    for i in 1..=n {
        let u = -(a.abs() * point.t_pow(1 - i as i64));
        if u.abs() >= Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "|a| t^{{1-i}} >= 1 for a = {a}: tail bound unavailable"
            )));
        }
        acc *= qpoch_infinite(&u, point.q(), &piece)?.upper();
    }
    Ok(acc)
}

/// Certified positive lower bound for `prod_{i<=n, j>=0} (1 - |b| t^{1-i} q^j)`,
/// which bounds `|(b; q, t)_lambda|` away from zero for every length `<= n`.
fn param_lower_bound(b: &Rational, n: usize, point: &ParamPoint) -> Result<Rational> {
    let mut acc = Rational::one();
    let piece = crate::scalars::rat(1, 1_000_000);
    for i in 1..=n {
        let u = b.abs() * point.t_pow(1 - i as i64);
        if u >= Rational::one() {
            return Err(Error::InvalidParameter(format!(
                "|b| t^{{1-i}} >= 1 for b = {b}: lower parameter too large"
            )));
        }
        let lo = qpoch_infinite(&u, point.q(), &piece)?.lower();
        if !lo.is_positive() {
            return Err(Error::TruncationBudget(
                "parameter lower bound not certified positive".into(),
            ));
        }
        acc *= lo;
    }
    Ok(acc)
}

/// The Gauss summation check. Compares the series evaluated at
/// `x_i = c t^{1-i}` against the product of four Pochhammer ratios per
/// variable. Terminating cases are compared exactly; nonterminating cases
/// carry a certified tail budget and pass iff `|lhs - rhs| <= tol + budget`.
pub fn gauss_check(
    a1: &Rational,
    a2: &Rational,
    b: &Rational,
    n: usize,
    point: &ParamPoint,
    cap: u32,
    tol: &Rational,
) -> Result<CheckReport> {
    if n == 0 || n > 2 {
        return Err(Error::Unsupported(
            "the Gauss check evaluates deep series; variable counts 1 and 2 are supported".into(),
        ));
    }
    if a1.is_zero() || a2.is_zero() || b.is_zero() {
        return Err(Error::InvalidParameter(
            "zero parameter degenerates the evaluation point".into(),
        ));
    }
    let one = Rational::one();
    let c = b / (a1 * a2);
    let x: Vec<Rational> = (0..n).map(|i| &c * point.t_pow(-(i as i64))).collect();
    for xi in &x {
        if xi.abs() >= one {
            return Err(Error::InvalidParameter(format!(
                "evaluation coordinate |{xi}| >= 1: series diverges"
            )));
        }
    }
    let term_n = [terminating_order(a1, point.q()), terminating_order(a2, point.q())]
        .into_iter()
        .flatten()
        .min();

    // right side: per variable, two numerator and two denominator products
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for i in 0..n as i64 {
        let tp = point.t_pow(-i);
        nums.push(b / a1 * &tp);
        nums.push(b / a2 * &tp);
        dens.push(b * &tp);
        dens.push(&c * &tp);
    }
    let rhs_tol = tol / crate::scalars::rat_int(4);
    let rhs = poch_ratio_product(&nums, &dens, point.q(), &rhs_tol)?;

    let report_params = |d: u32, terminating: bool| {
        params(&[
            ("a1", a1.to_string()),
            ("a2", a2.to_string()),
            ("b", b.to_string()),
            ("c", c.to_string()),
            ("n", n.to_string()),
            ("q", point.q().to_string()),
            ("t", point.t().to_string()),
            ("depth", d.to_string()),
            ("terminating", terminating.to_string()),
        ])
    };

    if let Some(nmax) = term_n {
        // exact finite sum over lambda_1 <= nmax
        for i in 1..=n {
            for j in 0..=nmax {
                if b * point.t_pow(1 - i as i64) * point.q_pow(j as i64) == one {
                    return Err(Error::VanishingPochhammer {
                        param: b.to_string(),
                        partition: Partition::new(vec![j + 1; i]).unwrap().to_string(),
                    });
                }
            }
        }
        let tables = TwoVarTables::new(point, &x, nmax);
        let mut sum = Rational::zero();
        for l1 in 0..=nmax {
            let l2_max = if n == 2 { l1 } else { 0 };
            for l2 in 0..=l2_max {
                let lam_poch = poch_partition_2(a1, l1, l2, point)
                    * poch_partition_2(a2, l1, l2, point)
                    / poch_partition_2(b, l1, l2, point);
                if lam_poch.is_zero() {
                    continue;
                }
                let lam = Partition::from_unsorted(vec![l1, l2]);
                let base = point.t_pow(l2 as i64) * tables.p_eval(l1, l2)
                    / c_prime_lambda(&lam, point);
                sum += lam_poch * base;
            }
        }
        let lhs = TruncatedValue::exact(sum);
        return Ok(if rhs.is_exact() {
            CheckReport::exact("gauss", report_params(nmax, true), &lhs.value, &rhs.value)
        } else {
            CheckReport::truncated("gauss", report_params(nmax, true), &lhs, &rhs, tol)
        });
    }

    // nonterminating: majorant-certified truncation
    let kbound = param_upper_bound(a1, n, point)? * param_upper_bound(a2, n, point)?
        / param_lower_bound(b, n, point)?;
    let mut product_upper = Rational::one();
    let poch_tol = crate::scalars::rat(1, 1_000_000_000_000);
    for xi in &x {
        let px = qpoch_infinite(xi, point.q(), &poch_tol)?;
        let lo = px.lower();
        if !lo.is_positive() {
            return Err(Error::TruncationBudget(
                "majorant product bound not certified positive".into(),
            ));
        }
        product_upper /= lo;
    }

    let tables = TwoVarTables::new(point, &x, cap);
    let mut sum = Rational::zero();
    let mut majorant = Rational::zero();
    let target = tol / crate::scalars::rat_int(2);
    let mut reached = None;
    for d in 0..=cap {
        for l1 in d.div_ceil(2)..=d {
            let l2 = d - l1;
            if l2 > 0 && n < 2 {
                continue;
            }
            if l2 > l1 {
                continue;
            }
            let lam = Partition::from_unsorted(vec![l1, l2]);
            let base =
                point.t_pow(l2 as i64) * tables.p_eval(l1, l2) / c_prime_lambda(&lam, point);
            debug_assert!(!base.is_negative());
            let lam_poch = poch_partition_2(a1, l1, l2, point)
                * poch_partition_2(a2, l1, l2, point)
                / poch_partition_2(b, l1, l2, point);
            sum += lam_poch * &base;
            majorant += base;
        }
        let tail = &kbound * (&product_upper - &majorant);
        if tail <= target {
            reached = Some((d, tail));
            break;
        }
    }
    let (depth, tail) = reached.ok_or_else(|| {
        Error::TruncationBudget(format!(
            "series tail not certified below {tol} within depth {cap}"
        ))
    })?;
    debug_assert!(!tail.is_negative());
    let lhs = TruncatedValue::new(sum, tail);
    Ok(CheckReport::truncated(
        "gauss",
        report_params(depth, false),
        &lhs,
        &rhs,
        tol,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::MacdonaldCache;
    use crate::scalars::{parse_rational, pow_i, rat};

    #[test]
    fn log_q_detects_exact_powers() {
        let q = rat(1, 2);
        assert_eq!(log_q_exact(&rat(1, 8), &q, 20), Some(3));
        assert_eq!(log_q_exact(&Rational::one(), &q, 20), Some(0));
        assert_eq!(log_q_exact(&rat(1, 3), &q, 20), None);
        assert_eq!(log_q_exact(&rat(-1, 4), &q, 20), None);
    }

    #[test]
    fn poch_ratio_telescopes_exactly() {
        // (q^2)(q^5) / ((q^3)(q^4)) = (1 - q^2)/(1 - q^4)
        let q = rat(1, 2);
        let tol = rat(1, 1_000_000);
        let v = poch_ratio_product(
            &[pow_i(&q, 2), pow_i(&q, 5)],
            &[pow_i(&q, 3), pow_i(&q, 4)],
            &q,
            &tol,
        )
        .unwrap();
        assert!(v.is_exact());
        let want = (Rational::one() - pow_i(&q, 2)) / (Rational::one() - pow_i(&q, 4));
        assert_eq!(v.value, want);
    }

    #[test]
    fn two_variable_row_formula_matches_gram_schmidt() {
        let point = ParamPoint::new(rat(1, 2), rat(1, 3)).unwrap();
        let mut cache = MacdonaldCache::new(point.clone());
        let x = [rat(2, 7), rat(3, 5)];
        let tables = TwoVarTables::new(&point, &x, 6);
        for l1 in 0..=4u32 {
            for l2 in 0..=l1.min(2) {
                let lam = Partition::from_unsorted(vec![l1, l2]);
                let via_table = tables.p_eval(l1, l2);
                let via_cache = cache
                    .macdonald_p(&lam, 2)
                    .unwrap()
                    .evaluate(&x)
                    .unwrap();
                assert_eq!(via_table, via_cache, "mismatch at ({l1},{l2})");
            }
        }
    }

    #[test]
    fn classical_one_variable_instance() {
        // a1 = a2 = q, b = q^3 at q = 1/2, n = 1
        let q = rat(1, 2);
        let point = ParamPoint::with_k(q.clone(), 1).unwrap();
        let tol = parse_rational("1e-10").unwrap();
        let r = gauss_check(&q, &q, &pow_i(&q, 3), 1, &point, 300, &tol).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn terminating_case_is_exact() {
        // a1 = q^{-2}, a2 = q, b = q^3: both sides rational, equal exactly
        let q = rat(1, 2);
        let point = ParamPoint::with_k(q.clone(), 1).unwrap();
        let tol = parse_rational("1e-10").unwrap();
        let r = gauss_check(&pow_i(&q, -2), &q, &pow_i(&q, 3), 1, &point, 300, &tol).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.tail_budget, "0");
        // the known value 1/(1 + q^2) = 4/5
        assert_eq!(r.rhs, "4/5");
        assert_eq!(r.lhs, "4/5");
    }

    #[test]
    fn second_parameter_equal_to_lower_collapses() {
        // a2 = b makes (a2)_lambda/(b)_lambda = 1, so the coefficient of
        // every term collapses to the one-parameter form
        let point = ParamPoint::with_k(rat(1, 2), 1).unwrap();
        let a2 = rat(3, 7);
        for (l1, l2) in [(1u32, 0u32), (2, 0), (2, 1), (3, 2)] {
            let num = poch_partition_2(&a2, l1, l2, &point);
            let den = poch_partition_2(&a2, l1, l2, &point);
            assert_eq!(num / den, Rational::one());
        }
    }

    #[test]
    fn two_variable_nonterminating_instance() {
        let q = rat(1, 2);
        let point = ParamPoint::with_k(q.clone(), 1).unwrap();
        let tol = parse_rational("1e-8").unwrap();
        let r = gauss_check(&rat(1, 3), &rat(2, 5), &rat(1, 30), 2, &point, 400, &tol).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn divergent_point_rejected() {
        // c t^{1-n} >= 1
        let q = rat(1, 2);
        let point = ParamPoint::with_k(q.clone(), 1).unwrap();
        let tol = rat(1, 1000);
        let err = gauss_check(&rat(1, 3), &rat(1, 3), &rat(1, 3), 2, &point, 50, &tol);
        assert!(err.is_err());
    }
}
