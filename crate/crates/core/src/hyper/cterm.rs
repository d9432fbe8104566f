//! The constant-term scalar product `<f, g>' = (1/n!) [f gbar Delta]_1` with
//! `Delta = prod_{i != j} (x_i x_j^{-1}; q)_k` at `t = q^k`, its normalized
//! variant, the q-Dyson closed form of `<1, 1>'`, and the checks built on it.

use num::{One, Signed, Zero};

use super::series::{phi_two, qbinomial_coeffs, symmetric_product_series, HyperParams};
use crate::macdonald::MacdonaldCache;
use crate::report::{params, CheckReport};
use crate::scalars::{
    factorial, pow_i, qpoch_finite, qpoch_infinite, rat_int, Rational, TruncatedValue,
};
use crate::symfunc::{partitions_upto, Basis, LaurentPoly, Partition, SymPoly};
use crate::{Error, Result};

/// The Laurent-polynomial weight `Delta` for one `(n, k, q)`, cached so a
/// grid of scalar products reuses the expansion.
pub struct CtKernel {
    n: usize,
    k: u32,
    q: Rational,
    delta: LaurentPoly,
    norm_one: Rational, // <1, 1>'
}

impl CtKernel {
    pub fn new(n: usize, k: u32, q: Rational) -> Result<Self> {
        if !q.is_positive() || q >= Rational::one() {
            return Err(Error::InvalidParameter(format!("q = {q} not in (0, 1)")));
        }
        let mut delta = LaurentPoly::one(n);
        let one = Rational::one();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut qr = Rational::one();
                for _ in 0..k {
                    // (1 - q^r x_i / x_j)
                    let mut exps = vec![0i32; n];
                    exps[i] = 1;
                    exps[j] = -1;
                    let factor =
                        LaurentPoly::one(n).add(&LaurentPoly::monomial(exps, -qr.clone()));
                    delta = delta.mul(&factor);
                    qr *= &q;
                }
            }
        }
        let norm_one = delta.constant_term() / Rational::from(factorial(n as u64));
        let _ = one;
        Ok(Self {
            n,
            k,
            q,
            delta,
            norm_one,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// `<1, 1>'`, the normalizing constant term.
    pub fn norm_one(&self) -> &Rational {
        &self.norm_one
    }

    /// `<f, g>' = (1/n!) [f gbar Delta]_1`, exact.
    ///
    /// The product with `Delta` is never expanded: the constant term is the
    /// dot product of `f gbar` against `Delta` at mirrored exponents.
    pub fn scalar_prime(&self, f: &SymPoly, g: &SymPoly) -> Rational {
        assert_eq!(f.nvars(), self.n);
        assert_eq!(g.nvars(), self.n);
        let h = f.to_laurent().mul(&g.to_laurent().bar_involution());
        let mut acc = Rational::zero();
        for (exps, c) in h.terms() {
            let mirrored: Vec<i32> = exps.iter().map(|&e| -e).collect();
            let d = self.delta.coeff(&mirrored);
            if !d.is_zero() {
                acc += c * d;
            }
        }
        acc / Rational::from(factorial(self.n as u64))
    }

    /// `<f, g>'' = <f, g>' / <1, 1>'`.
    pub fn scalar_dprime(&self, f: &SymPoly, g: &SymPoly) -> Rational {
        self.scalar_prime(f, g) / &self.norm_one
    }
}

/// Free-function form of the constant-term scalar product.
pub fn scalar_ct(f: &SymPoly, g: &SymPoly, n: usize, k: u32, q: &Rational) -> Result<Rational> {
    Ok(CtKernel::new(n, k, q.clone())?.scalar_prime(f, g))
}

/// Closed form of `<1, 1>'`: with `t = q^k` the infinite products telescope
/// to `(q; q)_{kn-1} / ((q; q)_{k-1}^n prod_{i=1}^{n-1} (1 - q^{ki}))`,
/// an exact rational (`k = 0` degenerates to `1/n!`).
pub fn qdyson_value(n: usize, k: u32, q: &Rational, _tol: &Rational) -> Result<TruncatedValue> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if k == 0 {
        let v = Rational::from(factorial(n as u64)).recip();
        return Ok(TruncatedValue::exact(v));
    }
    let one = Rational::one();
    let kn = k * n as u32;
    let mut v = qpoch_finite(q, q, kn - 1) / num::pow::pow(qpoch_finite(q, q, k - 1), n);
    for i in 1..n {
        v /= &one - pow_i(q, (k as i64) * i as i64);
    }
    Ok(TruncatedValue::exact(v))
}

/// The same constant through the infinite-product form
/// `(t; q)_inf^n / ((t^n; q)_inf (q; q)_inf^{n-1}) prod_{i=1}^{n-1} (1-t^i)^{-1}`,
/// with certified truncation. Used as an independent route against
/// [`qdyson_value`].
pub fn qdyson_value_infinite_route(
    n: usize,
    k: u32,
    q: &Rational,
    tol: &Rational,
) -> Result<TruncatedValue> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter("need n >= 1, k >= 1".into()));
    }
    let one = Rational::one();
    let t = pow_i(q, k as i64);
    let tn = pow_i(&t, n as i64);
    let piece = tol / rat_int(8 * n as i64);
    let mut acc = TruncatedValue::one();
    for _ in 0..n {
        acc = acc.mul(&qpoch_infinite(&t, q, &piece)?);
    }
    acc = acc.div(&qpoch_infinite(&tn, q, &piece)?)?;
    let qq = qpoch_infinite(q, q, &piece)?;
    for _ in 1..n {
        acc = acc.div(&qq)?;
    }
    for i in 1..n {
        acc = acc.scale(&(&one - pow_i(&t, i as i64)).recip());
    }
    Ok(acc)
}

/// Exact check that the constant-term normalizer equals its closed form.
pub fn check_qdyson(n: usize, k: u32, q: &Rational) -> Result<CheckReport> {
    let kernel = CtKernel::new(n, k, q.clone())?;
    let closed = qdyson_value(n, k, q, &rat_int(1))?;
    Ok(CheckReport::exact(
        "qdyson",
        params(&[
            ("n", n.to_string()),
            ("k", k.to_string()),
            ("q", q.to_string()),
        ]),
        kernel.norm_one(),
        &closed.value,
    ))
}

/// Exact check of the norm conjecture: the normalized constant-term norm
/// `<P_lambda, P_lambda>''` equals
/// `eps_{t^n,t}(P_lambda) / eps_{q t^{n-1},t}(Q_lambda)`.
pub fn check_c1(
    cache: &mut MacdonaldCache,
    kernel: &CtKernel,
    lambda: &Partition,
) -> Result<CheckReport> {
    let point = cache.point().clone();
    let n = kernel.n();
    if lambda.len() > n {
        return Err(Error::InvalidParameter(format!(
            "partition {lambda} does not fit in {n} variables"
        )));
    }
    if point.k() != Some(kernel.k()) || point.q() != kernel.q() {
        return Err(Error::InvalidParameter(
            "cache point and constant-term kernel disagree".into(),
        ));
    }
    let pm = cache.macdonald_p(lambda, n)?;
    let lhs = kernel.scalar_dprime(&pm, &pm);
    let eps_num = cache.eps_p(lambda, &point.t_pow(n as i64));
    let u_den = point.q() * point.t_pow(n as i64 - 1);
    // eps(Q) = eps(P) / <P, P>
    let eps_den = cache.eps_p(lambda, &u_den) / cache.p_norm(lambda);
    let rhs = eps_num / eps_den;
    Ok(CheckReport::exact(
        "c1",
        params(&[
            ("lambda", lambda.to_string()),
            ("n", n.to_string()),
            ("k", kernel.k().to_string()),
            ("q", point.q().to_string()),
        ]),
        &lhs,
        &rhs,
    ))
}

/// Exact check of the normalized-kernel identity and its one-alphabet
/// specialization.
///
/// Builds `Pi'' = sum P_lambda(x) P_lambda(y) / <P_lambda, P_lambda>''`
/// through the constant-term route and compares with the one-parameter
/// two-alphabet series at `a = q t^{n-1}` term by term; then specializes the
/// second alphabet and compares with the product
/// `prod_i (x_i; q)_{k(n-1)+1}^{-1}` degreewise.
pub fn check_pi_normalized(
    cache: &mut MacdonaldCache,
    kernel: &CtKernel,
    cap: u32,
) -> Result<CheckReport> {
    let point = cache.point().clone();
    let n = kernel.n();
    if point.k() != Some(kernel.k()) || point.q() != kernel.q() {
        return Err(Error::InvalidParameter(
            "cache point and constant-term kernel disagree".into(),
        ));
    }
    let a = point.q() * point.t_pow(n as i64 - 1);
    let hp = HyperParams::new(vec![a.clone()], vec![], point.clone(), n, cap)?;
    let series = phi_two(&hp, cache, cap)?;
    let mut first_fail: Option<Partition> = None;
    let mut dprime_norms = Vec::new();
    for lam in partitions_upto(cap, n) {
        let pm = cache.macdonald_p(&lam, n)?;
        let norm_dprime = kernel.scalar_dprime(&pm, &pm);
        let lhs_coeff = norm_dprime.recip();
        if lhs_coeff != series.coeff(&lam) && first_fail.is_none() {
            first_fail = Some(lam.clone());
        }
        dprime_norms.push((lam, norm_dprime));
    }
    // one-alphabet specialization against the finite-Pochhammer product
    let mut specialized = SymPoly::zero(n, Basis::Monomial);
    let tn = point.t_pow(n as i64);
    for (lam, norm_dprime) in &dprime_norms {
        let eps = cache.eps_p(lam, &tn);
        let pm = cache.macdonald_p(lam, n)?;
        specialized = specialized.add(&pm.scale(&(eps / norm_dprime)));
    }
    let coeffs = qbinomial_coeffs(&a, point.q(), cap);
    let product = symmetric_product_series(&coeffs, n, cap);
    let spec_ok = &specialized == product.poly();
    let pass = first_fail.is_none() && spec_ok;
    Ok(CheckReport::verdict(
        "pi_normalized",
        params(&[
            ("n", n.to_string()),
            ("k", kernel.k().to_string()),
            ("q", point.q().to_string()),
            ("cap", cap.to_string()),
            (
                "first_fail",
                first_fail.map_or("none".into(), |l| l.to_string()),
            ),
        ]),
        pass,
        format!("kernel_coeffs_match={}", pass || spec_ok),
        format!("specialization_matches={spec_ok}"),
    ))
}
