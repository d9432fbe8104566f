//! Exact rational scalars and the scalar q-functions.
//!
//! The coefficient domain everywhere is [`Rational`] (arbitrary-precision,
//! always reduced, positive denominator). Infinite products are returned as
//! [`TruncatedValue`]s: an exact rational partial value plus a certified
//! absolute bound on the omitted tail, so downstream comparisons can account
//! for every drop of truncation error.

use std::fmt::Write as _;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar; arbitrary precision, reduced, denominator > 0.
pub type Rational = BigRational;

/// `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// `r^e` for signed integer exponents. `r` must be nonzero when `e < 0`.
pub fn pow_i(r: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let mag = num::pow::pow(r.clone(), e.unsigned_abs() as usize);
    if e > 0 {
        mag
    } else {
        mag.recip()
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

/// Binomial coefficient `C(n, k)` for integer `n >= 0`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Parses a rational from `p/q`, an integer, a plain decimal (`0.25`), or
/// scientific notation (`1e-10`, `2.5e-3`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::InvalidParameter(format!("cannot parse rational from {s:?}"));
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num_s, den_s)) = s.split_once('/') {
        let n: BigInt = num_s.trim().parse().map_err(|_| err())?;
        let d: BigInt = den_s.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if frac_part.chars().any(|c| !c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!(
        "{}{}",
        if int_part.is_empty() { "0" } else { int_part },
        frac_part
    );
    let n: BigInt = digits.parse().map_err(|_| err())?;
    let scale = exp - frac_part.len() as i64;
    let ten = rat_int(10);
    Ok(Rational::from(n) * pow_i(&ten, scale))
}

/// Renders a rational as a decimal string with `digits` places after the
/// point, rounded half away from zero. Deterministic; used for report output.
pub fn decimal_string(r: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * Rational::from(scale.clone());
    let (num, den) = (scaled.numer(), scaled.denom());
    // round(|num|/den) half away from zero
    let two = BigInt::from(2);
    let mag = (num.abs() * &two + den) / (den * &two);
    let sign = if num.sign() == Sign::Minus && !mag.is_zero() {
        "-"
    } else {
        ""
    };
    let (int_part, frac_part) = (mag.clone() / &scale, mag % &scale);
    let mut out = String::new();
    let _ = write!(out, "{sign}{int_part}");
    if digits > 0 {
        let frac = frac_part.to_string();
        let _ = write!(out, ".{}{}", "0".repeat(digits as usize - frac.len()), frac);
    }
    out
}

// ---------------------------------------------------------------------------
// TruncatedValue
// ---------------------------------------------------------------------------

/// An exact rational value together with a certified absolute bound on the
/// truncation error: the true quantity lies in `[value - tail, value + tail]`.
///
/// Arithmetic on `TruncatedValue`s propagates the bounds (interval-style), so
/// a chain of sums, products, and quotients of truncated quantities ends with
/// an honest total budget.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedValue {
    pub value: Rational,
    pub tail_bound: Rational,
}

impl TruncatedValue {
    pub fn new(value: Rational, tail_bound: Rational) -> Self {
        debug_assert!(!tail_bound.is_negative());
        Self { value, tail_bound }
    }

    /// An exact quantity (zero tail).
    pub fn exact(value: Rational) -> Self {
        Self {
            value,
            tail_bound: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Self::exact(Rational::one())
    }

    pub fn is_exact(&self) -> bool {
        self.tail_bound.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            value: &self.value + &other.value,
            tail_bound: &self.tail_bound + &other.tail_bound,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            value: &self.value - &other.value,
            tail_bound: &self.tail_bound + &other.tail_bound,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let tail = self.value.abs() * &other.tail_bound
            + other.value.abs() * &self.tail_bound
            + &self.tail_bound * &other.tail_bound;
        Self {
            value: &self.value * &other.value,
            tail_bound: tail,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            value: &self.value * c,
            tail_bound: &self.tail_bound * c.abs(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            value: -self.value.clone(),
            tail_bound: self.tail_bound.clone(),
        }
    }

    /// Interval division. Fails if the divisor interval contains zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let denom_low = other.value.abs() - &other.tail_bound;
        if !denom_low.is_positive() {
            return Err(Error::TruncationBudget(
                "division by an interval containing zero".into(),
            ));
        }
        let value = &self.value / &other.value;
        // |v/w - v~/w~| <= e_v/m + |v~| e_w / (m |w~|), m = |w~| - e_w
        let tail = &self.tail_bound / &denom_low
            + self.value.abs() * &other.tail_bound / (&denom_low * other.value.abs());
        Ok(Self {
            value,
            tail_bound: tail,
        })
    }

    /// Whether the two intervals agree within `tol` plus both tail budgets.
    pub fn agrees_within(&self, other: &Self, tol: &Rational) -> bool {
        (&self.value - &other.value).abs() <= tol + &self.tail_bound + &other.tail_bound
    }

    /// Certified upper bound on the true value.
    pub fn upper(&self) -> Rational {
        &self.value + &self.tail_bound
    }

    /// Certified lower bound on the true value.
    pub fn lower(&self) -> Rational {
        &self.value - &self.tail_bound
    }
}

// ---------------------------------------------------------------------------
// Parameter points
// ---------------------------------------------------------------------------

/// An exact `(q, t)` parameter point with `0 < q < 1`, `0 < t < 1`.
///
/// When `k` is present, `t = q^k` exactly; the constant-term machinery and
/// the Selberg module require that form.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoint {
    q: Rational,
    t: Rational,
    k: Option<u32>,
}

impl ParamPoint {
    /// Generic `(q, t)` in `(0, 1) x (0, 1)`.
    pub fn new(q: Rational, t: Rational) -> Result<Self> {
        if !q.is_positive() || q >= Rational::one() {
            return Err(Error::InvalidParameter(format!("q = {q} not in (0, 1)")));
        }
        if !t.is_positive() || t >= Rational::one() {
            return Err(Error::InvalidParameter(format!("t = {t} not in (0, 1)")));
        }
        Ok(Self { q, t, k: None })
    }

    /// `t = q^k` with a positive integer `k`.
    pub fn with_k(q: Rational, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be >= 1 (t = q^k < 1)".into()));
        }
        let t = pow_i(&q, k as i64);
        let mut p = Self::new(q, t)?;
        p.k = Some(k);
        Ok(p)
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn k(&self) -> Option<u32> {
        self.k
    }

    /// `t^e` for signed `e`.
    pub fn t_pow(&self, e: i64) -> Rational {
        pow_i(&self.t, e)
    }

    /// `q^e` for signed `e`.
    pub fn q_pow(&self, e: i64) -> Rational {
        pow_i(&self.q, e)
    }
}

// ---------------------------------------------------------------------------
// q-Pochhammer symbols and q-Gamma
// ---------------------------------------------------------------------------

/// Finite q-Pochhammer `(u; q)_m = prod_{i=0}^{m-1} (1 - u q^i)`. Exact.
pub fn qpoch_finite(u: &Rational, q: &Rational, m: u32) -> Rational {
    let one = Rational::one();
    let mut acc = Rational::one();
    let mut uq = u.clone();
    for _ in 0..m {
        acc *= &one - &uq;
        uq *= q;
    }
    acc
}

/// Infinite q-Pochhammer `(u; q)_inf` truncated so the certified tail bound
/// is at most `tol`.
///
/// The partial product stops at the smallest `N` for which
/// `S = |u| q^N / (1 - q)` gives `|P_N| * S / (1 - S) <= tol`; that quantity
/// bounds the omitted factors via the geometric-series comparison
/// `prod_{i>=N} (1 - u q^i) in [1 - S, 1/(1 - S)]`.
pub fn qpoch_infinite(u: &Rational, q: &Rational, tol: &Rational) -> Result<TruncatedValue> {
    if !q.is_positive() || q >= &Rational::one() {
        return Err(Error::InvalidParameter(format!("q = {q} not in (0, 1)")));
    }
    if u.abs() >= Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "|u| = |{u}| >= 1: infinite product not supported"
        )));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidParameter("tol must be > 0".into()));
    }
    if u.is_zero() {
        return Ok(TruncatedValue::exact(Rational::one()));
    }
    let one = Rational::one();
    let one_minus_q = &one - q;
    let mut product = Rational::one();
    let mut uq = u.clone(); // u q^N after N factors
    for _ in 0..100_000u32 {
        let s = uq.abs() / &one_minus_q;
        if s < one {
            let bound = product.abs() * &s / (&one - &s);
            if bound <= *tol {
                return Ok(TruncatedValue::new(product, bound));
            }
        }
        product *= &one - &uq;
        uq *= q;
    }
    Err(Error::TruncationBudget(format!(
        "(u; q)_inf did not reach tolerance {tol} (u = {u}, q = {q})"
    )))
}

/// q-Gamma at a positive integer argument: `Gamma_q(m) = (q; q)_{m-1} / (1-q)^{m-1}`.
///
/// All uses in this library have integer arguments (the Selberg parameters
/// are integers and `t = q^k` with integer `k`), so non-integer input —
/// where `q^x` would generally be irrational — is rejected. The value is
/// exact; the `tol` argument is accepted for interface uniformity.
pub fn qgamma(x: &Rational, q: &Rational, _tol: &Rational) -> Result<TruncatedValue> {
    if !x.is_integer() || !x.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "q-Gamma argument {x} must be a positive integer"
        )));
    }
    if !q.is_positive() || q >= &Rational::one() {
        return Err(Error::InvalidParameter(format!("q = {q} not in (0, 1)")));
    }
    let m: u64 = x
        .to_integer()
        .try_into()
        .map_err(|_| Error::InvalidParameter(format!("q-Gamma argument {x} too large")))?;
    let one = Rational::one();
    let mut acc = Rational::one();
    let mut qj = q.clone();
    for _ in 1..m {
        acc *= (&one - &qj) / (&one - q);
        qj *= q;
    }
    Ok(TruncatedValue::exact(acc))
}

/// The n-fold shifted q-Gamma product `prod_{i=1}^{n} Gamma_q(a' - k(i-1))`.
pub fn qgamma_n(
    aprime: &Rational,
    k: u32,
    n: u32,
    q: &Rational,
    tol: &Rational,
) -> Result<TruncatedValue> {
    let mut acc = TruncatedValue::one();
    for i in 1..=n {
        let arg = aprime - rat_int(k as i64 * (i as i64 - 1));
        acc = acc.mul(&qgamma(&arg, q, tol)?);
    }
    Ok(acc)
}

/// Rising factorial `(x + 1)(x + 2) ... (x + a)`; equals `(x + a)! / x!`
/// when `x` is a nonnegative integer. Exact for any rational `x`.
pub fn rising_factorial(x: &Rational, a: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 1..=a {
        acc *= x + rat_int(j as i64);
    }
    acc
}
