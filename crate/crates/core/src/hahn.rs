//! One-variable Hahn polynomials on the integer grid `0..=N`.
//!
//! `G_n(x)` is defined through an n-th forward difference of the product
//! `(x-n+1)_{a+n} (N+1-x)_{b+n}` divided by the weight core
//! `(x+1)_a (N+1-x)_b`; the quotient is a polynomial of degree `n`, recovered
//! here by evaluation at `n + 1` integer nodes and exact interpolation. The
//! construction is cross-certified against the explicit double-sum form on
//! every call: a mismatch is a hard error, not a failed check.

use num::{One, Signed, Zero};

use crate::report::{params, CheckReport};
use crate::scalars::{binomial, factorial, rat_int, rising_factorial, Rational};
use crate::{Error, Result};

/// Parameters `(a, b, N, n)` with `0 <= n <= N`; `a`, `b` nonnegative
/// integers.
#[derive(Clone, Copy, Debug)]
pub struct HahnParams {
    pub a: u32,
    pub b: u32,
    pub big_n: u32,
    pub n: u32,
}

impl HahnParams {
    pub fn new(a: u32, b: u32, big_n: u32, n: u32) -> Result<Self> {
        if n > big_n {
            return Err(Error::InvalidParameter(format!(
                "degree n = {n} exceeds grid size N = {big_n}"
            )));
        }
        Ok(Self { a, b, big_n, n })
    }
}

/// Dense univariate polynomial, coefficients ascending by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The linear polynomial `c0 + c1 x`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&rat_int(x))
    }

    /// Precomposition with the linear map `x -> c0 + c1 x`.
    pub fn compose_linear(&self, c0: &Rational, c1: &Rational) -> Self {
        let inner = Self::linear(c0.clone(), c1.clone());
        let mut acc = Self::zero();
        let mut power = Self::constant(Rational::one());
        for c in &self.coeffs {
            acc = acc.add(&power.scale(c));
            power = power.mul(&inner);
        }
        acc
    }

    /// The forward difference `p(x+1) - p(x)` as a polynomial.
    pub fn forward_diff(&self) -> Self {
        self.compose_linear(&Rational::one(), &Rational::one())
            .add(&self.scale(&-Rational::one()))
    }
}

/// Rising product of a linear polynomial:
/// `(p)(p + 1) ... (p + count - 1)` where `p = c0 + c1 x`.
fn rising_poly(c0: &Rational, c1: &Rational, count: u32) -> UniPoly {
    let mut acc = UniPoly::constant(Rational::one());
    for j in 0..count {
        acc = acc.mul(&UniPoly::linear(c0 + rat_int(j as i64), c1.clone()));
    }
    acc
}

/// Iterated forward difference of a grid function:
/// `sum_{r=0}^{m} (-1)^r C(m, r) f(x + m - r)`.
pub fn forward_diff<F>(f: F, m: u32, x: i64) -> Rational
where
    F: Fn(i64) -> Rational,
{
    let mut acc = Rational::zero();
    for r in 0..=m {
        let sign = if r % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        acc += sign * Rational::from(binomial(m as u64, r as u64)) * f(x + (m - r) as i64);
    }
    acc
}

/// The difference kernel `F_n(x) = (x-n+1)_{a+n} (N+1-x)_{b+n}` at integer `x`.
pub fn hahn_f(p: &HahnParams, x: i64) -> Rational {
    let left = rising_factorial(&rat_int(x - p.n as i64), p.a + p.n);
    let right = rising_factorial(&rat_int(p.big_n as i64 - x), p.b + p.n);
    left * right
}

/// Exact Lagrange interpolation through `(x_i, y_i)` with distinct nodes.
fn lagrange_interpolate(points: &[(Rational, Rational)]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = UniPoly::constant(Rational::one());
        let mut denom = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = basis.mul(&UniPoly::linear(-xj.clone(), Rational::one()));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&(yi / denom)));
    }
    acc
}

/// The explicit double-sum form:
/// `G_n(x) = C(N,n)^{-1} sum_{p+r=n} (-1)^r / (p! r!) (x+a+1)_p (x-r+1)_r
/// (y+b+1)_r (y-p+1)_p` with `y = N - x`.
fn hahn_g_explicit(p: &HahnParams) -> UniPoly {
    let mut acc = UniPoly::zero();
    let one = Rational::one();
    for r in 0..=p.n {
        let s = p.n - r; // the complementary index
        let x_rise = rising_poly(&rat_int(p.a as i64 + 1), &one, s);
        let x_fall = rising_poly(&rat_int(1 - r as i64), &one, r);
        // y = N - x: linear part -x + const
        let y_rise = rising_poly(
            &rat_int(p.big_n as i64 + p.b as i64 + 1),
            &-one.clone(),
            r,
        );
        let y_fall = rising_poly(&rat_int(p.big_n as i64 - s as i64 + 1), &-one.clone(), s);
        let sign = if r % 2 == 0 { one.clone() } else { -one.clone() };
        let scale = sign
            / (Rational::from(factorial(s as u64)) * Rational::from(factorial(r as u64)));
        acc = acc.add(
            &x_rise
                .mul(&x_fall)
                .mul(&y_rise)
                .mul(&y_fall)
                .scale(&scale),
        );
    }
    let lead = Rational::from(binomial(p.big_n as u64, p.n as u64)).recip();
    acc.scale(&lead)
}

/// The n-th Hahn polynomial `G_n^{(a,b)}(x; N)`.
///
/// Computed through the difference-quotient definition (evaluation at
/// `x = 0..=n`, then interpolation) and through the explicit double sum;
/// the two routes must agree coefficient by coefficient.
pub fn hahn_g(p: &HahnParams) -> Result<UniPoly> {
    // difference route
    let lead = Rational::from(factorial((p.big_n - p.n) as u64))
        / Rational::from(factorial(p.big_n as u64));
    let mut nodes = Vec::with_capacity(p.n as usize + 1);
    for x in 0..=p.n as i64 {
        let diff = forward_diff(|u| hahn_f(p, u), p.n, x);
        let core = rising_factorial(&rat_int(x), p.a)
            * rising_factorial(&rat_int(p.big_n as i64 - x), p.b);
        debug_assert!(!core.is_zero());
        nodes.push((rat_int(x), &lead * diff / core));
    }
    let interpolated = lagrange_interpolate(&nodes);
    let explicit = hahn_g_explicit(p);
    if interpolated != explicit {
        return Err(Error::Unsupported(format!(
            "difference and explicit constructions disagree at a={} b={} N={} n={}",
            p.a, p.b, p.big_n, p.n
        )));
    }
    Ok(interpolated)
}

/// Exact polynomial check of the reflection symmetry
/// `G_n^{(a,b)}(N - x; N) = (-1)^n G_n^{(b,a)}(x; N)`.
pub fn check_symmetry(p: &HahnParams) -> Result<CheckReport> {
    let g_ab = hahn_g(p)?;
    let swapped = HahnParams::new(p.b, p.a, p.big_n, p.n)?;
    let g_ba = hahn_g(&swapped)?;
    let reflected = g_ab.compose_linear(&rat_int(p.big_n as i64), &-Rational::one());
    let sign = if p.n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let rhs = g_ba.scale(&sign);
    let pass = reflected == rhs;
    let first_mismatch = reflected
        .coeffs()
        .iter()
        .zip(rhs.coeffs())
        .position(|(x, y)| x != y)
        .map_or("none".to_string(), |i| i.to_string());
    Ok(CheckReport::verdict(
        "hahn_symmetry",
        params(&[
            ("a", p.a.to_string()),
            ("b", p.b.to_string()),
            ("N", p.big_n.to_string()),
            ("n", p.n.to_string()),
            ("first_mismatch_degree", first_mismatch),
        ]),
        pass,
        format!("{:?}", reflected.coeffs()),
        format!("{:?}", rhs.coeffs()),
    ))
}

/// Exact summation-by-parts check:
/// `sum_{x=0}^{N} (Delta f)(x) g(x) + sum_{x=0}^{N} f(x+1) (Delta g)(x)
///  = f(N+1) g(N+1) - f(0) g(0)`.
pub fn lemma_b_check(f: &UniPoly, g: &UniPoly, big_n: u32) -> CheckReport {
    let df = f.forward_diff();
    let dg = g.forward_diff();
    let mut lhs = Rational::zero();
    for x in 0..=big_n as i64 {
        lhs += df.eval_int(x) * g.eval_int(x) + f.eval_int(x + 1) * dg.eval_int(x);
    }
    let top = big_n as i64 + 1;
    let rhs = f.eval_int(top) * g.eval_int(top) - f.eval_int(0) * g.eval_int(0);
    CheckReport::exact(
        "hahn_parts",
        params(&[
            ("N", big_n.to_string()),
            ("deg_f", format!("{:?}", f.degree())),
            ("deg_g", format!("{:?}", g.degree())),
        ]),
        &lhs,
        &rhs,
    )
}

/// The discrete weight `w(x) = C(x+a, x) C(N-x+b, N-x)`.
pub fn hahn_weight(a: u32, b: u32, big_n: u32, x: u32) -> Rational {
    Rational::from(binomial((x + a) as u64, x as u64))
        * Rational::from(binomial((big_n - x + b) as u64, (big_n - x) as u64))
}

/// Exact orthogonality check: `sum_{x=0}^{N} G_n(x) G_m(x) w(x) = 0` for
/// `n != m` (for `n = m` the report carries the positive norm and passes).
pub fn orthogonality_check(n: u32, m: u32, a: u32, b: u32, big_n: u32) -> Result<CheckReport> {
    let gn = hahn_g(&HahnParams::new(a, b, big_n, n)?)?;
    let gm = hahn_g(&HahnParams::new(a, b, big_n, m)?)?;
    let mut sum = Rational::zero();
    for x in 0..=big_n {
        sum += gn.eval_int(x as i64) * gm.eval_int(x as i64) * hahn_weight(a, b, big_n, x);
    }
    let pass = if n == m {
        sum.is_positive()
    } else {
        sum.is_zero()
    };
    Ok(CheckReport::verdict(
        "hahn_orthogonality",
        params(&[
            ("a", a.to_string()),
            ("b", b.to_string()),
            ("N", big_n.to_string()),
            ("n", n.to_string()),
            ("m", m.to_string()),
        ]),
        pass,
        sum.to_string(),
        if n == m { "> 0".into() } else { "0".into() },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn forward_diff_basics() {
        let f = |x: i64| rat_int(x * x);
        // zeroth difference is the value
        assert_eq!(forward_diff(f, 0, 5), rat_int(25));
        // second difference of a quadratic is constant 2
        for x in -3..4 {
            assert_eq!(forward_diff(f, 2, x), rat_int(2));
        }
        // any positive difference of a constant vanishes
        assert_eq!(forward_diff(|_| rat(7, 3), 3, 0), Rational::zero());
    }

    #[test]
    fn difference_kernel_at_zero() {
        // Delta^n F_n(0) = (a+n)! (N+b)! / (N-n)!
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                for big_n in 0..=6u32 {
                    for n in 0..=big_n {
                        let p = HahnParams::new(a, b, big_n, n).unwrap();
                        let got = forward_diff(|x| hahn_f(&p, x), n, 0);
                        let want = Rational::from(factorial((a + n) as u64))
                            * Rational::from(factorial((big_n + b) as u64))
                            / Rational::from(factorial((big_n - n) as u64));
                        assert_eq!(got, want, "failed at a={a} b={b} N={big_n} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn degree_zero_is_constant_one() {
        let p = HahnParams::new(2, 1, 4, 0).unwrap();
        let g = hahn_g(&p).unwrap();
        assert_eq!(g, UniPoly::constant(Rational::one()));
    }

    #[test]
    fn linear_case_endpoints() {
        // G_1(0) = a + 1, G_1(N) = -(b + 1), linear in between
        let p = HahnParams::new(1, 2, 5, 1).unwrap();
        let g = hahn_g(&p).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert_eq!(g.eval_int(0), rat_int(2));
        assert_eq!(g.eval_int(5), rat_int(-3));
    }

    #[test]
    fn both_routes_agree_and_degree_leading_hold() {
        // degree n and leading coefficient (-1)^n C(N,n)^{-1} C(a+b+2n, n)
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                for big_n in 0..=8u32 {
                    for n in 0..=big_n {
                        let p = HahnParams::new(a, b, big_n, n).unwrap();
                        let g = hahn_g(&p).unwrap();
                        assert_eq!(g.degree(), Some(n as usize), "degree at {p:?}");
                        let sign = if n % 2 == 0 { 1 } else { -1 };
                        let want = rat_int(sign)
                            * Rational::from(binomial((a + b + 2 * n) as u64, n as u64))
                            / Rational::from(binomial(big_n as u64, n as u64));
                        assert_eq!(g.leading(), want, "leading coefficient at {p:?}");
                        // endpoint values
                        assert_eq!(
                            g.eval_int(0),
                            rising_factorial(&rat_int(a as i64), n),
                            "left endpoint at {p:?}"
                        );
                        assert_eq!(
                            g.eval_int(big_n as i64),
                            rat_int(sign) * rising_factorial(&rat_int(b as i64), n),
                            "right endpoint at {p:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn symmetry_grid() {
        for (a, b, big_n, n) in [(0, 0, 3, 2), (1, 2, 5, 2), (2, 2, 6, 3), (3, 1, 7, 4)] {
            let p = HahnParams::new(a, b, big_n, n).unwrap();
            let r = check_symmetry(&p).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn summation_by_parts() {
        // f = g = 1: both sides vanish
        let one = UniPoly::constant(Rational::one());
        assert!(lemma_b_check(&one, &one, 4).passed());
        // f(x) = x, g = 1, N = 3: both sides are 4
        let x = UniPoly::linear(Rational::zero(), Rational::one());
        let r = lemma_b_check(&x, &one, 3);
        assert!(r.passed());
        assert_eq!(r.lhs, "4");
        // fixed pseudo-random pairs of degree <= 5
        let f = UniPoly::new(vec![rat(1, 2), rat(-3, 1), rat(2, 7), rat(5, 1), rat(0, 1), rat(-1, 3)]);
        let g = UniPoly::new(vec![rat(2, 1), rat(1, 5), rat(-4, 9), rat(1, 1)]);
        for big_n in [3u32, 6, 10] {
            assert!(lemma_b_check(&f, &g, big_n).passed());
        }
    }

    #[test]
    fn orthogonality_small() {
        // hand-checked small instances
        let r = orthogonality_check(0, 1, 0, 0, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = orthogonality_check(1, 2, 1, 1, 5).unwrap();
        assert!(r.passed(), "{r:?}");
        // equal indices give a positive norm
        let r = orthogonality_check(0, 0, 1, 2, 4).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
