//! The named checks and their default parameter grids.
//!
//! Each runner expands its grid deterministically: loops are over explicit
//! lists and every "random" parameter point is drawn from a fixed-seed
//! generator, so the report list is a pure function of the configuration.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qthyper_core::hahn::{
    check_symmetry, forward_diff, hahn_f, hahn_g, lemma_b_check, orthogonality_check, HahnParams,
    UniPoly,
};
use qthyper_core::hyper::{
    check_c1, check_kernel_identity, check_phi_one_product, check_pi_normalized, check_qdyson,
    check_y_specialization, gauss_check, qdyson_value, qdyson_value_infinite_route, CtKernel,
};
use qthyper_core::macdonald::{check_eps_j, MacdonaldCache};
use qthyper_core::qselberg::{
    check_c2, check_index_raising, check_laplace_ratio, check_selberg_closed_form, BParam,
    JacksonGrid, SelbergParams,
};
use qthyper_core::report::{params, CheckReport, CheckStatus};
use qthyper_core::scalars::{
    binomial, factorial, pow_i, rat, rat_int, rising_factorial, ParamPoint, Rational,
};
use qthyper_core::symfunc::{partitions_upto, Partition};

use crate::Config;

pub type Runner = fn(&Config) -> Vec<CheckReport>;

/// All checks, in report order.
pub static REGISTRY: &[(&str, Runner)] = &[
    ("eq_1_6", run_eq_1_6),
    ("products", run_products),
    ("kernel", run_kernel),
    ("kernel_specialization", run_kernel_specialization),
    ("qdyson", run_qdyson),
    ("c1", run_c1),
    ("pi_normalized", run_pi_normalized),
    ("selberg_3_13", run_selberg),
    ("c2", run_c2),
    ("index_raising", run_index_raising),
    ("gauss_4_1", run_gauss),
    ("laplace_closed_form", run_laplace_closed_form),
    ("laplace_ratio", run_laplace_ratio),
    ("hahn_suite", run_hahn_suite),
];

fn timed<F>(name: &str, f: F) -> CheckReport
where
    F: FnOnce() -> qthyper_core::Result<CheckReport>,
{
    let t0 = std::time::Instant::now();
    match f() {
        Ok(mut r) => {
            r.name = name.to_string();
            r.elapsed_ms = t0.elapsed().as_millis() as u64;
            r
        }
        Err(e) => {
            let mut r = CheckReport::verdict(
                name,
                params(&[("error", e.to_string())]),
                false,
                "error".into(),
                "error".into(),
            );
            r.elapsed_ms = t0.elapsed().as_millis() as u64;
            r
        }
    }
}

fn seeded(label: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x9e37_79b9 ^ label)
}

/// A fraction in `(0, 1)` with denominator at most `max_den`.
fn proper_fraction(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    let d = rng.gen_range(2..=max_den);
    let n = rng.gen_range(1..d);
    rat(n, d)
}

/// A nonzero rational in `(-1, 1)` with denominator at most `max_den`.
fn nonzero_unit(rng: &mut ChaCha8Rng, max_den: i64) -> Rational {
    loop {
        let d = rng.gen_range(2..=max_den);
        let n = rng.gen_range(-(d - 1)..d);
        if n != 0 {
            return rat(n, d);
        }
    }
}

// ---------------------------------------------------------------------------
// Macdonald / hypergeometric checks
// ---------------------------------------------------------------------------

/// Integral-form principal specialization, exact on a partition grid at
/// fixed-seed rational parameter points (denominators `<= 7`), including the
/// degenerate `u = 0` instance.
fn run_eq_1_6(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut rng = seeded(0x16);
    let lambdas = partitions_upto(cfg.max_weight, cfg.max_weight.max(1) as usize);
    for _ in 0..3 {
        let q = proper_fraction(&mut rng, 7);
        let t = proper_fraction(&mut rng, 7);
        let u = nonzero_unit(&mut rng, 7);
        let point = ParamPoint::new(q, t).expect("proper fractions");
        let mut cache = MacdonaldCache::new(point);
        for lam in &lambdas {
            let n = (lam.weight() as usize).max(1);
            out.push(timed("eq_1_6", || check_eps_j(&mut cache, lam, &u, n)));
        }
        // u = 0 degenerates to the pure t-power instance
        out.push(timed("eq_1_6", || {
            check_eps_j(
                &mut cache,
                &Partition::new(vec![2, 1]).unwrap(),
                &rat_int(0),
                3,
            )
        }));
    }
    out
}

/// Product evaluations of the no-parameter and one-parameter series, exact
/// degreewise at fixed-seed parameter points.
fn run_products(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut rng = seeded(0x21);
    let cap = cfg.degree;
    for _ in 0..2 {
        let q = proper_fraction(&mut rng, 7);
        let t = proper_fraction(&mut rng, 7);
        let a = proper_fraction(&mut rng, 7);
        let point = ParamPoint::new(q, t).expect("proper fractions");
        let mut cache = MacdonaldCache::new(point);
        for &n in &cfg.n_values {
            out.push(timed("products", || {
                check_phi_one_product(&mut cache, None, n, cap)
            }));
            let a = a.clone();
            out.push(timed("products", || {
                check_phi_one_product(&mut cache, Some(a), n, cap)
            }));
        }
    }
    out
}

const GENERIC_POINTS: [((i64, i64), (i64, i64)); 2] = [((1, 2), (1, 3)), ((1, 3), (2, 5))];

/// Two-alphabet kernel identity, exact degreewise.
fn run_kernel(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for (q, t) in GENERIC_POINTS {
        let point = ParamPoint::new(rat(q.0, q.1), rat(t.0, t.1)).expect("literal");
        let mut cache = MacdonaldCache::new(point);
        for &n in &cfg.n_values {
            out.push(timed("kernel", || {
                check_kernel_identity(&mut cache, n, cfg.max_weight)
            }));
        }
    }
    out
}

/// Second-alphabet specialization and the agreement of the two two-alphabet
/// constructions, for parameter lists of lengths up to (2, 2).
fn run_kernel_specialization(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let mut rng = seeded(0x111);
    for (q, t) in GENERIC_POINTS {
        let point = ParamPoint::new(rat(q.0, q.1), rat(t.0, t.1)).expect("literal");
        let mut cache = MacdonaldCache::new(point.clone());
        for &n in &cfg.n_values {
            // lower parameters of the form q^{j+1} t^n cannot vanish
            let safe_lower = |j: i64| pow_i(point.q(), j + 1) * point.t_pow(n as i64);
            let sets: Vec<(Vec<Rational>, Vec<Rational>)> = vec![
                (vec![], vec![]),
                (vec![proper_fraction(&mut rng, 9)], vec![]),
                (
                    vec![
                        proper_fraction(&mut rng, 9),
                        proper_fraction(&mut rng, 9),
                    ],
                    vec![safe_lower(0)],
                ),
                (
                    vec![
                        proper_fraction(&mut rng, 9),
                        proper_fraction(&mut rng, 9),
                    ],
                    vec![safe_lower(0), safe_lower(1)],
                ),
            ];
            for (upper, lower) in sets {
                out.push(timed("kernel_specialization", || {
                    check_y_specialization(&mut cache, upper, lower, n, cfg.max_weight)
                }));
            }
        }
    }
    out
}

/// The constant-term normalizer against its closed form, exact, plus one
/// truncated cross-check through the infinite-product route.
fn run_qdyson(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for q in &cfg.q_values {
        for &n in &cfg.n_values {
            for &k in &cfg.k_values {
                let q = q.clone();
                out.push(timed("qdyson", || check_qdyson(n, k, &q)));
            }
        }
    }
    // truncated route for the first grid point
    let q = cfg.q_values[0].clone();
    let tol = cfg.tol.clone();
    out.push(timed("qdyson", || {
        let exact = qdyson_value(2, 2, &q, &tol)?;
        let inf = qdyson_value_infinite_route(2, 2, &q, &tol)?;
        Ok(CheckReport::truncated(
            "qdyson",
            params(&[
                ("n", "2".into()),
                ("k", "2".into()),
                ("q", q.to_string()),
                ("route", "infinite-product".into()),
            ]),
            &exact,
            &inf,
            &tol,
        ))
    }));
    out
}

/// The constant-term norm identity for the orthogonal basis, exact on the
/// full grid.
fn run_c1(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for q in &cfg.q_values {
        for &k in &cfg.k_values {
            let point = ParamPoint::with_k(q.clone(), k).expect("grid q");
            let mut cache = MacdonaldCache::new(point);
            for &n in &cfg.n_values {
                let kernel = match CtKernel::new(n, k, q.clone()) {
                    Ok(kernel) => kernel,
                    Err(e) => {
                        out.push(CheckReport::verdict(
                            "c1",
                            params(&[("error", e.to_string())]),
                            false,
                            String::new(),
                            String::new(),
                        ));
                        continue;
                    }
                };
                for lam in partitions_upto(cfg.max_weight, n) {
                    out.push(timed("c1", || check_c1(&mut cache, &kernel, &lam)));
                }
            }
        }
    }
    out
}

/// The normalized kernel and its one-alphabet specialization, exact.
fn run_pi_normalized(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for q in &cfg.q_values {
        for &k in &cfg.k_values {
            let point = ParamPoint::with_k(q.clone(), k).expect("grid q");
            let mut cache = MacdonaldCache::new(point);
            for &n in &cfg.n_values {
                let kernel = match CtKernel::new(n, k, q.clone()) {
                    Ok(kernel) => kernel,
                    Err(e) => {
                        out.push(CheckReport::verdict(
                            "pi_normalized",
                            params(&[("error", e.to_string())]),
                            false,
                            String::new(),
                            String::new(),
                        ));
                        continue;
                    }
                };
                out.push(timed("pi_normalized", || {
                    check_pi_normalized(&mut cache, &kernel, cfg.max_weight)
                }));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Selberg / Laplace checks
// ---------------------------------------------------------------------------

fn grid_override(cfg: &Config) -> Option<JacksonGrid> {
    cfg.jackson_m.map(JacksonGrid::fixed)
}

/// Closed form of the Selberg normalization against direct Jackson sums.
fn run_selberg(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let q = cfg.q_values[0].clone();
    for &n in cfg.n_values.iter().filter(|&&n| n <= 2) {
        for &k in &cfg.k_values {
            for a in 1..=2u32 {
                for b in 1..=2u32 {
                    let sp = match SelbergParams::new(a, BParam::Finite(b), k, n, q.clone()) {
                        Ok(sp) => sp,
                        Err(_) => continue,
                    };
                    out.push(timed("selberg_3_13", || {
                        check_selberg_closed_form(&sp, grid_override(cfg), &cfg.tol)
                    }));
                }
            }
        }
    }
    out
}

/// Normalized Selberg moments of the orthogonal basis against the
/// Pochhammer-ratio closed form, including the Laplace limit, with the
/// Laurent-weight reduction verified on each instance.
fn run_c2(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let q = cfg.q_values[0].clone();
    let cap = cfg.max_weight.min(3);
    for &k in &cfg.k_values {
        let point = ParamPoint::with_k(q.clone(), k).expect("grid q");
        let mut cache = MacdonaldCache::new(point);
        for &n in cfg.n_values.iter().filter(|&&n| n <= 2) {
            for a in 1..=2u32 {
                for b in 1..=2u32 {
                    let sp = match SelbergParams::new(a, BParam::Finite(b), k, n, q.clone()) {
                        Ok(sp) => sp,
                        Err(_) => continue,
                    };
                    for lam in partitions_upto(cap, n) {
                        out.push(timed("c2", || {
                            check_c2(&mut cache, &lam, &sp, grid_override(cfg), &cfg.tol)
                        }));
                    }
                }
                // Laplace limit: the lower moment parameter drops out
                let sp = match SelbergParams::new(a, BParam::Infinite, k, n, q.clone()) {
                    Ok(sp) => sp,
                    Err(_) => continue,
                };
                for lam in partitions_upto(cap.min(2), n) {
                    out.push(timed("c2", || {
                        check_c2(&mut cache, &lam, &sp, grid_override(cfg), &cfg.tol)
                    }));
                }
            }
        }
    }
    out
}

/// Series-level index raising under Selberg integration.
fn run_index_raising(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let q = cfg.q_values[0].clone();
    let k = cfg.k_values[0];
    let cap = cfg.max_weight.min(2);
    for &n in cfg.n_values.iter().filter(|&&n| n <= 2) {
        let point = ParamPoint::with_k(q.clone(), k).expect("grid q");
        let mut cache = MacdonaldCache::new(point.clone());
        let tn = point.t_pow(n as i64);
        let safe_lower = pow_i(point.q(), 2) * point.t_pow(n as i64);
        let instances: Vec<(Vec<Rational>, Vec<Rational>, BParam)> = vec![
            (vec![tn.clone()], vec![], BParam::Finite(1)),
            (
                vec![tn.clone(), point.q() * point.t_pow(n as i64 - 1)],
                vec![safe_lower],
                BParam::Finite(2),
            ),
            (vec![tn.clone()], vec![], BParam::Infinite),
        ];
        for (upper, lower, b) in instances {
            let sp = match SelbergParams::new(1, b, k, n, q.clone()) {
                Ok(sp) => sp,
                Err(_) => continue,
            };
            out.push(timed("index_raising", || {
                check_index_raising(
                    &mut cache,
                    upper,
                    lower,
                    &sp,
                    cap,
                    grid_override(cfg),
                    &cfg.tol,
                )
            }));
        }
    }
    out
}

/// Gauss summation: one terminating exact instance and nonterminating
/// instances in one and two variables with certified tails.
fn run_gauss(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let depth = 600u32;
    for q in &cfg.q_values {
        let point = ParamPoint::with_k(q.clone(), 1).expect("grid q");
        // terminating: a1 = q^{-2}, a2 = q, b = q^3
        let (a1, a2, b) = (pow_i(q, -2), q.clone(), pow_i(q, 3));
        out.push(timed("gauss_4_1", || {
            gauss_check(&a1, &a2, &b, 1, &point, depth, &cfg.tol)
        }));
        // classical nonterminating one-variable instance
        let (a1, a2, b) = (q.clone(), q.clone(), pow_i(q, 3));
        out.push(timed("gauss_4_1", || {
            gauss_check(&a1, &a2, &b, 1, &point, depth, &cfg.tol)
        }));
    }
    // two-variable instances: parameters scaled against t so the evaluation
    // point stays inside the certified region
    let q = cfg.q_values[0].clone();
    for &k in &cfg.k_values {
        let point = ParamPoint::with_k(q.clone(), k).expect("grid q");
        let t = point.t().clone();
        let a1 = &t / rat_int(2);
        let a2 = &t / rat_int(3);
        let c = &t / rat_int(2);
        let b = &c * &a1 * &a2;
        out.push(timed("gauss_4_1", || {
            gauss_check(&a1, &a2, &b, 2, &point, depth, &cfg.tol)
        }));
    }
    out
}

/// Laplace-limit closed form against direct integration.
fn run_laplace_closed_form(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let q = cfg.q_values[0].clone();
    for &n in cfg.n_values.iter().filter(|&&n| n <= 2) {
        for &k in &cfg.k_values {
            for a in 1..=2u32 {
                let sp = match SelbergParams::new(a, BParam::Infinite, k, n, q.clone()) {
                    Ok(sp) => sp,
                    Err(_) => continue,
                };
                out.push(timed("laplace_closed_form", || {
                    check_selberg_closed_form(&sp, grid_override(cfg), &cfg.tol)
                }));
            }
        }
    }
    out
}

/// The Laplace-limit normalization ratio across its four forms.
fn run_laplace_ratio(cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for q in &cfg.q_values {
        for &n in cfg.n_values.iter().filter(|&&n| n <= 2) {
            for &k in &cfg.k_values {
                let q = q.clone();
                out.push(timed("laplace_ratio", || {
                    check_laplace_ratio(n, k, &q, &cfg.tol)
                }));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Hahn suite
// ---------------------------------------------------------------------------

fn aggregate(name: &str, props: &[(&str, String)], total: usize, failures: usize) -> CheckReport {
    let mut p = params(props);
    p.insert("instances".into(), total.to_string());
    p.insert("failures".into(), failures.to_string());
    CheckReport::verdict(
        name,
        p,
        failures == 0,
        format!("{} of {total} instances pass", total - failures),
        "all instances pass".into(),
    )
}

/// The full Hahn-polynomial property suite, aggregated per parameter pair:
/// construction self-consistency (difference route versus explicit form,
/// which is re-verified inside every construction), degree and leading
/// coefficient, endpoint values, the closed form of the n-th difference at
/// zero, reflection symmetry, summation by parts, and discrete
/// orthogonality.
fn run_hahn_suite(_cfg: &Config) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let max_n = 8u32;
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            let t0 = std::time::Instant::now();
            let mut total = 0usize;
            let mut failures = 0usize;
            for big_n in 0..=max_n {
                for n in 0..=big_n {
                    total += 1;
                    let ok = (|| -> qthyper_core::Result<bool> {
                        let p = HahnParams::new(a, b, big_n, n)?;
                        let g = hahn_g(&p)?; // hard-errors if the two routes disagree
                        let sign = if n % 2 == 0 { 1 } else { -1 };
                        let lead_ok = g.degree() == Some(n as usize)
                            && g.leading()
                                == rat_int(sign)
                                    * Rational::from(binomial((a + b + 2 * n) as u64, n as u64))
                                    / Rational::from(binomial(big_n as u64, n as u64));
                        let ends_ok = g.eval_int(0) == rising_factorial(&rat_int(a as i64), n)
                            && g.eval_int(big_n as i64)
                                == rat_int(sign) * rising_factorial(&rat_int(b as i64), n);
                        let diff_ok = forward_diff(|x| hahn_f(&p, x), n, 0)
                            == Rational::from(factorial((a + n) as u64))
                                * Rational::from(factorial((big_n + b) as u64))
                                / Rational::from(factorial((big_n - n) as u64));
                        let sym_ok = check_symmetry(&p)?.passed();
                        Ok(lead_ok && ends_ok && diff_ok && sym_ok)
                    })()
                    .unwrap_or(false);
                    if !ok {
                        failures += 1;
                    }
                }
            }
            let mut r = aggregate(
                "hahn_suite",
                &[("a", a.to_string()), ("b", b.to_string()), ("N", format!("0..={max_n}"))],
                total,
                failures,
            );
            r.elapsed_ms = t0.elapsed().as_millis() as u64;
            out.push(r);
        }
    }
    // summation by parts with fixed-seed polynomial pairs
    let mut rng = seeded(0xb);
    for big_n in [3u32, 6, 10] {
        let f = UniPoly::new((0..6).map(|_| nonzero_unit(&mut rng, 9)).collect());
        let g = UniPoly::new((0..5).map(|_| nonzero_unit(&mut rng, 9)).collect());
        out.push(timed("hahn_suite", || Ok(lemma_b_check(&f, &g, big_n))));
    }
    // orthogonality of distinct degrees under the binomial weight
    for a in 0..=3u32 {
        for b in 0..=3u32 {
            let t0 = std::time::Instant::now();
            let mut total = 0usize;
            let mut failures = 0usize;
            for big_n in 0..=max_n {
                for n in 0..=big_n {
                    for m in 0..n {
                        total += 1;
                        let ok = orthogonality_check(n, m, a, b, big_n)
                            .map(|r| r.passed())
                            .unwrap_or(false);
                        if !ok {
                            failures += 1;
                        }
                    }
                }
            }
            let mut r = aggregate(
                "hahn_suite",
                &[
                    ("a", a.to_string()),
                    ("b", b.to_string()),
                    ("N", format!("0..={max_n}")),
                    ("property", "orthogonality".into()),
                ],
                total,
                failures,
            );
            r.elapsed_ms = t0.elapsed().as_millis() as u64;
            out.push(r);
        }
    }
    out
}

/// True when every report in the slice passed.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.status == CheckStatus::Pass)
}
