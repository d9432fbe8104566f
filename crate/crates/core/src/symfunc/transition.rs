//! Universal transition tables between the power-sum and monomial bases.
//!
//! The tables are computed degree by degree in `d =` weight variables, which
//! is enough alphabet for every partition of weight `d`, so the entries are
//! the variable-count independent structure constants of the ring of
//! symmetric functions. They are memoized process-wide; contents are
//! deterministic, so the shared cache is observationally pure.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::{One, Zero};

use super::partition::{partitions_of_weight, Partition};
use super::sympoly::{Basis, SymPoly};
use crate::scalars::Rational;

type Expansion = Arc<BTreeMap<Partition, Rational>>;

#[derive(Default)]
struct Tables {
    p_in_m: HashMap<Partition, Expansion>,
    m_in_p: HashMap<Partition, Expansion>,
    degrees_done: Vec<u32>,
}

fn tables() -> &'static Mutex<Tables> {
    static TABLES: OnceLock<Mutex<Tables>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(Tables::default()))
}

/// Expansion of `p_lambda` in monomial symmetric functions.
pub fn p_in_m(lambda: &Partition) -> Expansion {
    ensure_degree(lambda.weight());
    tables().lock().unwrap().p_in_m[lambda].clone()
}

/// Expansion of `m_lambda` in power sums.
pub fn m_in_p(lambda: &Partition) -> Expansion {
    ensure_degree(lambda.weight());
    tables().lock().unwrap().m_in_p[lambda].clone()
}

fn ensure_degree(d: u32) {
    {
        let t = tables().lock().unwrap();
        if t.degrees_done.contains(&d) {
            return;
        }
    }
    let (p_rows, m_rows) = build_degree(d);
    let mut t = tables().lock().unwrap();
    for (lam, row) in p_rows {
        t.p_in_m.insert(lam, Arc::new(row));
    }
    for (lam, row) in m_rows {
        t.m_in_p.insert(lam, Arc::new(row));
    }
    t.degrees_done.push(d);
}

type Rows = Vec<(Partition, BTreeMap<Partition, Rational>)>;

fn build_degree(d: u32) -> (Rows, Rows) {
    let nvars = (d as usize).max(1);
    let lambdas = partitions_of_weight(d, d as usize);
    // p_lambda in the m basis, by multiplying out the parts in d variables
    let mut p_rows: Rows = Vec::with_capacity(lambdas.len());
    for lam in &lambdas {
        let mut acc = SymPoly::one(nvars, Basis::Monomial);
        for &r in lam.parts() {
            let pr = SymPoly::basis_element(
                nvars,
                Basis::Monomial,
                Partition::new(vec![r]).unwrap(),
            );
            acc = acc.mul(&pr);
        }
        let row: BTreeMap<Partition, Rational> =
            acc.coeffs().map(|(m, c)| (m.clone(), c.clone())).collect();
        p_rows.push((lam.clone(), row));
    }
    // invert the transition matrix to express each m_mu in power sums
    let n = lambdas.len();
    let index: HashMap<&Partition, usize> =
        lambdas.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut a = vec![vec![Rational::zero(); n]; n];
    for (i, (_, row)) in p_rows.iter().enumerate() {
        for (mu, c) in row {
            a[i][index[mu]] = c.clone();
        }
    }
    let inv = invert(a);
    // [p] = A [m]  =>  [m] = A^{-1} [p]; row mu of A^{-1} expands m_mu
    let mut m_rows: Rows = Vec::with_capacity(n);
    for (j, mu) in lambdas.iter().enumerate() {
        let mut row = BTreeMap::new();
        for (i, lam) in lambdas.iter().enumerate() {
            if !inv[j][i].is_zero() {
                row.insert(lam.clone(), inv[j][i].clone());
            }
        }
        m_rows.push((mu.clone(), row));
    }
    (p_rows, m_rows)
}

/// Exact Gauss-Jordan inverse. The basis-change matrix is always invertible.
fn invert(mut a: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("transition matrix is singular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let d = &factor * &a[col][c];
                a[r][c] -= d;
                let d = &factor * &inv[col][c];
                inv[r][c] -= d;
            }
        }
    }
    inv
}
