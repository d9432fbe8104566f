//! Outcome records for identity checks.

use std::collections::BTreeMap;

use num::Signed;
use serde::Serialize;

use crate::scalars::{decimal_string, Rational, TruncatedValue};

/// Outcome of one identity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// One identity-check record: what was compared, with which parameters, and
/// how far apart the two sides were.
///
/// For exact checks `lhs`/`rhs` are rational strings (`p/q`) and
/// `tail_budget` is `0`. For truncated checks they are decimal strings and
/// `tail_budget` is the certified total truncation error, so `status = pass`
/// guarantees `|lhs - rhs| <= tolerance + tail_budget`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub status: CheckStatus,
    pub lhs: String,
    pub rhs: String,
    pub tail_budget: String,
    pub elapsed_ms: u64,
}

impl CheckReport {
    /// Report for an exact rational comparison.
    pub fn exact(
        name: &str,
        parameters: BTreeMap<String, String>,
        lhs: &Rational,
        rhs: &Rational,
    ) -> Self {
        Self {
            name: name.to_string(),
            parameters,
            status: if lhs == rhs {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            tail_budget: "0".to_string(),
            elapsed_ms: 0,
        }
    }

    /// Report for a comparison of certified truncated values at a tolerance.
    pub fn truncated(
        name: &str,
        parameters: BTreeMap<String, String>,
        lhs: &TruncatedValue,
        rhs: &TruncatedValue,
        tol: &Rational,
    ) -> Self {
        let budget = &lhs.tail_bound + &rhs.tail_bound;
        let pass = (&lhs.value - &rhs.value).abs() <= tol + &budget;
        Self {
            name: name.to_string(),
            parameters,
            status: if pass {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs: decimal_string(&lhs.value, 24),
            rhs: decimal_string(&rhs.value, 24),
            tail_budget: budget.to_string(),
            elapsed_ms: 0,
        }
    }

    /// A pass/fail verdict with preformatted sides (used by polynomial or
    /// coefficient-map comparisons where a single rational is not natural).
    pub fn verdict(
        name: &str,
        parameters: BTreeMap<String, String>,
        pass: bool,
        lhs: String,
        rhs: String,
    ) -> Self {
        Self {
            name: name.to_string(),
            parameters,
            status: if pass {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            lhs,
            rhs,
            tail_budget: "0".to_string(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Convenience for building the `parameters` map.
pub fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn exact_report_statuses() {
        let r = CheckReport::exact("t", params(&[]), &rat(1, 2), &rat(1, 2));
        assert!(r.passed());
        assert_eq!(r.lhs, "1/2");
        assert_eq!(r.tail_budget, "0");
        let r = CheckReport::exact("t", params(&[]), &rat(1, 2), &rat(1, 3));
        assert!(!r.passed());
    }

    #[test]
    fn truncated_report_uses_budget() {
        let rhs = TruncatedValue::new(rat(101, 100), rat(0, 1));
        // |1 - 101/100| = 1/100 <= tol 0 + budget 1/100
        let lhs = TruncatedValue::new(rat(1, 1), rat(1, 100));
        let r = CheckReport::truncated("t", params(&[]), &lhs, &rhs, &rat(0, 1));
        assert!(r.passed());
        // budget 1/200 is not enough
        let lhs = TruncatedValue::new(rat(1, 1), rat(1, 200));
        let r = CheckReport::truncated("t", params(&[]), &lhs, &rhs, &rat(0, 1));
        assert!(!r.passed());
    }
}
