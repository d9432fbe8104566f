//! Check registry, configuration, and execution for the verification suite.
//!
//! Every named check expands a finite parameter grid into a deterministic
//! list of [`CheckReport`]s. Randomized parameter points come from a
//! fixed-seed generator, so two runs with the same configuration produce
//! identical reports; the JSON renderer additionally zeroes the elapsed-time
//! field so that report files are byte-identical across runs.

pub mod registry;

use std::collections::BTreeSet;
use std::fmt;

use qthyper_core::report::{CheckReport, CheckStatus};
use qthyper_core::scalars::{parse_rational, rat, Rational};

/// Suite configuration: which checks to run and the shared grid knobs.
#[derive(Clone, Debug)]
pub struct Config {
    /// Check names to run; `None` runs the full registry in order.
    pub checks: Option<Vec<String>>,
    /// Variable counts for the grid-driven checks.
    pub n_values: Vec<usize>,
    /// Vandermonde depths (`t = q^k`).
    pub k_values: Vec<u32>,
    /// Base parameter values.
    pub q_values: Vec<Rational>,
    /// Partition-weight cap for partition-indexed grids.
    pub max_weight: u32,
    /// Truncation weight for series comparisons.
    pub degree: u32,
    /// Fixed Jackson truncation index; `None` picks adaptively from `tol`.
    pub jackson_m: Option<u32>,
    /// Tolerance for truncated comparisons.
    pub tol: Rational,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            checks: None,
            n_values: vec![1, 2, 3],
            k_values: vec![1, 2],
            q_values: vec![rat(1, 2), rat(1, 3)],
            max_weight: 4,
            degree: 6,
            jackson_m: None,
            tol: parse_rational("1e-10").expect("literal"),
        }
    }
}

/// Configuration errors (unknown check name, empty grid).
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Runs the configured checks in registry order and returns the reports.
pub fn run(config: &Config) -> Result<Vec<CheckReport>, ConfigError> {
    let known: Vec<&str> = registry::REGISTRY.iter().map(|(name, _)| *name).collect();
    if let Some(requested) = &config.checks {
        let known_set: BTreeSet<&str> = known.iter().copied().collect();
        for name in requested {
            if !known_set.contains(name.as_str()) {
                return Err(ConfigError(format!(
                    "unknown check {name:?}; known checks: {}",
                    known.join(", ")
                )));
            }
        }
    }
    if config.n_values.is_empty() || config.k_values.is_empty() || config.q_values.is_empty() {
        return Err(ConfigError("parameter grids must be nonempty".into()));
    }
    let mut reports = Vec::new();
    for (name, runner) in registry::REGISTRY.iter() {
        let wanted = match &config.checks {
            None => true,
            Some(requested) => requested.iter().any(|r| r == name),
        };
        if wanted {
            reports.extend(runner(config));
        }
    }
    Ok(reports)
}

/// Whether every non-skipped report passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports
        .iter()
        .all(|r| r.status != CheckStatus::Fail)
}

/// JSON rendering. The elapsed-time field is zeroed so repeated runs with
/// the same configuration serialize byte-identically.
pub fn render_json(reports: &[CheckReport]) -> String {
    let stripped: Vec<CheckReport> = reports
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.elapsed_ms = 0;
            r
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&stripped).expect("reports serialize");
    out.push('\n');
    out
}

/// Human-readable table of the same data.
pub fn render_text(reports: &[CheckReport]) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let mut pass = 0usize;
    let mut fail = 0usize;
    let mut skipped = 0usize;
    for r in reports {
        let status = match r.status {
            CheckStatus::Pass => {
                pass += 1;
                "pass"
            }
            CheckStatus::Fail => {
                fail += 1;
                "FAIL"
            }
            CheckStatus::Skipped => {
                skipped += 1;
                "skip"
            }
        };
        let params: Vec<String> = r
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let _ = writeln!(
            out,
            "{status}  {name:<22} {params}",
            name = r.name,
            params = params.join(" ")
        );
        if r.status == CheckStatus::Fail {
            let _ = writeln!(out, "      lhs = {}", r.lhs);
            let _ = writeln!(out, "      rhs = {}", r.rhs);
            let _ = writeln!(out, "      tail budget = {}", r.tail_budget);
        }
    }
    let _ = writeln!(
        out,
        "\n{total} checks: {pass} passed, {fail} failed, {skipped} skipped",
        total = reports.len()
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_check_is_a_config_error() {
        let config = Config {
            checks: Some(vec!["no_such_check".into()]),
            ..Config::default()
        };
        assert!(run(&config).is_err());
    }

    #[test]
    fn registry_names_are_unique() {
        let mut names: Vec<&str> = registry::REGISTRY.iter().map(|(n, _)| *n).collect();
        let total = names.len();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), total);
    }
}
