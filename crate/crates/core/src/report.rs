//! Machine-readable check reports shared by the library and the CLI.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// Residual of a check: exact checks report an exact-zero flag (or the
/// offending detail), numeric checks report value and statistical error.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Residual {
    Exact {
        zero: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        detail: Option<String>,
    },
    Numeric {
        rel_error: f64,
        std_error: f64,
        tolerance: f64,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub residual: Residual,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Wall-clock time; excluded from determinism comparisons.
    pub seconds: f64,
}

impl CheckReport {
    pub fn exact_pass(name: &str, params: BTreeMap<String, String>, seconds: f64) -> Self {
        Self {
            name: name.into(),
            params,
            status: Status::Pass,
            residual: Residual::Exact { zero: true, detail: None },
            samples: None,
            seed: None,
            seconds,
        }
    }

    pub fn exact_fail(name: &str, params: BTreeMap<String, String>, detail: String, seconds: f64) -> Self {
        Self {
            name: name.into(),
            params,
            status: Status::Fail,
            residual: Residual::Exact { zero: false, detail: Some(detail) },
            samples: None,
            seed: None,
            seconds,
        }
    }

    pub fn error(name: &str, params: BTreeMap<String, String>, detail: String, seconds: f64) -> Self {
        Self {
            name: name.into(),
            params,
            status: Status::Error,
            residual: Residual::Exact { zero: false, detail: Some(detail) },
            samples: None,
            seed: None,
            seconds,
        }
    }

    pub fn numeric(
        name: &str,
        params: BTreeMap<String, String>,
        check: &crate::numint::NumericCheck,
        seconds: f64,
    ) -> Self {
        Self {
            name: name.into(),
            params,
            status: if check.passed { Status::Pass } else { Status::Fail },
            residual: Residual::Numeric {
                rel_error: check.rel_error,
                // relative to the target, like rel_error and tolerance
                std_error: check.result.std_error / check.target.norm(),
                tolerance: check.tolerance,
            },
            samples: Some(check.result.samples),
            seed: Some(check.result.seed),
            seconds,
        }
    }
}

/// Top-level report bundle with a reproducibility manifest.
#[derive(Clone, Debug, Serialize)]
pub struct ReportBundle {
    pub tool: String,
    pub version: String,
    pub profile: String,
    pub seed_policy: String,
    pub reports: Vec<CheckReport>,
}
