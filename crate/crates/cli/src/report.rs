//! Running the tests on one pair of groups and rendering the result.

use std::fmt::Write as _;
use std::path::PathBuf;

use corrtest_core::{
    run_method, summarize, BootstrapSettings, CommonRhoEstimator, Detail, Error, GroupSummary,
    GvSettings, Method, DEFAULT_REPLICATIONS, DEFAULT_SEED,
};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ingest::ingest_csv;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where the two groups come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Input {
    Summary {
        n1: usize,
        r1: f64,
        n2: usize,
        r2: f64,
    },
    Csv {
        files: [PathBuf; 2],
        header: bool,
    },
}

impl Input {
    fn groups(&self) -> Result<[GroupSummary; 2]> {
        match self {
            Input::Summary { n1, r1, n2, r2 } => Ok([
                GroupSummary::from_correlation(*n1, *r1)?,
                GroupSummary::from_correlation(*n2, *r2)?,
            ]),
            Input::Csv { files, header } => {
                let a = summarize(&ingest_csv(&files[0], *header)?)?;
                let b = summarize(&ingest_csv(&files[1], *header)?)?;
                Ok([a, b])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestRequest {
    pub methods: Vec<Method>,
    pub alpha: f64,
    pub boot_m: usize,
    pub gv_draws: usize,
    pub seed: u64,
    pub estimator: CommonRhoEstimator,
}

impl Default for TestRequest {
    fn default() -> Self {
        Self {
            methods: vec![Method::Mslr, Method::FisherZ, Method::Gv],
            alpha: 0.05,
            boot_m: DEFAULT_REPLICATIONS,
            gv_draws: DEFAULT_REPLICATIONS,
            seed: DEFAULT_SEED,
            estimator: CommonRhoEstimator::default(),
        }
    }
}

/// Settings needed to rerun a method and get the same numbers back.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: u64,
    /// Bootstrap replicates.
    pub m: usize,
    /// Generalized-variable draws.
    pub draws: usize,
    pub estimator: CommonRhoEstimator,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub method: Method,
    pub statistic: Option<f64>,
    pub p_value: f64,
    pub reject: bool,
    pub detail: Detail,
    pub meta: Meta,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub n: usize,
    pub r: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: Input,
    pub groups: [GroupInfo; 2],
    pub alpha: f64,
    pub results: Vec<Entry>,
}

pub fn run_test(input: Input, request: &TestRequest) -> Result<Report> {
    if !(request.alpha > 0.0 && request.alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {}",
            request.alpha
        ))
        .into());
    }
    if request.methods.is_empty() {
        return Err(Error::InvalidParameter("no methods selected".into()).into());
    }
    let boot =
        BootstrapSettings::new(request.boot_m, request.seed)?.with_estimator(request.estimator);
    let gv = GvSettings::new(request.gv_draws, request.seed)?;
    let [g1, g2] = input.groups()?;

    let meta = Meta {
        seed: request.seed,
        m: request.boot_m,
        draws: request.gv_draws,
        estimator: request.estimator,
        version: VERSION.to_string(),
    };
    let results = request
        .methods
        .iter()
        .map(|&method| {
            let out = run_method(method, &g1, &g2, &boot, &gv)?;
            Ok(Entry {
                method,
                statistic: out.statistic,
                p_value: out.p_value,
                reject: out.rejects(request.alpha),
                detail: out.detail,
                meta: meta.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(Report {
        input,
        groups: [
            GroupInfo { n: g1.n, r: g1.r },
            GroupInfo { n: g2.n, r: g2.r },
        ],
        alpha: request.alpha,
        results,
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Aligned plain-text table, numbers to 4 decimals.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let [a, b] = self.groups;
        let source = match &self.input {
            Input::Summary { .. } => "summary".to_string(),
            Input::Csv { files, .. } => format!("{} vs {}", files[0].display(), files[1].display()),
        };
        let _ = writeln!(s, "input:  {source}");
        let _ = writeln!(s, "group 1: n = {:<4} r = {:.4}", a.n, a.r);
        let _ = writeln!(s, "group 2: n = {:<4} r = {:.4}", b.n, b.r);
        if let Some(e) = self.results.first() {
            let _ = writeln!(
                s,
                "alpha = {:.4}  seed = {}  M = {}  GV draws = {}",
                self.alpha, e.meta.seed, e.meta.m, e.meta.draws
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:<8}{:>12}{:>10}  decision",
            "method", "statistic", "p-value"
        );
        for e in &self.results {
            let stat = e
                .statistic
                .map_or_else(|| "-".to_string(), |v| format!("{v:.4}"));
            let decision = if e.reject { "reject" } else { "do not reject" };
            let _ = writeln!(
                s,
                "{:<8}{:>12}{:>10.4}  {decision}",
                e.method.label(),
                stat,
                e.p_value
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn temporal() -> Input {
        Input::Summary {
            n1: 14,
            r1: -0.340,
            n2: 14,
            r2: 0.812,
        }
    }

    #[test]
    fn json_round_trips() {
        let report = run_test(
            temporal(),
            &TestRequest {
                boot_m: 500,
                gv_draws: 1_000,
                ..Default::default()
            },
        )
        .unwrap();
        let back: Report = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.results.len(), 3);
        assert_eq!(back.results[2].statistic, None);
    }

    #[test]
    fn table_agrees_with_json() {
        let report = run_test(temporal(), &TestRequest::default()).unwrap();
        let table = report.to_table();
        for e in &report.results {
            assert!(table.contains(&format!("{:.4}", e.p_value)), "{table}");
            if let Some(t) = e.statistic {
                assert!(table.contains(&format!("{t:.4}")));
            }
        }
        assert!(table.contains("reject"));
    }

    #[test]
    fn rejects_bad_alpha_and_empty_methods() {
        for alpha in [0.0, 1.0, f64::NAN] {
            assert!(run_test(
                temporal(),
                &TestRequest {
                    alpha,
                    ..Default::default()
                }
            )
            .is_err());
        }
        assert!(run_test(
            temporal(),
            &TestRequest {
                methods: vec![],
                ..Default::default()
            }
        )
        .is_err());
    }

    #[test]
    fn bad_summary_is_validation_error() {
        let err = run_test(
            Input::Summary {
                n1: 3,
                r1: 0.1,
                n2: 10,
                r2: 0.2,
            },
            &TestRequest::default(),
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_VALIDATION);
    }
}
