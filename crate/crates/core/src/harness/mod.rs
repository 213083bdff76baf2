//! The registry of checked identities, the runner that executes them and
//! the JSON report it produces.
//!
//! Every case carries a default size range and a hard cap. A size override
//! replaces the default upper end; asking for more than the cap skips the
//! case instead of running it. Cases run in parallel and the report lists
//! them in registry order, so two runs with the same configuration
//! serialize to the same bytes as long as timings are off.

mod actions_cases;
mod examples;
mod fractions;
mod identities;
mod narayana;
mod statistics;
mod support;
mod table;
mod transport;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub use table::{parse_sizes, table, TableFormat};

pub(crate) use support::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    EnumerationEquality,
    MultisetEquality,
    GridIdentity,
    SeriesCoefficient,
    FloatSpot,
    ExampleRegression,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Sizes a case is checked at: `min..=default_max` unless overridden, and
/// never above `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sizes {
    pub min: usize,
    pub default_max: usize,
    pub cap: usize,
}

/// One registered identity.
#[derive(Clone, Copy)]
pub struct TheoremCase {
    pub id: &'static str,
    pub description: &'static str,
    pub method: Method,
    /// `None` for fixed worked examples.
    pub sizes: Option<Sizes>,
    run: fn(usize) -> Outcome,
}

impl std::fmt::Debug for TheoremCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TheoremCase")
            .field("id", &self.id)
            .field("method", &self.method)
            .field("sizes", &self.sizes)
            .finish()
    }
}

impl TheoremCase {
    pub(crate) const fn sized(
        id: &'static str,
        description: &'static str,
        method: Method,
        (min, default_max, cap): (usize, usize, usize),
        run: fn(usize) -> Outcome,
    ) -> Self {
        Self { id, description, method, sizes: Some(Sizes { min, default_max, cap }), run }
    }

    pub(crate) const fn fixed(id: &'static str, description: &'static str, run: fn(usize) -> Outcome) -> Self {
        Self { id, description, method: Method::ExampleRegression, sizes: None, run }
    }

    /// Runs the case with an optional upper size.
    pub fn execute(&self, max_n: Option<usize>, timings: bool) -> CaseResult {
        let mut result = CaseResult {
            id: self.id.to_string(),
            description: self.description.to_string(),
            method: self.method,
            status: Status::Pass,
            n: None,
            runtime_ms: None,
            witness: None,
        };
        let n = match self.sizes {
            None => 0,
            Some(s) => {
                let n = max_n.unwrap_or(s.default_max);
                result.n = Some(n);
                if n > s.cap {
                    result.status = Status::Skipped;
                    result.witness = Some(format!("n = {n} exceeds the cap of {} for this case", s.cap));
                    return result;
                }
                if n < s.min {
                    result.status = Status::Skipped;
                    result.witness = Some(format!("n = {n} is below the smallest size {} for this case", s.min));
                    return result;
                }
                n
            }
        };
        let start = Instant::now();
        let outcome = (self.run)(n);
        if timings {
            result.runtime_ms = Some(start.elapsed().as_millis() as u64);
        }
        match outcome {
            Ok(None) => {}
            Ok(Some(w)) => {
                result.status = Status::Fail;
                result.witness = Some(w);
            }
            Err(e) => {
                result.status = Status::Fail;
                result.witness = Some(format!("error: {e}"));
            }
        }
        result
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub description: String,
    pub method: Method,
    pub status: Status,
    /// Largest size checked, `None` for fixed examples.
    pub n: Option<usize>,
    /// Wall time, only recorded when timings are requested.
    pub runtime_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    /// Case ids to run; empty means all.
    pub ids: Vec<String>,
    pub max_n: Option<usize>,
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: String,
    pub config: VerifyConfig,
    pub cases: Vec<CaseResult>,
    /// True when no selected case failed. Skipped cases do not count as
    /// failures.
    pub passed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }
}

/// Every registered case, in report order.
pub fn registry() -> Vec<TheoremCase> {
    let mut all = Vec::new();
    all.extend_from_slice(examples::CASES);
    all.extend_from_slice(statistics::CASES);
    all.extend_from_slice(transport::CASES);
    all.extend_from_slice(narayana::CASES);
    all.extend_from_slice(identities::CASES);
    all.extend_from_slice(fractions::CASES);
    all.extend_from_slice(actions_cases::CASES);
    all
}

/// Looks up cases by id, in registry order. An empty list selects all.
pub fn select(ids: &[String]) -> Result<Vec<TheoremCase>> {
    let reg = registry();
    if ids.is_empty() || ids.iter().any(|i| i == "all") {
        return Ok(reg);
    }
    if let Some(bad) = ids.iter().find(|i| !reg.iter().any(|c| c.id == i.as_str())) {
        return Err(Error::Parse(format!("unknown case id `{bad}`")));
    }
    Ok(reg.into_iter().filter(|c| ids.iter().any(|i| i == c.id)).collect())
}

fn run_cases(cases: &[TheoremCase], config: VerifyConfig) -> Report {
    let results: Vec<CaseResult> = cases.par_iter().map(|c| c.execute(config.max_n, config.timings)).collect();
    let passed = results.iter().all(|r| r.status != Status::Fail);
    Report { version: env!("CARGO_PKG_VERSION").to_string(), config, cases: results, passed }
}

/// Runs the selected cases. Fails only on unknown ids; case failures are
/// recorded in the report.
pub fn verify(config: &VerifyConfig) -> Result<Report> {
    let cases = select(&config.ids)?;
    Ok(run_cases(&cases, config.clone()))
}

/// Runs every worked-example case.
pub fn reproduce_examples() -> Report {
    let config =
        VerifyConfig { ids: examples::CASES.iter().map(|c| c.id.to_string()).collect(), max_n: None, timings: false };
    run_cases(examples::CASES, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique_and_ranges_sane() {
        let reg = registry();
        let ids: HashSet<&str> = reg.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), reg.len());
        for c in &reg {
            if let Some(s) = c.sizes {
                assert!(s.min <= s.default_max && s.default_max <= s.cap, "{}", c.id);
            } else {
                assert_eq!(c.method, Method::ExampleRegression);
            }
        }
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let cfg = VerifyConfig { ids: vec!["no-such-case".into()], ..Default::default() };
        assert!(verify(&cfg).is_err());
    }

    #[test]
    fn over_cap_is_skipped() {
        let cfg = VerifyConfig { ids: vec!["des-exc-equidistribution".into()], max_n: Some(40), timings: false };
        let r = verify(&cfg).unwrap();
        assert_eq!(r.cases[0].status, Status::Skipped);
        assert!(r.passed);
    }

    #[test]
    fn small_run_passes() {
        let cfg = VerifyConfig { ids: vec!["des-exc-equidistribution".into()], max_n: Some(5), timings: false };
        let r = verify(&cfg).unwrap();
        assert_eq!(r.cases[0].status, Status::Pass);
        assert_eq!(r.cases[0].n, Some(5));
    }

    #[test]
    fn examples_pass() {
        let r = reproduce_examples();
        for c in &r.cases {
            assert_eq!(c.status, Status::Pass, "{}: {:?}", c.id, c.witness);
        }
    }
}
