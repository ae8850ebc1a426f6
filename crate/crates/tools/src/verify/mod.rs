//! Seeded Monte-Carlo property suite.
//!
//! Every property runs `trials` independent trials, each with its own generator
//! derived from `(seed, property index, trial index)`. Trials run in parallel and
//! are reduced in trial order, so a report depends only on its configuration.

mod properties;
pub mod samplers;
mod scan;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use grassmann_core::Error;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use properties::{registry, Bound, Kernels, Property, REQUIRED};
pub use scan::{find_dips, scan_conjugate, write_scan_csv, ScanConfig, ScanRow, SCAN_HEADER};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub n: usize,
    pub m: usize,
    /// Overrides of property bounds, keyed by property name.
    pub tolerances: BTreeMap<String, f64>,
    pub lambda_max: u32,
    /// Restricts the run to these properties when nonempty.
    pub only: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 1000,
            n: 2,
            m: 2,
            tolerances: BTreeMap::new(),
            lambda_max: 2,
            only: Vec::new(),
        }
    }
}

impl SuiteConfig {
    fn validate(&self) -> CliResult<()> {
        if self.trials == 0 || self.n == 0 || self.m == 0 || self.lambda_max == 0 {
            return Err(CliError::Input(
                "trials, n, m and lambda_max must all be at least 1".into(),
            ));
        }
        let known: Vec<&str> = registry().iter().map(|p| p.name).collect();
        for name in self.tolerances.keys().chain(&self.only) {
            if !known.contains(&name.as_str()) {
                return Err(CliError::Input(format!("unknown property `{name}`")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    /// Worst trial value; the largest for upper bounds, the smallest for lower ones.
    #[serde(with = "crate::io::extended_float")]
    pub worst: f64,
    pub bound: f64,
    pub bound_kind: String,
    /// First failing trial and its value or error.
    pub first_failure: Option<String>,
    pub elapsed_ms: f64,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub properties: Vec<PropertyReport>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn failed(&self) -> usize {
        self.properties.iter().filter(|p| !p.passed()).count()
    }

    /// Copy with every timing zeroed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        let mut out = self.clone();
        out.properties.iter_mut().for_each(|p| p.elapsed_ms = 0.0);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let width = self.properties.iter().map(|p| p.name.len()).max().unwrap_or(0);
        let c = &self.config;
        let mut out = format!(
            "property suite: seed {} trials {} n {} m {} lambda_max {}\n",
            c.seed, c.trials, c.n, c.m, c.lambda_max
        );
        for p in &self.properties {
            let cmp = if p.bound_kind == "upper" { "<=" } else { ">=" };
            let _ = writeln!(
                out,
                "{} {:width$}  failures {:>5}/{:<5} worst {:>10.3e} (need {cmp} {:.0e})  {:>9.1} ms",
                if p.passed() { "PASS" } else { "FAIL" },
                p.name,
                p.failures,
                p.trials,
                p.worst,
                p.bound,
                p.elapsed_ms,
            );
            if let Some(first) = &p.first_failure {
                let _ = writeln!(out, "     first failure: {first}");
            }
        }
        let _ = writeln!(
            out,
            "{}: {} of {} properties passed",
            if self.pass { "PASS" } else { "FAIL" },
            self.properties.len() - self.failed(),
            self.properties.len()
        );
        out
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> CliResult<SuiteReport> {
    run_suite_with(cfg, &Kernels::default())
}

/// [`run_suite`] with substitute kernels.
pub fn run_suite_with(cfg: &SuiteConfig, kernels: &Kernels) -> CliResult<SuiteReport> {
    cfg.validate()?;
    let ctx = properties::Ctx {
        n: cfg.n,
        m: cfg.m,
        lambda_max: cfg.lambda_max,
        kernels,
    };
    let properties = registry()
        .into_iter()
        .enumerate()
        .filter(|(_, p)| cfg.only.is_empty() || cfg.only.iter().any(|o| o == p.name))
        .map(|(index, p)| run_property(cfg, &ctx, index, &p))
        .collect::<Vec<_>>();
    let pass = properties.iter().all(PropertyReport::passed);
    Ok(SuiteReport {
        config: cfg.clone(),
        properties,
        pass,
    })
}

fn run_property(cfg: &SuiteConfig, ctx: &properties::Ctx, index: usize, p: &Property) -> PropertyReport {
    let bound = cfg.tolerances.get(p.name).map_or(p.bound, |&b| p.bound.with_limit(b));
    let start = Instant::now();
    let outcomes: Vec<Result<f64, Error>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| (p.check)(ctx, &mut samplers::trial_rng(cfg.seed, index, trial)))
        .collect();
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let mut report = PropertyReport {
        name: p.name.to_owned(),
        trials: 0,
        failures: 0,
        worst: match bound {
            Bound::Upper(_) => 0.0,
            Bound::Lower(_) => f64::INFINITY,
        },
        bound: bound.limit(),
        bound_kind: bound.kind().to_owned(),
        first_failure: None,
        elapsed_ms,
    };
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        report.trials += 1;
        let (failure, abort) = match outcome {
            Ok(value) => {
                report.worst = if value.is_nan() || report.worst.is_nan() {
                    f64::NAN
                } else {
                    bound.worse(report.worst, value)
                };
                (
                    (!bound.holds(value)).then(|| format!("trial {trial}: value {value:e}")),
                    false,
                )
            }
            Err(e) => (
                Some(format!("trial {trial}: {e}")),
                matches!(e, Error::InternalConsistency(_)),
            ),
        };
        if let Some(msg) = failure {
            report.failures += 1;
            if abort {
                report.first_failure = Some(format!("{msg} (property aborted)"));
                break;
            }
            report.first_failure.get_or_insert(msg);
        }
    }
    report
}
