//! Parameter sweeps: one run per axis value, fanned out over a worker pool.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use super::config::RunConfig;
use super::run::{run, RunSummary};
use crate::diagnostics::Quantity;
use crate::error::{Error, Result};
use crate::parallel;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub base: RunConfig,
    /// Configuration key to vary, e.g. `physics.beta`.
    pub axis: String,
    pub values: Vec<String>,
    pub workers: usize,
}

impl SweepPlan {
    /// Per-value configurations, each writing to `<base dir>/<axis>=<value>`.
    pub fn configs(&self) -> Result<Vec<RunConfig>> {
        if self.values.is_empty() {
            return Err(Error::arg("sweep needs at least one value"));
        }
        self.values
            .iter()
            .map(|v| {
                let mut c = self.base.clone();
                c.set(&self.axis, v)?;
                c.output_dir = self.base.output_dir.join(format!("{}={}", self.axis, v.trim()));
                c.validate()?;
                Ok(c)
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.configs().map(|_| ())
    }

    /// Values in summary order: numeric order when every value is a number,
    /// listed order otherwise.
    fn ordered(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.values.len()).collect();
        let nums: Option<Vec<f64>> = self.values.iter().map(|v| v.trim().parse().ok()).collect();
        if let Some(nums) = nums {
            idx.sort_by(|&a, &b| nums[a].total_cmp(&nums[b]));
        }
        idx
    }
}

/// One row of the sweep summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: String,
    pub dir: PathBuf,
    pub outcome: String,
    pub exit_code: i32,
    pub t_final: Option<f64>,
    pub steps: Option<usize>,
    pub energy_constant: Option<f64>,
    pub theta_constant: Option<f64>,
    pub vorticity_constant: Option<f64>,
    pub failure_time: Option<f64>,
    pub resolution_exhausted: bool,
    pub error: Option<String>,
}

impl SweepRow {
    fn from_result(value: &str, dir: PathBuf, result: Result<RunSummary>) -> Self {
        match result {
            Ok(s) => {
                let c = |q: Quantity| s.bounds.entry(q.name()).and_then(|e| e.constant);
                Self {
                    value: value.into(),
                    dir,
                    outcome: s.outcome.label().into(),
                    exit_code: s.exit_code,
                    t_final: Some(s.t_final),
                    steps: Some(s.steps),
                    energy_constant: c(Quantity::EnergyFunctional),
                    theta_constant: c(Quantity::ThetaLinf),
                    vorticity_constant: c(Quantity::VorticityLinf),
                    failure_time: match s.outcome {
                        super::run::Outcome::BlowUp { time } => Some(time),
                        _ => None,
                    },
                    resolution_exhausted: s.blowup.resolution_exhausted,
                    error: None,
                }
            }
            Err(e) => Self {
                value: value.into(),
                dir,
                outcome: "error".into(),
                exit_code: 1,
                t_final: None,
                steps: None,
                energy_constant: None,
                theta_constant: None,
                vorticity_constant: None,
                failure_time: None,
                resolution_exhausted: false,
                error: Some(e.to_string()),
            },
        }
    }
}

const SUMMARY_HEADER: &str = "value,outcome,exit_code,t_final,steps,energy_constant,theta_constant,vorticity_constant,failure_time,resolution_exhausted,error";

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Summary table as CSV text.
pub fn summary_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{SUMMARY_HEADER}\n");
    for r in rows {
        let err = r.error.as_deref().unwrap_or("").replace([',', '\n'], ";");
        out += &format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.value,
            r.outcome,
            r.exit_code,
            cell(r.t_final),
            cell(r.steps),
            cell(r.energy_constant),
            cell(r.theta_constant),
            cell(r.vorticity_constant),
            cell(r.failure_time),
            r.resolution_exhausted,
            err
        );
    }
    out
}

/// Runs every value of the plan; a failing run becomes an `error` row and
/// does not stop its siblings. Writes `summary.csv` into the base directory.
pub fn sweep(plan: &SweepPlan) -> Result<Vec<SweepRow>> {
    let configs = plan.configs()?;
    let order = plan.ordered();
    let results = parallel::with_workers(plan.workers, || parallel::map(&configs, run));
    let mut results: Vec<Option<Result<RunSummary>>> = results.into_iter().map(Some).collect();
    let rows: Vec<SweepRow> = order
        .iter()
        .map(|&i| {
            SweepRow::from_result(
                &plan.values[i],
                configs[i].output_dir.clone(),
                results[i].take().expect("each result used once"),
            )
        })
        .collect();
    fs::create_dir_all(&plan.base.output_dir)?;
    let mut f = fs::File::create(plan.base.output_dir.join("summary.csv"))?;
    f.write_all(summary_csv(&rows).as_bytes())?;
    Ok(rows)
}
