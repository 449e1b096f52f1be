//! The `verify` suite: fast closed-form checks plus the acceptance criteria.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use serde_json::json;

use super::acceptance::{log_sobolev_stability, run_check, Check, CheckRecord, CRITERIA};
use super::config::RunConfig;
use crate::diagnostics::{exponential_bound_fit, DiagnosticsRecord, Quantity};
use crate::error::{Error, Result};
use crate::field::{GridSpec, RealField, SpectralField, VectorField};
use crate::lab::{
    bernstein_check, heat_decay_check, lambda_commutator, log_sobolev_check, positivity_gap,
    riesz_commutator_check, HeatWindow,
};
use crate::lp::DyadicPartition;
use crate::solver::{energy_balance_residual, gamma, gamma_residual, rhs, Params, State};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    Trivial,
    Lemmas,
    Solver,
    All,
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(Self::Trivial),
            "lemmas" => Ok(Self::Lemmas),
            "solver" => Ok(Self::Solver),
            "all" => Ok(Self::All),
            other => Err(Error::arg(format!(
                "unknown selector `{other}` (trivial | lemmas | solver | all)"
            ))),
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Trivial => "trivial",
            Self::Lemmas => "lemmas",
            Self::Solver => "solver",
            Self::All => "all",
        })
    }
}

fn small_grid() -> GridSpec {
    GridSpec::new(16).expect("valid grid")
}

fn sine(k: i64) -> SpectralField {
    RealField::from_fn(small_grid(), |x, _| (k as f64 * x).sin()).forward()
}

fn pass(name: &str, stats: serde_json::Value, ok: bool) -> Result<CheckRecord> {
    Ok(CheckRecord::new(name, json!({}), stats, ok))
}

fn rest_state() -> Result<CheckRecord> {
    let s = State::zeros(small_grid());
    let p = Params::default();
    let t = rhs(&s, &p);
    let max = [t.vorticity.max_abs(), t.micro_rotation.max_abs(), t.temperature.max_abs()]
        .into_iter()
        .fold(0.0, f64::max);
    let g = gamma(&s).max_abs();
    let gr = gamma_residual(&s, &p)?;
    let er = energy_balance_residual(&s, &p)?;
    pass(
        "rest-state",
        json!({ "tendency": max, "gamma": g, "gamma_residual": gr, "energy_residual": er }),
        max == 0.0 && g == 0.0 && gr == 0.0 && er == 0.0,
    )
}

fn bernstein_trivial() -> Result<CheckRecord> {
    let grid = GridSpec::new(32)?;
    let partition = DyadicPartition::new(grid);
    let mut f = SpectralField::zeros(grid);
    f.set_coeff(4, 0, Complex64::new(0.5, 0.0));
    f.set_coeff(-4, 0, Complex64::new(0.5, 0.0));
    let sharp = bernstein_check(&f, 2, 0.5, 2.0, 2.0, &partition)?.upper.ratio.unwrap_or(0.0);
    let identity = bernstein_check(&f, 2, 0.0, 4.0, 4.0, &partition)?.upper.ratio.unwrap_or(0.0);
    pass(
        "bernstein-single-mode",
        json!({ "sharp_ratio": sharp, "identity_ratio": identity }),
        (sharp - 1.0).abs() < 1e-12 && (identity - 1.0).abs() < 1e-12,
    )
}

fn positivity_trivial() -> Result<CheckRecord> {
    let f = RealField::from_fn(small_grid(), |x, y| x.sin() + 0.5 * (2.0 * y).cos());
    let p2 = [0.5, 1.0, 2.0]
        .iter()
        .map(|&s| positivity_gap(&f, s, 2).map(f64::abs))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let s0 = positivity_gap(&f, 0.0, 4)?;
    pass(
        "positivity-identities",
        json!({ "max_abs_gap_p2": p2, "gap_s0_p4": s0 }),
        p2 < 1e-11 && s0 > 0.0,
    )
}

fn commutator_trivial() -> Result<CheckRecord> {
    let grid = small_grid();
    let partition = DyadicPartition::new(grid);
    let constant = RealField::from_fn(grid, |_, _| 2.0).forward();
    let c = lambda_commutator(&constant, &sine(2), 1.0)?.max_abs();
    let reports = riesz_commutator_check(&VectorField::zeros(grid), &sine(1), 4.0, &partition)?;
    let degenerate = reports.iter().all(|r| r.is_degenerate());
    let zero = log_sobolev_check(&SpectralField::zeros(grid), 3.0, &partition)?;
    pass(
        "commutator-identities",
        json!({ "constant_commutator": c, "zero_velocity_degenerate": degenerate, "zero_field_degenerate": zero.is_degenerate() }),
        c < 1e-14 && degenerate && zero.is_degenerate(),
    )
}

fn heat_trivial() -> Result<CheckRecord> {
    let f = sine(1);
    let r = heat_decay_check(&f, 1.0, 2.0, 2.0, HeatWindow::for_grid(f.grid()))?;
    let dev = r.single_shell_deviation.unwrap_or(f64::INFINITY);
    pass("heat-single-mode", json!({ "deviation": dev }), dev < 1e-12)
}

fn fit_trivial() -> Result<CheckRecord> {
    let series: Vec<DiagnosticsRecord> = (0..20)
        .map(|i| DiagnosticsRecord {
            t: 0.05 * i as f64,
            linf_theta: 2.0 * (3.0 * 0.05 * i as f64).exp(),
            ..Default::default()
        })
        .collect();
    let c = exponential_bound_fit(&series, Quantity::ThetaLinf)?.constant.unwrap_or(0.0);
    pass("exponential-fit-synthetic", json!({ "fitted": c }), (c - 3.0).abs() < 1e-9)
}

fn config_trivial() -> Result<CheckRecord> {
    let c = RunConfig::default();
    let ok = RunConfig::parse(&c.to_text())? == c;
    pass("config-round-trip", json!({}), ok)
}

pub const TRIVIAL: [Check; 7] = [
    Check { id: "t1", name: "rest-state", run: rest_state },
    Check { id: "t2", name: "bernstein-single-mode", run: bernstein_trivial },
    Check { id: "t3", name: "positivity-identities", run: positivity_trivial },
    Check { id: "t4", name: "commutator-identities", run: commutator_trivial },
    Check { id: "t5", name: "heat-single-mode", run: heat_trivial },
    Check { id: "t6", name: "exponential-fit-synthetic", run: fit_trivial },
    Check { id: "t7", name: "config-round-trip", run: config_trivial },
];

const LOG_SOBOLEV: Check = Check { id: "l1", name: "log-sobolev", run: log_sobolev_stability };

/// Checks belonging to a selector, in report order.
pub fn checks(selector: Selector) -> Vec<&'static Check> {
    let lemma_ids = ["5", "6", "7", "8"];
    let lemmas = CRITERIA
        .iter()
        .filter(|c| lemma_ids.contains(&c.id))
        .chain(std::iter::once(&LOG_SOBOLEV));
    let solver = CRITERIA.iter().filter(|c| !lemma_ids.contains(&c.id));
    match selector {
        Selector::Trivial => TRIVIAL.iter().collect(),
        Selector::Lemmas => lemmas.collect(),
        Selector::Solver => solver.collect(),
        Selector::All => TRIVIAL.iter().chain(CRITERIA.iter()).chain(std::iter::once(&LOG_SOBOLEV)).collect(),
    }
}

/// Runs the selected checks, writing one JSON object per line to `out` as
/// each completes. Returns the records.
pub fn verify(selector: Selector, out: &mut impl Write) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    for check in checks(selector) {
        let rec = run_check(check);
        writeln!(out, "{}", serde_json::to_string(&rec)?)?;
        out.flush()?;
        records.push(rec);
    }
    Ok(records)
}
