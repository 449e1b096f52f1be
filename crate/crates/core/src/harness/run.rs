//! Single trajectories: simulation, artifacts, checkpoints and resume.

use std::fs;
use std::io::BufWriter;
use std::path::Path;

use serde::Serialize;

use super::config::RunConfig;
use crate::diagnostics::{
    blowup_indicator, exponential_bound_fit, record, theta_transport_bound, write_csv,
    BlowupReport, BoundsReport, DiagnosticsRecord, Quantity, MIN_FIT_SAMPLES,
};
use crate::error::{Error, Result};
use crate::field::{Checkpoint, RealField};
use crate::lp::DyadicPartition;
use crate::solver::{Params, State, StepError, Stepper};

/// How a trajectory ended.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Completed,
    /// A step produced non-finite values at `time`.
    BlowUp { time: f64 },
    /// Reached `t_end`, but the spectral tail stopped decaying.
    ResolutionExhausted,
}

impl Outcome {
    /// Process exit status: 0 completed, 2 blow-up, 3 resolution exhausted.
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Completed => 0,
            Outcome::BlowUp { .. } => 2,
            Outcome::ResolutionExhausted => 3,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Completed => "completed",
            Outcome::BlowUp { .. } => "blow-up",
            Outcome::ResolutionExhausted => "resolution-exhausted",
        }
    }
}

/// In-memory result of [`simulate`].
#[derive(Debug, Clone)]
pub struct Simulation {
    pub outcome: Outcome,
    pub records: Vec<DiagnosticsRecord>,
    /// Final state, or the last finite state after a blow-up.
    pub final_state: State,
    pub steps: usize,
    pub bounds: BoundsReport,
    pub blowup: BlowupReport,
}

impl Simulation {
    /// Fitted constant of `quantity`, if the fit was possible and nondegenerate.
    pub fn fitted_constant(&self, quantity: Quantity) -> Option<f64> {
        self.bounds.entry(quantity.name()).and_then(|e| e.constant)
    }
}

/// Bounds entries available for a series.
pub fn bounds_for(records: &[DiagnosticsRecord]) -> BoundsReport {
    let mut entries = vec![theta_transport_bound(records)];
    if records.len() >= MIN_FIT_SAMPLES {
        for q in Quantity::ALL {
            entries.push(exponential_bound_fit(records, q).expect("enough samples"));
        }
    }
    BoundsReport { entries }
}

/// Advances `initial` to `config.t_end`, recording diagnostics at every
/// multiple of `config.output_every` and at `t_end`.
///
/// `carry` replaces the time integrals of the first record (used when
/// resuming from a checkpoint).
pub fn simulate(
    config: &RunConfig,
    initial: State,
    carry: Option<&DiagnosticsRecord>,
) -> Result<Simulation> {
    config.validate()?;
    let grid = config.grid()?;
    grid.check_same(initial.grid())?;
    if !(initial.t < config.t_end) {
        return Err(Error::arg(format!(
            "initial time {} is not before t_end {}",
            initial.t, config.t_end
        )));
    }
    let partition = DyadicPartition::new(grid);
    let mut stepper = Stepper::new(config.params, config.stepper)?;
    let mut first = record(&initial, None, &config.diag, &partition)?;
    if let Some(c) = carry {
        first.int_grad_omega_sq = c.int_grad_omega_sq;
        first.int_half_theta_sq = c.int_half_theta_sq;
        first.int_k_half_theta_sq = c.int_k_half_theta_sq;
        first.int_three_half_theta_sq = c.int_three_half_theta_sq;
        first.int_linf_u = c.int_linf_u;
        first.int_linf_vorticity = c.int_linf_vorticity;
    }
    let mut records = vec![first];
    let mut state = initial;
    let mut steps = 0usize;
    let mut blow_time = None;
    let every = config.output_every;
    let mut k = (state.t / every).floor() as u64 + 1;
    while state.t < config.t_end {
        let target = (k as f64 * every).min(config.t_end);
        k += 1;
        if target <= state.t {
            continue;
        }
        match stepper.advance_to(state.clone(), target, |_| steps += 1) {
            Ok(next) => {
                state = next;
                let r = record(&state, records.last(), &config.diag, &partition)?;
                records.push(r);
            }
            Err(StepError::BlowUp { time, last_finite }) => {
                blow_time = Some(time);
                state = *last_finite;
                break;
            }
            Err(e) => return Err(Error::arg(format!("stepper failure: {e}"))),
        }
    }
    let bounds = bounds_for(&records);
    let blowup = blowup_indicator(&records);
    let outcome = match blow_time {
        Some(time) => Outcome::BlowUp { time },
        None if blowup.resolution_exhausted => Outcome::ResolutionExhausted,
        None => Outcome::Completed,
    };
    Ok(Simulation {
        outcome,
        records,
        final_state: state,
        steps,
        bounds,
        blowup,
    })
}

const FIELD_NAMES: [&str; 3] = ["Omega", "omega", "theta"];
const ACCUMULATORS: [&str; 6] = [
    "int_grad_omega_sq",
    "int_half_theta_sq",
    "int_k_half_theta_sq",
    "int_three_half_theta_sq",
    "int_linf_u",
    "int_linf_vorticity",
];

/// Checkpoint of `state` with the parameters and the time integrals of `last`.
pub fn checkpoint_of(state: &State, params: &Params, last: &DiagnosticsRecord) -> Checkpoint {
    let mut c = Checkpoint::new(state.grid().n());
    for (name, f) in FIELD_NAMES.iter().zip(state.fields()) {
        c.fields.push((name.to_string(), f.to_real()));
    }
    let acc = [
        last.int_grad_omega_sq,
        last.int_half_theta_sq,
        last.int_k_half_theta_sq,
        last.int_three_half_theta_sq,
        last.int_linf_u,
        last.int_linf_vorticity,
    ];
    c.scalars = [
        ("t", state.t),
        ("chi", params.chi),
        ("nu", params.nu),
        ("beta", params.beta),
        ("alpha", params.velocity_dissipation_alpha),
    ]
    .iter()
    .map(|(k, v)| (k.to_string(), *v))
    .chain(ACCUMULATORS.iter().zip(acc).map(|(k, v)| (k.to_string(), v)))
    .collect();
    c
}

/// State, parameters and accumulated integrals stored in a checkpoint.
/// Parameters in the checkpoint override those of `config`.
pub fn restore(config: &RunConfig, c: &Checkpoint) -> Result<(RunConfig, State, DiagnosticsRecord)> {
    let grid = config.grid()?;
    if c.n != grid.n() {
        return Err(Error::Checkpoint(format!(
            "checkpoint grid {} does not match configured grid {}",
            c.n,
            grid.n()
        )));
    }
    let field = |name: &str| -> Result<RealField> {
        let f = c
            .field(name)
            .ok_or_else(|| Error::Checkpoint(format!("missing field `{name}`")))?;
        RealField::new(grid, f.values().to_vec())
    };
    let scalar = |name: &str| -> Result<f64> {
        c.scalar(name)
            .ok_or_else(|| Error::Checkpoint(format!("missing scalar `{name}`")))
    };
    let mut cfg = config.clone();
    cfg.params.chi = scalar("chi")?;
    cfg.params.nu = scalar("nu")?;
    cfg.params.beta = scalar("beta")?;
    cfg.params.velocity_dissipation_alpha = c.scalar("alpha").unwrap_or(0.0);
    let state = State::new(
        scalar("t")?,
        field(FIELD_NAMES[0])?.forward(),
        field(FIELD_NAMES[1])?.forward(),
        field(FIELD_NAMES[2])?.forward(),
    )?;
    let mut carry = DiagnosticsRecord::default();
    let slots = [
        &mut carry.int_grad_omega_sq,
        &mut carry.int_half_theta_sq,
        &mut carry.int_k_half_theta_sq,
        &mut carry.int_three_half_theta_sq,
        &mut carry.int_linf_u,
        &mut carry.int_linf_vorticity,
    ];
    for (slot, name) in slots.into_iter().zip(ACCUMULATORS) {
        *slot = c.scalar(name).unwrap_or(0.0);
    }
    Ok((cfg, state, carry))
}

/// Summary written to `bounds.json`.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub outcome: Outcome,
    pub exit_code: i32,
    pub t_final: f64,
    pub steps: usize,
    pub bounds: BoundsReport,
    pub blowup: BlowupReport,
}

impl RunSummary {
    pub fn of(sim: &Simulation) -> Self {
        Self {
            outcome: sim.outcome,
            exit_code: sim.outcome.exit_code(),
            t_final: sim.final_state.t,
            steps: sim.steps,
            bounds: sim.bounds.clone(),
            blowup: sim.blowup.clone(),
        }
    }
}

/// Writes `config.txt`, `diagnostics.csv`, `bounds.json` and the checkpoint
/// (`final.ccnv`, or `last_finite.ccnv` after a blow-up) into `dir`.
pub fn write_artifacts(dir: &Path, config: &RunConfig, sim: &Simulation) -> Result<RunSummary> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("config.txt"), config.to_text())?;
    let mut csv = BufWriter::new(fs::File::create(dir.join("diagnostics.csv"))?);
    write_csv(&mut csv, &sim.records)?;
    drop(csv);
    let summary = RunSummary::of(sim);
    fs::write(dir.join("bounds.json"), serde_json::to_string_pretty(&summary)?)?;
    let last = sim.records.last().expect("at least the initial record");
    let ck = checkpoint_of(&sim.final_state, &config.params, last);
    match sim.outcome {
        Outcome::BlowUp { .. } => ck.save(dir.join("last_finite.ccnv"))?,
        _ if config.checkpoint => ck.save(dir.join("final.ccnv"))?,
        _ => {}
    }
    Ok(summary)
}

/// Runs `config` from its initial data and writes the artifacts to
/// `config.output_dir`.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    config.validate()?;
    let initial = config.init.generate(config.grid()?);
    let sim = simulate(config, initial, None)?;
    write_artifacts(&config.output_dir, config, &sim)
}

/// Continues from a checkpoint to `config.t_end`, writing artifacts to
/// `config.output_dir`.
pub fn resume(config: &RunConfig, checkpoint: impl AsRef<Path>) -> Result<RunSummary> {
    let ck = Checkpoint::load(checkpoint)?;
    let (cfg, state, carry) = restore(config, &ck)?;
    let sim = simulate(&cfg, state, Some(&carry))?;
    write_artifacts(&cfg.output_dir, &cfg, &sim)
}
