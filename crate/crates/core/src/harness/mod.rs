//! Configuration, runs, sweeps, convergence studies and verification.

pub mod acceptance;
mod config;
pub mod convergence;
mod run;
mod sweep;
mod verify;

pub use config::{RunConfig, KEYS};
pub use convergence::{convergence, ConvergenceReport};
pub use run::{
    bounds_for, checkpoint_of, restore, resume, run, simulate, write_artifacts, Outcome,
    RunSummary, Simulation,
};
pub use sweep::{summary_csv, sweep, SweepPlan, SweepRow};
pub use verify::{checks, verify, Selector, TRIVIAL};
