//! Numerical verifiers for the harmonic-analysis inequalities behind the
//! a priori estimates: Bernstein, commutator, positivity, logarithmic
//! Sobolev and heat-kernel decay.
//!
//! Every check evaluates both sides of an inequality with the unspecified
//! constant dropped and reports the ratio. A `0/0` ratio is flagged as
//! degenerate, never as a failure.

mod bernstein;
mod commutator;
pub mod ensemble;
mod heat;
mod log_sobolev;
mod positivity;
mod report;
pub mod suite;

pub use bernstein::{bernstein_check, BernsteinReport};
pub use commutator::{
    block_commutator, block_commutator_check, gradient_norm, lambda_commutator,
    lambda_commutator_check, riesz_commutator, riesz_commutator_check, transport_commutator,
    transport_commutator_check, velocity_gradient_norm, CommutatorExponents,
};
pub use heat::{heat_decay_check, HeatDecayReport, HeatWindow};
pub(crate) use heat::ls_slope;
pub use log_sobolev::log_sobolev_check;
pub use positivity::{positivity_gap, positivity_terms};
pub use report::{EnsembleStats, InequalityReport};
