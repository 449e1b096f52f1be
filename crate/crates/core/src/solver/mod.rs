//! Time integration of the micropolar Rayleigh–Bénard system in vorticity
//! form, plus the algebraic identities checked along trajectories.

mod identities;
mod init;
mod mild;
mod params;
mod rhs;
mod state;
mod stepper;

pub use identities::{energy_balance_residual, gamma, gamma_residual, EnergyBudget};
pub use init::{InitialData, InitialFamily};
pub use mild::mild_omega_check;
pub use params::{Couplings, Params};
pub use rhs::{rhs, Tendency};
pub use state::State;
pub use stepper::{step, velocity_max, LinearPropagator, StepError, Stepper, StepperConfig, SCHEME};
