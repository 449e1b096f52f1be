//! Pseudo-spectral simulator and estimate laboratory for the two-dimensional
//! micropolar Rayleigh–Bénard convection system with zero velocity
//! dissipation and fractional (critical, `Λ¹`) temperature dissipation.
//!
//! The system is posed on the periodic torus `[0, 2π)²` rather than the
//! whole plane. Unknowns are the vorticity `Ω = ∇×u`, the micro-rotation `ω`
//! and the temperature `θ`:
//!
//! ```text
//! ∂tΩ + u·∇Ω = −2χΔω + ∂₁θ
//! ∂tω + u·∇ω − νΔω + 4χω = 2χΩ
//! ∂tθ + u·∇θ + Λ^β θ = u₂
//! ```
//!
//! Modules:
//! - [`field`]: grids, transforms, Fourier multipliers, checkpoints.
//! - [`lp`]: Littlewood–Paley blocks and Besov norms.
//! - [`lab`]: numerical verifiers for the harmonic-analysis inequalities.
//! - [`solver`]: the IF-RK2 time integrator and the `Γ`/energy identities.
//! - [`diagnostics`]: a priori quantities along trajectories and bound checks.
//! - [`harness`]: configuration, runs, sweeps and the acceptance suite.

pub mod diagnostics;
pub mod error;
pub mod field;
pub mod harness;
pub mod lab;
pub mod lp;
pub mod parallel;
pub mod solver;

pub use error::{Error, Result};
