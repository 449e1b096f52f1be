//! IF-RK2: a Lawson-type integrating-factor scheme built on Heun's method.
//!
//! The linear `(Ω, ω)` block
//!
//! ```text
//! d/dt [Ω̂, ω̂] = [[−|k|^{2α}, 2χ|k|²], [2χ, −(ν|k|² + 4χ)]] [Ω̂, ω̂]
//! ```
//!
//! and the temperature dissipation `−|k|^β θ̂` are propagated exactly per
//! mode. Transport and the bounded buoyancy exchange are the explicit part
//! `N`:
//!
//! ```text
//! q*      = E(q + dt·N(q))
//! q_{n+1} = E(q + dt/2·N(q)) + dt/2·N(q*)
//! ```

use num_complex::Complex64;
use thiserror::Error;

use super::params::Params;
use super::rhs::{explicit_terms, Tendency};
use super::state::State;
use crate::field::{lp_norm, pointwise_magnitude, GridSpec, SpectralField};

/// Identifier of the only supported scheme.
pub const SCHEME: &str = "IF-RK2";

/// Floor on `max|u|` in the CFL limit.
const CFL_VELOCITY_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepperConfig {
    pub cfl: f64,
    pub dt_max: f64,
}

impl Default for StepperConfig {
    fn default() -> Self {
        Self {
            cfl: 0.4,
            dt_max: 0.01,
        }
    }
}

impl StepperConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(crate::Error::InvalidParams(format!(
                "cfl must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        if !(self.dt_max > 0.0 && self.dt_max.is_finite()) {
            return Err(crate::Error::InvalidParams(format!(
                "dt_max must be > 0, got {}",
                self.dt_max
            )));
        }
        Ok(())
    }

    /// Largest admissible step for `state`.
    pub fn dt_limit(&self, state: &State) -> f64 {
        let umax = velocity_max(state).max(CFL_VELOCITY_FLOOR);
        (self.cfl * state.grid().dx() / umax).min(self.dt_max)
    }
}

#[derive(Debug, Error)]
pub enum StepError {
    #[error("time step {dt:e} exceeds the stability limit {limit:e}")]
    Cfl { dt: f64, limit: f64 },
    #[error("non-finite values at t = {time}")]
    BlowUp { time: f64, last_finite: Box<State> },
    #[error("invalid time step {0}")]
    InvalidDt(f64),
}

/// Grid maximum of `|u|`.
pub fn velocity_max(state: &State) -> f64 {
    let mag = pointwise_magnitude(&state.velocity().to_real()).expect("components share a grid");
    lp_norm(&mag, f64::INFINITY)
}

/// Per-mode exponential of the linear operator over one step `dt`.
#[derive(Debug, Clone)]
pub struct LinearPropagator {
    dt: f64,
    // [e11, e12, e21, e22] for (Ω, ω); scalar factor for θ
    block: Vec<[f64; 4]>,
    theta: Vec<f64>,
}

/// `exp(t·[[a, b], [c, d]])` for a real block with `b·c ≥ 0`.
fn expm2(m: [f64; 4], t: f64) -> [f64; 4] {
    let [a, b, c, d] = m;
    let mean = 0.5 * (a + d);
    let half = 0.5 * (a - d);
    let s = (half * half + b * c).max(0.0).sqrt();
    let (ep, em) = (((mean + s) * t).exp(), ((mean - s) * t).exp());
    let ch = 0.5 * (ep + em);
    // sinh(st)/s · e^{mean·t}
    let sh = if s * t < 1e-6 {
        (mean * t).exp() * t * (1.0 + (s * t).powi(2) / 6.0)
    } else {
        0.5 * (ep - em) / s
    };
    [ch + sh * half, sh * b, sh * c, ch - sh * half]
}

impl LinearPropagator {
    pub fn new(grid: &GridSpec, params: &Params, dt: f64) -> Self {
        let mut block = Vec::with_capacity(grid.len());
        let mut theta = Vec::with_capacity(grid.len());
        for idx in 0..grid.len() {
            let (k1, k2) = grid.wavevector(idx);
            let ks = (k1 * k1 + k2 * k2) as f64;
            block.push(expm2(params.rotation_block(ks), dt));
            theta.push((-params.theta_rate(ks) * dt).exp());
        }
        Self { dt, block, theta }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Applies `E` to `(Ω, ω, θ)` in place.
    fn apply(&self, om: &mut [Complex64], w: &mut [Complex64], th: &mut [Complex64]) {
        for idx in 0..om.len() {
            let [e11, e12, e21, e22] = self.block[idx];
            let (o, m) = (om[idx], w[idx]);
            om[idx] = o * e11 + m * e12;
            w[idx] = o * e21 + m * e22;
            th[idx] *= self.theta[idx];
        }
    }
}

fn combine(state: &State, tend: &Tendency, h: f64) -> [Vec<Complex64>; 3] {
    let f = |a: &[Complex64], b: &[Complex64]| -> Vec<Complex64> {
        a.iter().zip(b).map(|(&x, &y)| x + y * h).collect()
    };
    [
        f(state.vorticity.coeffs(), tend.vorticity.coeffs()),
        f(state.micro_rotation.coeffs(), tend.micro_rotation.coeffs()),
        f(state.temperature.coeffs(), tend.temperature.coeffs()),
    ]
}

fn assemble(grid: GridSpec, t: f64, [om, w, th]: [Vec<Complex64>; 3]) -> State {
    let mut s = State {
        t,
        vorticity: SpectralField::from_raw(grid, om),
        micro_rotation: SpectralField::from_raw(grid, w),
        temperature: SpectralField::from_raw(grid, th),
    };
    s.project();
    s
}

/// Stepper holding a cached propagator for the last step size.
#[derive(Debug, Clone)]
pub struct Stepper {
    params: Params,
    config: StepperConfig,
    propagator: Option<LinearPropagator>,
}

impl Stepper {
    pub fn new(params: Params, config: StepperConfig) -> crate::Result<Self> {
        params.validate()?;
        config.validate()?;
        Ok(Self {
            params,
            config,
            propagator: None,
        })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn config(&self) -> &StepperConfig {
        &self.config
    }

    /// Advances one step after checking the CFL limit.
    pub fn step(&mut self, state: &State, dt: f64) -> Result<State, StepError> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(StepError::InvalidDt(dt));
        }
        let limit = self.config.dt_limit(state);
        if dt > limit * (1.0 + 1e-12) {
            return Err(StepError::Cfl { dt, limit });
        }
        self.step_unchecked(state, dt)
    }

    /// Advances one step without the CFL check (fixed-step studies).
    pub fn step_unchecked(&mut self, state: &State, dt: f64) -> Result<State, StepError> {
        let grid = *state.grid();
        if self.propagator.as_ref().map(|p| p.dt()) != Some(dt) {
            self.propagator = Some(LinearPropagator::new(&grid, &self.params, dt));
        }
        let prop = self.propagator.as_ref().expect("propagator set above");

        let k1 = explicit_terms(state, &self.params);
        let [mut om, mut w, mut th] = combine(state, &k1, dt);
        prop.apply(&mut om, &mut w, &mut th);
        let stage = assemble(grid, state.t + dt, [om, w, th]);

        let k2 = explicit_terms(&stage, &self.params);
        let [mut om, mut w, mut th] = combine(state, &k1, 0.5 * dt);
        prop.apply(&mut om, &mut w, &mut th);
        let half = 0.5 * dt;
        for (x, y) in om.iter_mut().zip(k2.vorticity.coeffs()) {
            *x += y * half;
        }
        for (x, y) in w.iter_mut().zip(k2.micro_rotation.coeffs()) {
            *x += y * half;
        }
        for (x, y) in th.iter_mut().zip(k2.temperature.coeffs()) {
            *x += y * half;
        }
        let next = assemble(grid, state.t + dt, [om, w, th]);
        if !next.is_finite() || !stage.is_finite() {
            return Err(StepError::BlowUp {
                time: state.t + dt,
                last_finite: Box::new(state.clone()),
            });
        }
        Ok(next)
    }

    /// Advances to exactly `t_end` with CFL-limited steps, calling `on_step`
    /// after every accepted step.
    pub fn advance_to(
        &mut self,
        mut state: State,
        t_end: f64,
        mut on_step: impl FnMut(&State),
    ) -> Result<State, StepError> {
        while state.t < t_end {
            let remaining = t_end - state.t;
            let mut dt = self.config.dt_limit(&state);
            if dt >= remaining * (1.0 - 1e-12) {
                dt = remaining;
            } else if 2.0 * dt > remaining {
                // split the tail evenly rather than leaving a sliver
                dt = 0.5 * remaining;
            }
            let mut next = self.step(&state, dt)?;
            if dt == remaining {
                next.t = t_end;
            }
            state = next;
            on_step(&state);
        }
        Ok(state)
    }
}

/// One IF-RK2 step with a fresh propagator.
pub fn step(
    state: &State,
    params: &Params,
    dt: f64,
    config: &StepperConfig,
) -> Result<State, StepError> {
    let mut s = Stepper::new(*params, *config).map_err(|_| StepError::InvalidDt(dt))?;
    s.step(state, dt)
}
