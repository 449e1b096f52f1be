//! Temporal and spatial convergence studies.

use num_complex::Complex64;
use serde::Serialize;

use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::field::{GridSpec, SpectralField};
use crate::solver::{Couplings, Params, State, StepError, Stepper};

/// Advances `state` to `t_end` with `steps` equal fixed steps (no CFL check).
pub fn fixed_step_run(state: &State, params: &Params, t_end: f64, steps: usize) -> Result<State> {
    let dt = (t_end - state.t) / steps as f64;
    let mut stepper = Stepper::new(*params, Default::default())?;
    let mut s = state.clone();
    let t0 = state.t;
    for i in 0..steps {
        s = stepper.step_unchecked(&s, dt).map_err(|e| match e {
            StepError::BlowUp { time, .. } => Error::arg(format!("blow-up at t = {time}")),
            other => Error::arg(other.to_string()),
        })?;
        s.t = t0 + (i + 1) as f64 * dt;
    }
    Ok(s)
}

fn distance(a: &State, b: &State) -> Result<f64> {
    let mut sq = 0.0;
    for (x, y) in a.fields().into_iter().zip(b.fields()) {
        sq += x.sub(y)?.l2_norm().powi(2);
    }
    Ok(sq.sqrt())
}

fn size(a: &State) -> f64 {
    a.fields().iter().map(|f| f.l2_norm().powi(2)).sum::<f64>().sqrt()
}

fn extrapolate(fine: &State, coarse: &State) -> Result<State> {
    // second-order Richardson: q + (q − q_coarse)/3
    let f = |x: &SpectralField, y: &SpectralField| x.axpy(1.0 / 3.0, &x.sub(y)?);
    State::new(
        fine.t,
        f(&fine.vorticity, &coarse.vorticity)?,
        f(&fine.micro_rotation, &coarse.micro_rotation)?,
        f(&fine.temperature, &coarse.temperature)?,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TemporalReport {
    pub t_end: f64,
    /// Step sizes `dt, dt/2, dt/4`.
    pub dts: [f64; 3],
    /// Relative L² errors against the Richardson-extrapolated reference
    /// built from the `dt/4` and `dt/8` runs.
    pub errors: [f64; 3],
    /// `e(dt)/e(dt/2)`.
    pub ratio: f64,
    /// `log₂` of successive error ratios.
    pub orders: [f64; 2],
    /// `log₂(‖q_dt − q_{dt/2}‖ / ‖q_{dt/2} − q_{dt/4}‖)`.
    pub self_order: f64,
}

/// Temporal order of the integrator from `initial` over `[t₀, t_end]`
/// with `coarse_steps` steps at the largest step size.
pub fn temporal_order(initial: &State, params: &Params, t_end: f64, coarse_steps: usize) -> Result<TemporalReport> {
    let runs: Vec<State> = [1, 2, 4, 8]
        .iter()
        .map(|m| fixed_step_run(initial, params, t_end, coarse_steps * m))
        .collect::<Result<_>>()?;
    let reference = extrapolate(&runs[3], &runs[2])?;
    let scale = size(&reference).max(f64::MIN_POSITIVE);
    let mut errors = [0.0; 3];
    for i in 0..3 {
        errors[i] = distance(&runs[i], &reference)? / scale;
    }
    let dt = (t_end - initial.t) / coarse_steps as f64;
    Ok(TemporalReport {
        t_end,
        dts: [dt, dt / 2.0, dt / 4.0],
        errors,
        ratio: errors[0] / errors[1],
        orders: [(errors[0] / errors[1]).log2(), (errors[1] / errors[2]).log2()],
        self_order: (distance(&runs[0], &runs[1])? / distance(&runs[1], &runs[2])?).log2(),
    })
}

/// Closed-form solution of the decoupled linear system (no transport,
/// rotation or buoyancy): `Ω̂` decaying at `|k|^{2α}` (frozen when `α = 0`),
/// `ω̂` at `ν|k|² + 4χ`, `θ̂` at `|k|^β`.
pub fn decoupled_solution(initial: &State, params: &Params, t: f64) -> Result<State> {
    let dt = t - initial.t;
    let decay = |f: &SpectralField, rate: &dyn Fn(f64) -> f64| {
        f.apply_radial(|k2| (-rate(k2) * dt).exp())
    };
    let w = decay(&initial.micro_rotation, &|k2| params.nu * k2 + 4.0 * params.chi);
    let th = decay(&initial.temperature, &|k2| {
        if params.beta == 0.0 {
            1.0
        } else {
            k2.powf(0.5 * params.beta)
        }
    });
    let alpha = params.velocity_dissipation_alpha;
    let om = decay(&initial.vorticity, &|k2| {
        if alpha == 0.0 || k2 == 0.0 {
            0.0
        } else {
            k2.powf(alpha)
        }
    });
    State::new(t, om, w, th)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearReport {
    /// Largest relative deviation from the closed form over the step sizes tried.
    pub max_error: f64,
    /// Relative deviation of the `β = 2` temperature path from the heat semigroup.
    pub heat_error: f64,
}

fn params_without_couplings(base: &Params) -> Params {
    Params {
        couplings: Couplings::none(),
        ..*base
    }
}

/// Decoupled linear runs against closed forms, and the `β = 2` temperature
/// path against [`SpectralField::heat`].
pub fn linear_exactness(initial: &State, params: &Params, t_end: f64) -> Result<LinearReport> {
    let p = params_without_couplings(params);
    let exact = decoupled_solution(initial, &p, t_end)?;
    let mut max_error: f64 = 0.0;
    for steps in [1, 10, 100] {
        let s = fixed_step_run(initial, &p, t_end, steps)?;
        max_error = max_error.max(distance(&s, &exact)? / size(&exact).max(f64::MIN_POSITIVE));
    }
    let heat_params = Params { beta: 2.0, ..p };
    let start = State::new(
        initial.t,
        SpectralField::zeros(*initial.grid()),
        SpectralField::zeros(*initial.grid()),
        initial.temperature.clone(),
    )?;
    let s = fixed_step_run(&start, &heat_params, t_end, 100)?;
    let h = initial.temperature.heat(t_end - initial.t)?;
    let heat_error = s.temperature.sub(&h)?.l2_norm() / h.l2_norm().max(f64::MIN_POSITIVE);
    Ok(LinearReport { max_error, heat_error })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpatialReport {
    pub grids: Vec<usize>,
    /// Relative error of the decoupled linear run at each grid size.
    pub errors: Vec<f64>,
}

/// Band-limited analytic data evolved on several grids.
pub fn spatial_convergence(params: &Params, t_end: f64, grids: &[usize]) -> Result<SpatialReport> {
    let p = params_without_couplings(params);
    let mut errors = Vec::new();
    for &n in grids {
        let g = GridSpec::new(n)?;
        let mode = |a: f64, k1: i64, k2: i64| {
            let mut f = SpectralField::zeros(g);
            f.set_coeff(k1, k2, Complex64::new(a, 0.5 * a));
            f.set_coeff(-k1, -k2, Complex64::new(a, -0.5 * a));
            f
        };
        let s0 = State::new(0.0, mode(1.0, 1, 2), mode(0.5, 3, 1), mode(0.25, 2, 5))?;
        let s = fixed_step_run(&s0, &p, t_end, 50)?;
        let exact = decoupled_solution(&s0, &p, t_end)?;
        errors.push(distance(&s, &exact)? / size(&exact));
    }
    Ok(SpatialReport {
        grids: grids.to_vec(),
        errors,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub temporal: TemporalReport,
    pub linear: LinearReport,
    pub spatial: SpatialReport,
}

/// Full study for a configuration: temporal order on its initial data over
/// `[0, min(t_end, 1/2)]` starting from `dt = stepper.dt_max`, linear
/// exactness, and spatial errors at `n ∈ {32, 64}`.
pub fn convergence(config: &RunConfig) -> Result<ConvergenceReport> {
    config.validate()?;
    let initial = config.init.generate(config.grid()?);
    let t_end = config.t_end.min(0.5);
    let coarse = ((t_end / config.stepper.dt_max).ceil() as usize).max(1);
    Ok(ConvergenceReport {
        temporal: temporal_order(&initial, &config.params, t_end, coarse)?,
        linear: linear_exactness(&initial, &config.params, t_end)?,
        spatial: spatial_convergence(&config.params, t_end, &[32, 64])?,
    })
}
