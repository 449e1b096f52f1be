use super::params::Params;
use super::rhs::rhs;
use super::state::State;
use crate::error::{Error, Result};
use crate::field::{inner_product, SpectralField};
use crate::lab::riesz_commutator;

/// Combined quantity `Γ = Ω + ℛ₁θ + ω`.
pub fn gamma(state: &State) -> SpectralField {
    state
        .vorticity
        .add(&state.temperature.riesz1())
        .and_then(|g| g.add(&state.micro_rotation))
        .expect("state fields share a grid")
}

const EPS_FRACTION: f64 = 1e-3;

/// Relative L² mismatch between two evaluations of `∂tΓ`:
///
/// (a) `dΩ + ℛ₁dθ + dω` from the component tendencies, and
/// (b) `−u·∇Γ − [ℛ₁, u·∇]θ + ℛ₁u₂ + Ω − 2ω`,
///
/// divided by `max(‖(a)‖, ε)` with `ε = 10⁻³(‖dΩ‖ + ‖ℛ₁dθ‖ + ‖dω‖)`. The
/// floor only engages when `∂tΓ` cancels almost completely (e.g. a lone
/// temperature mode, where `∂₁θ` cancels `ℛ₁Λθ` exactly): there both routes
/// are pure round-off and their ratio is meaningless.
///
/// Only meaningful at `χ = 1/2, ν = 1, β = 1`, where `−Δω + ∂₁θ` cancels
/// against `Λℛ₁θ` and `Δω`.
pub fn gamma_residual(state: &State, params: &Params) -> Result<f64> {
    if !params.is_normalized() {
        return Err(Error::InvalidParams(
            "the Γ identity requires chi = 1/2, nu = 1, beta = 1 and all couplings".into(),
        ));
    }
    let t = rhs(state, params);
    let dth = t.temperature.riesz1();
    let terms = t.vorticity.l2_norm() + dth.l2_norm() + t.micro_rotation.l2_norm();
    let route_a = t
        .vorticity
        .add(&dth)?
        .add(&t.micro_rotation)?;

    let u = state.velocity();
    let g = gamma(state);
    let route_b = u
        .advect(&g)?
        .scale(-1.0)
        .sub(&riesz_commutator(&u, &state.temperature)?)?
        .add(&u.u2.riesz1())?
        .add(&state.vorticity)?
        .axpy(-2.0, &state.micro_rotation)?;

    let diff = route_a.sub(&route_b)?.l2_norm();
    let scale = route_a.l2_norm().max(EPS_FRACTION * terms);
    Ok(if diff == 0.0 { 0.0 } else { diff / scale.max(f64::MIN_POSITIVE) })
}

/// Terms of the instantaneous energy balance
/// `½ d/dt(‖u‖² + ‖ω‖² + ‖θ‖²) + dissipation = exchange`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyBudget {
    /// `½ dE/dt` evaluated from the tendencies.
    pub rate: f64,
    /// `ν‖∇ω‖² + 4χ‖ω‖² + ‖Λ^{β/2}θ‖² (+ ‖Λ^α u‖²)`.
    pub dissipation: f64,
    /// `2χ∫(∇×ω)·u + 2χ∫(∇×u)ω + 2∫u₂θ`.
    pub exchange: f64,
    /// Largest magnitude among the constituent terms.
    pub scale: f64,
}

impl EnergyBudget {
    pub fn evaluate(state: &State, params: &Params) -> Result<Self> {
        let tend = rhs(state, params);
        let u = state.velocity();
        let du = tend.vorticity.biot_savart();
        let w = &state.micro_rotation;
        let th = &state.temperature;

        let ip = inner_product;
        let rate_terms = [
            ip(&u.u1, &du.u1)?,
            ip(&u.u2, &du.u2)?,
            ip(w, &tend.micro_rotation)?,
            ip(th, &tend.temperature)?,
        ];
        let grad_w = w.gradient();
        let half_beta = th.lambda_pow(0.5 * params.beta);
        let mut diss_terms = vec![
            params.nu * (ip(&grad_w.u1, &grad_w.u1)? + ip(&grad_w.u2, &grad_w.u2)?),
            4.0 * params.chi * ip(w, w)?,
            ip(&half_beta, &half_beta)?,
        ];
        if params.velocity_dissipation_alpha > 0.0 {
            let a = params.velocity_dissipation_alpha;
            let (v1, v2) = (u.u1.lambda_pow(a), u.u2.lambda_pow(a));
            diss_terms.push(ip(&v1, &v1)? + ip(&v2, &v2)?);
        }
        let mut exchange_terms = Vec::new();
        if params.couplings.rotation {
            let c = 2.0 * params.chi;
            // ∇×ω = (∂₂ω, −∂₁ω) for scalar ω
            exchange_terms.push(c * (ip(&grad_w.u2, &u.u1)? - ip(&grad_w.u1, &u.u2)?));
            exchange_terms.push(c * ip(&state.vorticity, w)?);
        }
        if params.couplings.buoyancy {
            exchange_terms.push(2.0 * ip(&u.u2, th)?);
        }
        let sum = |v: &[f64]| crate::field::neumaier_sum(v.iter().copied());
        let scale = rate_terms
            .iter()
            .chain(&diss_terms)
            .chain(&exchange_terms)
            .fold(0.0f64, |m, v| m.max(v.abs()));
        Ok(Self {
            rate: sum(&rate_terms),
            dissipation: sum(&diss_terms),
            exchange: sum(&exchange_terms),
            scale,
        })
    }

    pub fn residual(&self) -> f64 {
        let r = self.rate + self.dissipation - self.exchange;
        if self.scale == 0.0 {
            0.0
        } else {
            r / self.scale
        }
    }
}

/// `(LHS − RHS)/scale` of the energy balance at `state`.
pub fn energy_balance_residual(state: &State, params: &Params) -> Result<f64> {
    Ok(EnergyBudget::evaluate(state, params)?.residual())
}
