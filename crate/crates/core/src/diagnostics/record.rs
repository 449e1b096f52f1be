use serde::Serialize;

use super::blowup::tail_slope;
use crate::error::{Error, Result};
use crate::field::{lp_norm, SpectralField};
use crate::lab::gradient_norm;
use crate::lp::{BesovIndex, DyadicPartition};
use crate::solver::{gamma, velocity_max, State};

/// Exponents of the monitored norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagnosticsConfig {
    /// Regularity `k` of `‖Λ^kθ‖_{L²}`, with `1/2 < k ≤ (r−2)/r`.
    pub k: f64,
    /// Integrability `r` of `‖Γ‖_{L^r}`, `‖ω‖_{L^r}`, with `4 < r < ∞`.
    pub r: f64,
    /// Sobolev index of the `H^s` norms.
    pub s: f64,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        Self {
            k: 0.6,
            r: 8.0,
            s: 3.0,
        }
    }
}

impl DiagnosticsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r > 4.0 && self.r.is_finite()) {
            return Err(Error::arg(format!("diag.r must satisfy 4 < r < inf, got {}", self.r)));
        }
        if !(self.k > 0.5 && self.k <= (self.r - 2.0) / self.r) {
            return Err(Error::arg(format!(
                "diag.k must satisfy 1/2 < k <= (r-2)/r = {}, got {}",
                (self.r - 2.0) / self.r,
                self.k
            )));
        }
        if !(self.s > 0.0 && self.s.is_finite()) {
            return Err(Error::arg(format!("diag.s must be positive, got {}", self.s)));
        }
        Ok(())
    }
}

/// Norms of one snapshot plus time integrals up to it.
///
/// Everything except the two tail slopes is nonnegative on a healthy
/// trajectory; the integrals are nondecreasing.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub l2_u: f64,
    pub l2_omega: f64,
    pub l2_theta: f64,
    pub l4_theta: f64,
    pub l8_theta: f64,
    pub linf_theta: f64,
    /// `‖Λ^kθ‖_{L²}`.
    pub hk_theta: f64,
    /// `‖Γ‖_{L^r}`.
    pub lr_gamma: f64,
    /// `‖ω‖_{L^r}`.
    pub lr_omega: f64,
    /// `‖Ω‖_{L^∞}`.
    pub linf_vorticity: f64,
    pub linf_u: f64,
    pub grad_omega_inf: f64,
    /// `‖Λθ‖_{L²}`.
    pub h1dot_theta: f64,
    pub hs_u: f64,
    pub hs_omega: f64,
    pub hs_theta: f64,
    /// `‖θ‖_{B^{1/2}_{∞,1}}`.
    pub besov_half_theta: f64,
    /// `‖θ‖_{B⁰_{∞,∞}}`.
    pub besov_zero_theta: f64,
    /// `‖∇ω‖²_{L²}`.
    pub grad_omega_sq: f64,
    /// `‖Λ^{1/2}θ‖²_{L²}`.
    pub half_theta_sq: f64,
    /// `‖Λ^{k+1/2}θ‖²_{L²}`.
    pub k_half_theta_sq: f64,
    /// `‖Λ^{3/2}θ‖²_{L²}`.
    pub three_half_theta_sq: f64,
    pub int_grad_omega_sq: f64,
    pub int_half_theta_sq: f64,
    pub int_k_half_theta_sq: f64,
    pub int_three_half_theta_sq: f64,
    pub int_linf_u: f64,
    pub int_linf_vorticity: f64,
    /// Log-log slope of the shell spectrum over the top resolved octave;
    /// `None` when that octave carries no energy.
    pub tail_theta: Option<f64>,
    pub tail_vorticity: Option<f64>,
}

impl DiagnosticsRecord {
    /// `‖u‖² + ‖ω‖² + ‖θ‖² + ∫‖∇ω‖² + ∫‖Λ^{1/2}θ‖²`.
    pub fn energy_functional(&self) -> f64 {
        self.l2_u.powi(2)
            + self.l2_omega.powi(2)
            + self.l2_theta.powi(2)
            + self.int_grad_omega_sq
            + self.int_half_theta_sq
    }

    /// Whether every column is finite.
    pub fn is_finite(&self) -> bool {
        self.values().iter().all(|v| v.is_finite())
            && self.tail_theta.is_none_or(f64::is_finite)
            && self.tail_vorticity.is_none_or(f64::is_finite)
    }

    /// Scalar columns in CSV order (tail slopes excluded).
    pub(crate) fn values(&self) -> [f64; 30] {
        [
            self.t,
            self.l2_u,
            self.l2_omega,
            self.l2_theta,
            self.l4_theta,
            self.l8_theta,
            self.linf_theta,
            self.hk_theta,
            self.lr_gamma,
            self.lr_omega,
            self.linf_vorticity,
            self.linf_u,
            self.grad_omega_inf,
            self.h1dot_theta,
            self.hs_u,
            self.hs_omega,
            self.hs_theta,
            self.besov_half_theta,
            self.besov_zero_theta,
            self.grad_omega_sq,
            self.half_theta_sq,
            self.k_half_theta_sq,
            self.three_half_theta_sq,
            self.int_grad_omega_sq,
            self.int_half_theta_sq,
            self.int_k_half_theta_sq,
            self.int_three_half_theta_sq,
            self.int_linf_u,
            self.int_linf_vorticity,
            self.energy_functional(),
        ]
    }
}

/// `‖f‖_{H^s} = ((2π)² Σ (1+|k|²)^s |f̂(k)|²)^{1/2}`.
pub fn sobolev_norm(f: &SpectralField, s: f64) -> f64 {
    f.apply_radial(|k2| (1.0 + k2).powf(0.5 * s)).l2_norm()
}

fn homogeneous_sq(f: &SpectralField, s: f64) -> f64 {
    f.lambda_pow(s).l2_norm().powi(2)
}

/// Diagnostics of `state`, integrating in time from `previous`.
pub fn record(
    state: &State,
    previous: Option<&DiagnosticsRecord>,
    config: &DiagnosticsConfig,
    partition: &DyadicPartition,
) -> Result<DiagnosticsRecord> {
    partition.grid().check_same(state.grid())?;
    let u = state.velocity();
    let w = &state.micro_rotation;
    let th = &state.temperature;
    let th_real = th.to_real();
    let w_real = w.to_real();
    let inf = f64::INFINITY;

    let grad_w = w.gradient();
    let grad_omega_sq = grad_w.u1.l2_norm().powi(2) + grad_w.u2.l2_norm().powi(2);
    let half_theta_sq = homogeneous_sq(th, 0.5);
    let k_half_theta_sq = homogeneous_sq(th, config.k + 0.5);
    let three_half_theta_sq = homogeneous_sq(th, 1.5);
    let linf_u = velocity_max(state);
    let linf_vorticity = lp_norm(&state.vorticity.to_real(), inf);

    let (int_grad, int_half, int_k_half, int_three_half, int_u, int_vort) = match previous {
        None => (0.0, 0.0, 0.0, 0.0, 0.0, 0.0),
        Some(p) => {
            let h = 0.5 * (state.t - p.t);
            (
                p.int_grad_omega_sq + h * (p.grad_omega_sq + grad_omega_sq),
                p.int_half_theta_sq + h * (p.half_theta_sq + half_theta_sq),
                p.int_k_half_theta_sq + h * (p.k_half_theta_sq + k_half_theta_sq),
                p.int_three_half_theta_sq + h * (p.three_half_theta_sq + three_half_theta_sq),
                p.int_linf_u + h * (p.linf_u + linf_u),
                p.int_linf_vorticity + h * (p.linf_vorticity + linf_vorticity),
            )
        }
    };

    Ok(DiagnosticsRecord {
        t: state.t,
        l2_u: (u.u1.l2_norm().powi(2) + u.u2.l2_norm().powi(2)).sqrt(),
        l2_omega: w.l2_norm(),
        l2_theta: th.l2_norm(),
        l4_theta: lp_norm(&th_real, 4.0),
        l8_theta: lp_norm(&th_real, 8.0),
        linf_theta: lp_norm(&th_real, inf),
        hk_theta: th.lambda_pow(config.k).l2_norm(),
        lr_gamma: lp_norm(&gamma(state).to_real(), config.r),
        lr_omega: lp_norm(&w_real, config.r),
        linf_vorticity,
        linf_u,
        grad_omega_inf: gradient_norm(w, inf),
        h1dot_theta: th.lambda_pow(1.0).l2_norm(),
        hs_u: (sobolev_norm(&u.u1, config.s).powi(2) + sobolev_norm(&u.u2, config.s).powi(2))
            .sqrt(),
        hs_omega: sobolev_norm(w, config.s),
        hs_theta: sobolev_norm(th, config.s),
        besov_half_theta: partition.besov_norm(th, BesovIndex::new(0.5, inf, 1.0)?)?,
        besov_zero_theta: partition.besov_norm(th, BesovIndex::new(0.0, inf, inf)?)?,
        grad_omega_sq,
        half_theta_sq,
        k_half_theta_sq,
        three_half_theta_sq,
        int_grad_omega_sq: int_grad,
        int_half_theta_sq: int_half,
        int_k_half_theta_sq: int_k_half,
        int_three_half_theta_sq: int_three_half,
        int_linf_u: int_u,
        int_linf_vorticity: int_vort,
        tail_theta: tail_slope(th),
        tail_vorticity: tail_slope(&state.vorticity),
    })
}
