use crate::error::{Error, Result};

/// Switches for the non-diagonal parts of the system; all on by default.
///
/// Turning terms off yields the decoupled linear problems used to check the
/// integrator against closed-form solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Couplings {
    /// `u·∇` transport of all three fields.
    pub advection: bool,
    /// `−2χΔω` in the vorticity equation and `2χΩ` in the micro-rotation equation.
    pub rotation: bool,
    /// `∂₁θ` in the vorticity equation and `u₂` in the temperature equation.
    pub buoyancy: bool,
}

impl Default for Couplings {
    fn default() -> Self {
        Self {
            advection: true,
            rotation: true,
            buoyancy: true,
        }
    }
}

impl Couplings {
    pub fn none() -> Self {
        Self {
            advection: false,
            rotation: false,
            buoyancy: false,
        }
    }

    pub fn all(&self) -> bool {
        self.advection && self.rotation && self.buoyancy
    }
}

/// Physical parameters. Defaults are `χ = 1/2`, `ν = 1`, `β = 1` and no
/// velocity dissipation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub chi: f64,
    pub nu: f64,
    pub beta: f64,
    /// Exponent of an optional `Λ^{2α}u` velocity dissipation; `0` disables it.
    pub velocity_dissipation_alpha: f64,
    pub couplings: Couplings,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            chi: 0.5,
            nu: 1.0,
            beta: 1.0,
            velocity_dissipation_alpha: 0.0,
            couplings: Couplings::default(),
        }
    }
}

impl Params {
    pub fn validate(&self) -> Result<()> {
        if !(self.chi > 0.0 && self.chi.is_finite()) {
            return Err(Error::InvalidParams(format!("chi must be > 0, got {}", self.chi)));
        }
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return Err(Error::InvalidParams(format!("nu must be > 0, got {}", self.nu)));
        }
        if !(0.0..=2.0).contains(&self.beta) {
            return Err(Error::InvalidParams(format!(
                "beta must lie in [0, 2], got {}",
                self.beta
            )));
        }
        if !(self.velocity_dissipation_alpha >= 0.0 && self.velocity_dissipation_alpha <= 2.0) {
            return Err(Error::InvalidParams(format!(
                "velocity dissipation exponent must lie in [0, 2], got {}",
                self.velocity_dissipation_alpha
            )));
        }
        Ok(())
    }

    /// `χ = 1/2, ν = 1, β = 1`, no velocity dissipation, all couplings on.
    pub fn is_normalized(&self) -> bool {
        self.chi == 0.5
            && self.nu == 1.0
            && self.beta == 1.0
            && self.velocity_dissipation_alpha == 0.0
            && self.couplings.all()
    }

    /// Symbol of the temperature dissipation `Λ^β` at `|k|²`.
    pub(crate) fn theta_rate(&self, k2: f64) -> f64 {
        if self.beta == 0.0 {
            1.0
        } else if k2 == 0.0 {
            0.0
        } else {
            k2.powf(0.5 * self.beta)
        }
    }

    /// Symbol of `Λ^{2α}` on the vorticity, zero when disabled.
    pub(crate) fn vorticity_rate(&self, k2: f64) -> f64 {
        if self.velocity_dissipation_alpha == 0.0 || k2 == 0.0 {
            0.0
        } else {
            k2.powf(self.velocity_dissipation_alpha)
        }
    }

    /// Linear `(Ω, ω)` block at `|k|²`: `[[a, b], [c, d]]`.
    pub(crate) fn rotation_block(&self, k2: f64) -> [f64; 4] {
        let (b, c) = if self.couplings.rotation {
            (2.0 * self.chi * k2, 2.0 * self.chi)
        } else {
            (0.0, 0.0)
        };
        [
            -self.vorticity_rate(k2),
            b,
            c,
            -(self.nu * k2 + 4.0 * self.chi),
        ]
    }
}
