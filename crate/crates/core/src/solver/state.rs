use num_complex::Complex64;

use crate::error::Result;
use crate::field::{GridSpec, SpectralField, VectorField};

/// Prognostic triple `(Ω, ω, θ)` at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    pub t: f64,
    pub vorticity: SpectralField,
    pub micro_rotation: SpectralField,
    pub temperature: SpectralField,
}

impl State {
    /// Builds a state, projecting every field onto real, dealiased data and
    /// removing the vorticity mean.
    pub fn new(
        t: f64,
        vorticity: SpectralField,
        micro_rotation: SpectralField,
        temperature: SpectralField,
    ) -> Result<Self> {
        vorticity.grid().check_same(micro_rotation.grid())?;
        vorticity.grid().check_same(temperature.grid())?;
        let mut s = Self {
            t,
            vorticity,
            micro_rotation,
            temperature,
        };
        s.project();
        Ok(s)
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            t: 0.0,
            vorticity: SpectralField::zeros(grid),
            micro_rotation: SpectralField::zeros(grid),
            temperature: SpectralField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &GridSpec {
        self.vorticity.grid()
    }

    pub fn velocity(&self) -> VectorField {
        self.vorticity.biot_savart()
    }

    pub fn is_finite(&self) -> bool {
        self.vorticity.is_finite() && self.micro_rotation.is_finite() && self.temperature.is_finite()
    }

    pub(crate) fn project(&mut self) {
        for f in [
            &mut self.vorticity,
            &mut self.micro_rotation,
            &mut self.temperature,
        ] {
            f.hermitian_project();
            f.dealias();
        }
        self.vorticity.coeffs_mut()[0] = Complex64::new(0.0, 0.0);
    }

    pub fn fields(&self) -> [&SpectralField; 3] {
        [&self.vorticity, &self.micro_rotation, &self.temperature]
    }
}
