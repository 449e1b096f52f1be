use num_complex::Complex64;

use super::grid::GridSpec;
use super::spectral::{RealField, SpectralField, VectorField};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl SpectralField {
    /// `Λ^alpha = (−Δ)^{alpha/2}`: `|k|^alpha` on `k ≠ 0`; the mean mode is
    /// annihilated for `alpha ≠ 0` and kept for `alpha = 0`.
    pub fn lambda_pow(&self, alpha: f64) -> SpectralField {
        if alpha == 0.0 {
            return self.clone();
        }
        self.apply_radial(|k2| if k2 == 0.0 { 0.0 } else { k2.powf(0.5 * alpha) })
    }

    /// First Riesz transform `ℛ₁ = ∂₁Λ^{−1}`, symbol `i k₁/|k|`.
    pub fn riesz1(&self) -> SpectralField {
        let grid = *self.grid();
        self.apply(|k1, k2| {
            if (k1 == 0 && k2 == 0) || grid.is_nyquist(k1) {
                ZERO
            } else {
                Complex64::new(0.0, k1 as f64 / ((k1 * k1 + k2 * k2) as f64).sqrt())
            }
        })
    }

    /// Spectral derivative `∂_axis` (axis 1 or 2), symbol `i k_axis`. The
    /// unpaired Nyquist line is set to zero.
    pub fn partial(&self, axis: usize) -> SpectralField {
        assert!(axis == 1 || axis == 2, "axis must be 1 or 2");
        let grid = *self.grid();
        self.apply(|k1, k2| {
            let k = if axis == 1 { k1 } else { k2 };
            if grid.is_nyquist(k) {
                ZERO
            } else {
                Complex64::new(0.0, k as f64)
            }
        })
    }

    /// Laplacian, symbol `−|k|²`.
    pub fn laplacian(&self) -> SpectralField {
        self.apply_radial(|k2| -k2)
    }

    /// Heat semigroup `e^{tΔ}`, symbol `e^{−|k|² t}`.
    pub fn heat(&self, t: f64) -> Result<SpectralField> {
        if !(t >= 0.0) {
            return Err(Error::arg(format!("heat semigroup needs t >= 0, got {t}")));
        }
        Ok(self.apply_radial(|k2| (-k2 * t).exp()))
    }

    /// Velocity from vorticity, `u = ∇^⊥ψ` with `Δψ = Ω` (mean projected away).
    pub fn biot_savart(&self) -> VectorField {
        let grid = *self.grid();
        let psi = self.apply(|k1, k2| {
            let k2s = (k1 * k1 + k2 * k2) as f64;
            if k2s == 0.0 || grid.is_nyquist(k1) || grid.is_nyquist(k2) {
                ZERO
            } else {
                Complex64::new(-1.0 / k2s, 0.0)
            }
        });
        VectorField {
            u1: psi.partial(2).scale(-1.0),
            u2: psi.partial(1),
        }
    }

    /// Gradient as a vector field.
    pub fn gradient(&self) -> VectorField {
        VectorField {
            u1: self.partial(1),
            u2: self.partial(2),
        }
    }
}

impl VectorField {
    /// Scalar curl `∂₁u₂ − ∂₂u₁`.
    pub fn curl(&self) -> SpectralField {
        self.u2
            .partial(1)
            .sub(&self.u1.partial(2))
            .expect("components share a grid")
    }

    /// Dealiased `u·∇f`.
    pub fn advect(&self, f: &SpectralField) -> Result<SpectralField> {
        self.grid().check_same(f.grid())?;
        Ok(advect_real(&self.to_real(), f))
    }
}

/// Dealiased `u·∇f` with the velocity already in physical space.
pub(crate) fn advect_real(u: &[RealField; 2], f: &SpectralField) -> SpectralField {
    let fx = f.partial(1).to_real();
    let fy = f.partial(2).to_real();
    let values: Vec<f64> = u[0]
        .values()
        .iter()
        .zip(u[1].values())
        .zip(fx.values().iter().zip(fy.values()))
        .map(|((a, b), (c, d))| a * c + b * d)
        .collect();
    RealField::from_raw(*f.grid(), values).forward().dealiased()
}

/// Dealiased pointwise product of two spectral fields.
pub(crate) fn product(f: &SpectralField, g: &SpectralField) -> SpectralField {
    let a = f.to_real();
    let b = g.to_real();
    RealField::from_raw(
        *f.grid(),
        a.values().iter().zip(b.values()).map(|(x, y)| x * y).collect(),
    )
    .forward()
    .dealiased()
}

/// Zero-pads (`factor > 1`) or truncates a spectrum onto a grid of size
/// `factor·n`, keeping coefficient values (so physical values are preserved
/// for band-limited fields).
pub(crate) fn resample(f: &SpectralField, target: GridSpec) -> SpectralField {
    let src = f.grid();
    let half = (src.n().min(target.n()) / 2) as i64;
    let mut out = SpectralField::zeros(target);
    for k1 in -half + 1..half {
        for k2 in -half + 1..half {
            out.set_coeff(k1, k2, f.coeff(k1, k2));
        }
    }
    out
}
