use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::state::State;
use crate::error::Error;
use crate::field::{GridSpec, RealField, SpectralField};

/// Shipped initial-data families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialFamily {
    /// Gaussian coefficients ∝ |k|^{−2} on the shells 1 ≤ |k| ≤ 8.
    RandomBandlimited,
    /// `Ω = A cos x₁ cos x₂`, `ω = (A/2) sin x₁ sin x₂`, `θ = (A/2) sin x₁ cos 2x₂`.
    TaylorGreen,
    /// Smooth temperature bump, `Ω = ω = 0`.
    BuoyantBlob,
    Zero,
}

impl InitialFamily {
    pub const ALL: [InitialFamily; 3] = [
        InitialFamily::RandomBandlimited,
        InitialFamily::TaylorGreen,
        InitialFamily::BuoyantBlob,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InitialFamily::RandomBandlimited => "random-bandlimited",
            InitialFamily::TaylorGreen => "taylor-green",
            InitialFamily::BuoyantBlob => "buoyant-blob",
            InitialFamily::Zero => "zero",
        }
    }
}

impl fmt::Display for InitialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InitialFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "random-bandlimited" => Ok(Self::RandomBandlimited),
            "taylor-green" => Ok(Self::TaylorGreen),
            "buoyant-blob" => Ok(Self::BuoyantBlob),
            "zero" => Ok(Self::Zero),
            other => Err(Error::arg(format!("unknown initial-data family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialData {
    pub family: InitialFamily,
    pub amplitude: f64,
    pub seed: u64,
}

const BAND: i64 = 8;

/// Random real field with coefficients ∝ |k|^{−2} on `1 ≤ |k| ≤ 8`, scaled
/// to RMS `amplitude`. Draws are made in a grid-independent order, so the
/// same seed gives the same continuous field on every grid with `n ≥ 32`.
fn random_bandlimited(grid: GridSpec, amplitude: f64, seed: u64, stream: u64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut f = SpectralField::zeros(grid);
    let half = (grid.n() / 2) as i64;
    for k1 in -BAND..=BAND {
        for k2 in -BAND..=BAND {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let r2 = (k1 * k1 + k2 * k2) as f64;
            if r2 == 0.0 || r2 > (BAND * BAND) as f64 || k1.abs() >= half || k2.abs() >= half {
                continue;
            }
            f.set_coeff(k1, k2, Complex64::new(re, im) / r2);
        }
    }
    f.hermitian_project();
    f.dealias();
    let rms = f.l2_norm() / (2.0 * PI);
    if rms > 0.0 {
        f.scale(amplitude / rms)
    } else {
        f
    }
}

impl InitialData {
    pub fn generate(&self, grid: GridSpec) -> State {
        let a = self.amplitude;
        let (om, w, th) = match self.family {
            InitialFamily::RandomBandlimited => (
                random_bandlimited(grid, a, self.seed, 0),
                random_bandlimited(grid, a, self.seed, 1),
                random_bandlimited(grid, a, self.seed, 2),
            ),
            InitialFamily::TaylorGreen => (
                RealField::from_fn(grid, |x, y| a * x.cos() * y.cos()).forward(),
                RealField::from_fn(grid, |x, y| 0.5 * a * x.sin() * y.sin()).forward(),
                RealField::from_fn(grid, |x, y| 0.5 * a * x.sin() * (2.0 * y).cos()).forward(),
            ),
            InitialFamily::BuoyantBlob => {
                let sigma: f64 = 0.6;
                let (cx, cy) = (PI, 0.5 * PI);
                // sum over periodic images keeps the bump smooth on the torus
                let blob = RealField::from_fn(grid, |x, y| {
                    let mut v = 0.0;
                    for i in -1..=1 {
                        for j in -1..=1 {
                            let dx = x - cx + 2.0 * PI * i as f64;
                            let dy = y - cy + 2.0 * PI * j as f64;
                            v += (-(dx * dx + dy * dy) / (2.0 * sigma * sigma)).exp();
                        }
                    }
                    a * v
                });
                (
                    SpectralField::zeros(grid),
                    SpectralField::zeros(grid),
                    blob.forward(),
                )
            }
            InitialFamily::Zero => (
                SpectralField::zeros(grid),
                SpectralField::zeros(grid),
                SpectralField::zeros(grid),
            ),
        };
        State::new(0.0, om, w, th).expect("fields built on one grid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_names_round_trip() {
        for f in InitialFamily::ALL.iter().chain(&[InitialFamily::Zero]) {
            assert_eq!(f.name().parse::<InitialFamily>().unwrap(), *f);
        }
        assert!("vortex".parse::<InitialFamily>().is_err());
    }

    #[test]
    fn random_data_is_grid_independent() {
        let d = InitialData {
            family: InitialFamily::RandomBandlimited,
            amplitude: 0.7,
            seed: 11,
        };
        let a = d.generate(GridSpec::new(32).unwrap());
        let b = d.generate(GridSpec::new(64).unwrap());
        for k1 in -8..=8 {
            for k2 in -8..=8 {
                let diff = a.temperature.coeff(k1, k2) - b.temperature.coeff(k1, k2);
                assert!(diff.norm() < 1e-15);
            }
        }
        let rms = b.temperature.l2_norm() / (2.0 * PI);
        assert!((rms - 0.7).abs() < 1e-12);
        assert_eq!(b.vorticity.mean().norm(), 0.0);
    }
}
