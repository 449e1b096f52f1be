//! Seeded random fields for the inequality ensembles.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::field::{GridSpec, SpectralField, VectorField};
use crate::lp::DyadicPartition;

/// Generator for ensemble member `member` of a suite seeded with `seed`.
pub fn member_rng(seed: u64, member: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(member);
    rng
}

fn normalise(mut f: SpectralField) -> SpectralField {
    f.hermitian_project();
    f.dealias();
    let rms = f.l2_norm() / f.grid().length();
    if rms > 0.0 {
        f.scale(1.0 / rms)
    } else {
        f
    }
}

/// Mean-free real field with Gaussian coefficients of size `|k|^{−gamma}`
/// on every dealiased mode, scaled to unit RMS.
pub fn power_law_field(grid: GridSpec, gamma: f64, rng: &mut impl Rng) -> SpectralField {
    let f = SpectralField::from_modes(grid, |k1, k2| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        let r2 = (k1 * k1 + k2 * k2) as f64;
        if r2 == 0.0 || !grid.keeps(k1, k2) {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(re, im) * r2.powf(-0.5 * gamma)
        }
    });
    normalise(f)
}

/// Unit-RMS field supported in the dyadic annulus `j`.
pub fn annulus_field(partition: &DyadicPartition, j: i32, rng: &mut impl Rng) -> SpectralField {
    let white = power_law_field(*partition.grid(), 0.0, rng);
    normalise(partition.block(&white, j).expect("valid block index"))
}

/// Unit-amplitude random-phase field on the shells `kmin ≤ |k| ≤ kmax`.
pub fn flat_spectrum_field(grid: GridSpec, kmin: f64, kmax: f64, rng: &mut impl Rng) -> SpectralField {
    let f = SpectralField::from_modes(grid, |k1, k2| {
        let phase: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        let r = ((k1 * k1 + k2 * k2) as f64).sqrt();
        if r >= kmin && r <= kmax && grid.keeps(k1, k2) {
            Complex64::from_polar(1.0, phase)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let mut f = f;
    f.hermitian_project();
    f.dealias();
    f
}

/// Divergence-free velocity from a random power-law vorticity.
pub fn random_velocity(grid: GridSpec, gamma: f64, rng: &mut impl Rng) -> VectorField {
    power_law_field(grid, gamma, rng).biot_savart()
}
