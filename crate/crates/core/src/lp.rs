//! Littlewood–Paley decomposition on the periodic lattice and Besov norms.
//!
//! The low-pass profile is the cosine taper
//!
//! ```text
//! χ(r) = 1                                   r ≤ 3/4
//!      = cos²(π/2 · (r − 3/4)/(4/3 − 3/4))   3/4 < r ≤ 4/3
//!      = 0                                   r > 4/3
//! ```
//!
//! and `φ̂_j(ξ) = χ(ξ/2^{j+1}) − χ(ξ/2^j)`. Profiles are sampled at integer
//! wavevectors. The highest block `j_max` (with `2^{j_max} ≤ cutoff <
//! 2^{j_max+1}`) is taken as `1 − χ(ξ/2^{j_max})`, which coincides with the
//! dyadic formula on the dealiased disk and also absorbs the corners of the
//! square dealiasing mask, so the blocks reconstruct every retained mode.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::field::{lp_norm, GridSpec, RealField, SpectralField};

/// Radial low-pass profile `χ(r)`.
pub fn chi_profile(r: f64) -> f64 {
    const LO: f64 = 0.75;
    const HI: f64 = 4.0 / 3.0;
    if r <= LO {
        1.0
    } else if r <= HI {
        let c = (0.5 * PI * (r - LO) / (HI - LO)).cos();
        c * c
    } else {
        0.0
    }
}

/// Dyadic annulus profile `φ̂_j(r) = χ(r/2^{j+1}) − χ(r/2^j)` for `j ≥ 0`.
pub fn annulus_profile(j: i32, r: f64) -> f64 {
    let s = 2f64.powi(j);
    chi_profile(r / (2.0 * s)) - chi_profile(r / s)
}

/// Besov index `(s, p, q)`; `p`, `q` may be `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesovIndex {
    pub s: f64,
    pub p: f64,
    pub q: f64,
}

impl BesovIndex {
    pub fn new(s: f64, p: f64, q: f64) -> Result<Self> {
        if !(p >= 1.0) || !(q >= 1.0) || !s.is_finite() {
            return Err(Error::arg(format!("invalid Besov index ({s}, {p}, {q})")));
        }
        Ok(Self { s, p, q })
    }
}

/// Time-quadrature flavour of a space-time Besov norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceTimeFlavor {
    /// `‖ ‖(2^{js}‖Δ_j u‖_{L^p})‖_{l^q} ‖_{L^r_T}`
    Plain,
    /// `‖ 2^{js}‖Δ_j u‖_{L^r_T L^p} ‖_{l^q}`
    Tilde,
}

/// Littlewood–Paley profiles resolved on a grid's frequency lattice.
#[derive(Debug, Clone)]
pub struct DyadicPartition {
    grid: GridSpec,
    j_max: i32,
    // profiles[0] is χ (block −1), profiles[j + 1] is block j.
    profiles: Vec<Vec<f64>>,
}

impl DyadicPartition {
    pub fn new(grid: GridSpec) -> Self {
        let cutoff = grid.dealias_cutoff();
        let j_max = cutoff.log2().floor() as i32;
        let radii: Vec<f64> = (0..grid.len())
            .map(|idx| {
                let (k1, k2) = grid.wavevector(idx);
                ((k1 * k1 + k2 * k2) as f64).sqrt()
            })
            .collect();
        let mut profiles = Vec::with_capacity(j_max as usize + 2);
        profiles.push(radii.iter().map(|&r| chi_profile(r)).collect());
        for j in 0..=j_max {
            let top = 2f64.powi(j);
            profiles.push(
                radii
                    .iter()
                    .map(|&r| {
                        if j == j_max {
                            1.0 - chi_profile(r / top)
                        } else {
                            annulus_profile(j, r)
                        }
                    })
                    .collect(),
            );
        }
        Self {
            grid,
            j_max,
            profiles,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn j_max(&self) -> i32 {
        self.j_max
    }

    /// Block indices `−1..=j_max`.
    pub fn blocks(&self) -> std::ops::RangeInclusive<i32> {
        -1..=self.j_max
    }

    /// Lattice samples of the profile of block `j`.
    pub fn profile(&self, j: i32) -> Result<&[f64]> {
        if j < -1 || j > self.j_max {
            return Err(Error::arg(format!(
                "block index {j} outside [-1, {}]",
                self.j_max
            )));
        }
        Ok(&self.profiles[(j + 1) as usize])
    }

    fn check_grid(&self, f: &SpectralField) -> Result<()> {
        if f.grid().n() != self.grid.n() {
            return Err(Error::GridMismatch {
                left: f.grid().n(),
                right: self.grid.n(),
            });
        }
        Ok(())
    }

    /// `Δ_j f`, restricted to the dealiased modes.
    pub fn block(&self, f: &SpectralField, j: i32) -> Result<SpectralField> {
        self.check_grid(f)?;
        let profile = self.profile(j)?;
        let mut out = f.clone();
        for (c, &w) in out.coeffs_mut().iter_mut().zip(profile) {
            *c *= w;
        }
        Ok(out.dealiased())
    }

    /// `S_j f = Σ_{−1 ≤ k ≤ j−1} Δ_k f` for `0 ≤ j ≤ j_max + 1`.
    pub fn low_pass(&self, f: &SpectralField, j: i32) -> Result<SpectralField> {
        self.check_grid(f)?;
        if j < 0 || j > self.j_max + 1 {
            return Err(Error::arg(format!(
                "low-pass index {j} outside [0, {}]",
                self.j_max + 1
            )));
        }
        let mut weights = vec![0.0; self.grid.len()];
        for b in -1..j {
            for (w, p) in weights.iter_mut().zip(&self.profiles[(b + 1) as usize]) {
                *w += p;
            }
        }
        let mut out = f.clone();
        for (c, w) in out.coeffs_mut().iter_mut().zip(&weights) {
            *c *= *w;
        }
        Ok(out.dealiased())
    }

    /// Physical-space samples of every block, `−1..=j_max` in order.
    pub fn block_fields(&self, f: &SpectralField) -> Result<Vec<RealField>> {
        self.blocks()
            .map(|j| self.block(f, j).map(|b| b.to_real()))
            .collect()
    }

    /// `‖Δ_j f‖_{L^p}` for every block.
    pub fn block_norms(&self, f: &SpectralField, p: f64) -> Result<Vec<f64>> {
        Ok(self
            .block_fields(f)?
            .iter()
            .map(|b| lp_norm(b, p))
            .collect())
    }

    /// Besov norm `‖f‖_{B^s_{p,q}}` summed over the finitely many blocks.
    pub fn besov_norm(&self, f: &SpectralField, idx: BesovIndex) -> Result<f64> {
        let norms = self.block_norms(f, idx.p)?;
        Ok(weighted_lq(&norms, idx.s, idx.q))
    }

    /// Besov norm of a vector field with pointwise Euclidean magnitude.
    pub fn besov_norm_vector(&self, parts: &[&SpectralField], idx: BesovIndex) -> Result<f64> {
        let mut norms = Vec::new();
        for j in self.blocks() {
            let comps: Vec<RealField> = parts
                .iter()
                .map(|f| self.block(f, j).map(|b| b.to_real()))
                .collect::<Result<_>>()?;
            let mag = crate::field::pointwise_magnitude(&comps)?;
            norms.push(lp_norm(&mag, idx.p));
        }
        Ok(weighted_lq(&norms, idx.s, idx.q))
    }

    /// Space-time Besov norm of a weighted series of snapshots.
    ///
    /// `series` holds `(weight, field)` pairs whose weights are the time
    /// quadrature weights (see [`trapezoid_weights`]).
    pub fn spacetime_besov(
        &self,
        series: &[(f64, SpectralField)],
        r: f64,
        idx: BesovIndex,
        flavor: SpaceTimeFlavor,
    ) -> Result<f64> {
        if series.is_empty() {
            return Err(Error::arg("space-time Besov norm of an empty series"));
        }
        if !(r >= 1.0) {
            return Err(Error::arg(format!("time exponent must be >= 1, got {r}")));
        }
        if series.iter().any(|(w, _)| !(*w > 0.0)) {
            return Err(Error::arg("quadrature weights must be positive"));
        }
        let table: Vec<Vec<f64>> = series
            .iter()
            .map(|(_, f)| self.block_norms(f, idx.p))
            .collect::<Result<_>>()?;
        let weights: Vec<f64> = series.iter().map(|(w, _)| *w).collect();
        Ok(match flavor {
            SpaceTimeFlavor::Plain => {
                let per_time: Vec<f64> = table.iter().map(|n| weighted_lq(n, idx.s, idx.q)).collect();
                time_norm(&weights, &per_time, r)
            }
            SpaceTimeFlavor::Tilde => {
                let nblocks = table[0].len();
                let per_block: Vec<f64> = (0..nblocks)
                    .map(|b| {
                        let col: Vec<f64> = table.iter().map(|row| row[b]).collect();
                        time_norm(&weights, &col, r)
                    })
                    .collect();
                weighted_lq(&per_block, idx.s, idx.q)
            }
        })
    }
}

/// `(Σ_j 2^{jsq} a_j^q)^{1/q}` with `j` running from −1.
fn weighted_lq(norms: &[f64], s: f64, q: f64) -> f64 {
    let terms = norms
        .iter()
        .enumerate()
        .map(|(i, &a)| 2f64.powf(s * (i as f64 - 1.0)) * a);
    if q.is_infinite() {
        terms.fold(0.0, f64::max)
    } else {
        crate::field::neumaier_sum(terms.map(|x| x.powf(q))).powf(1.0 / q)
    }
}

fn time_norm(weights: &[f64], values: &[f64], r: f64) -> f64 {
    if r.is_infinite() {
        values.iter().copied().fold(0.0, f64::max)
    } else {
        crate::field::neumaier_sum(weights.iter().zip(values).map(|(w, v)| w * v.powf(r)))
            .powf(1.0 / r)
    }
}

/// Trapezoidal weights for samples at `times`; a single sample gets weight 0.
pub fn trapezoid_weights(times: &[f64]) -> Vec<f64> {
    let m = times.len();
    let mut w = vec![0.0; m];
    for i in 1..m {
        let h = 0.5 * (times[i] - times[i - 1]);
        w[i - 1] += h;
        w[i] += h;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn chi_support_conditions() {
        assert_eq!(chi_profile(0.0), 1.0);
        assert_eq!(chi_profile(0.75), 1.0);
        assert!(chi_profile(4.0 / 3.0).abs() < 1e-15);
        assert_eq!(chi_profile(1.4), 0.0);
        let mut prev = 1.0;
        for i in 0..200 {
            let v = chi_profile(i as f64 * 0.01);
            assert!(v <= prev + 1e-15 && (0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn j_max_follows_cutoff() {
        assert_eq!(DyadicPartition::new(GridSpec::new(64).unwrap()).j_max(), 4);
        assert_eq!(DyadicPartition::new(GridSpec::new(128).unwrap()).j_max(), 5);
        assert_eq!(DyadicPartition::new(GridSpec::new(8).unwrap()).j_max(), 1);
    }

    #[test]
    fn block_index_errors() {
        let g = GridSpec::new(16).unwrap();
        let p = DyadicPartition::new(g);
        let f = SpectralField::zeros(g);
        assert!(p.block(&f, -2).is_err());
        assert!(p.block(&f, p.j_max() + 1).is_err());
        assert!(p.low_pass(&f, -1).is_err());
        assert!(p.low_pass(&f, p.j_max() + 2).is_err());
    }

    #[test]
    fn top_block_matches_dyadic_formula_on_disk() {
        let g = GridSpec::new(64).unwrap();
        let p = DyadicPartition::new(g);
        let top = p.profile(p.j_max()).unwrap();
        for (idx, &w) in top.iter().enumerate() {
            let (k1, k2) = g.wavevector(idx);
            let r = ((k1 * k1 + k2 * k2) as f64).sqrt();
            if r <= g.dealias_cutoff() {
                assert!((w - annulus_profile(p.j_max(), r)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn empty_series_rejected() {
        let g = GridSpec::new(8).unwrap();
        let p = DyadicPartition::new(g);
        let idx = BesovIndex::new(0.0, 2.0, 2.0).unwrap();
        assert!(p.spacetime_besov(&[], 1.0, idx, SpaceTimeFlavor::Plain).is_err());
        let f = SpectralField::from_modes(g, |_, _| Complex64::new(0.0, 0.0));
        assert!(p.spacetime_besov(&[(0.0, f)], 1.0, idx, SpaceTimeFlavor::Plain).is_err());
    }

    #[test]
    fn trapezoid_weights_sum_to_span() {
        let w = trapezoid_weights(&[0.0, 0.1, 0.3, 0.6]);
        assert!((w.iter().sum::<f64>() - 0.6).abs() < 1e-15);
        assert!((w[0] - 0.05).abs() < 1e-15);
    }
}
