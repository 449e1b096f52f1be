//! Seeded ensembles for every inequality verifier.
//!
//! Members are drawn with [`member_rng`](super::ensemble::member_rng) so each
//! member is reproducible on its own; evaluation fans out over the worker
//! pool and results are collected in member order.

use serde::Serialize;

use super::ensemble::{annulus_field, flat_spectrum_field, member_rng, power_law_field, random_velocity};
use super::{
    bernstein_check, block_commutator_check, heat_decay_check, lambda_commutator_check,
    log_sobolev_check, positivity_terms, riesz_commutator_check, CommutatorExponents,
    EnsembleStats, HeatWindow, InequalityReport,
};
use crate::error::Result;
use crate::field::GridSpec;
use crate::lp::DyadicPartition;
use crate::parallel;

/// Ensemble size and seed shared by a suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnsembleSpec {
    pub members: usize,
    pub seed: u64,
}

impl Default for EnsembleSpec {
    fn default() -> Self {
        Self {
            members: 100,
            seed: 20_240_601,
        }
    }
}

/// Spectral slope used for member `m`: alternates between `|k|^{−1}` and
/// `|k|^{−2}` so both rough and smooth members appear.
pub fn member_gamma(member: u64) -> f64 {
    if member % 2 == 0 {
        1.0
    } else {
        2.0
    }
}

fn run<T: Send>(spec: EnsembleSpec, f: impl Fn(u64) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    parallel::map_range(spec.members, |m| f(m as u64)).into_iter().collect()
}

fn grid(n: usize) -> Result<GridSpec> {
    GridSpec::new(n)
}

/// Bernstein upper ratios (α = 1/2, `(p, q) = (2, ∞)`) for annulus-supported
/// fields in block `j`.
pub fn bernstein_ensemble(n: usize, j: i32, spec: EnsembleSpec) -> Result<EnsembleStats> {
    let partition = DyadicPartition::new(grid(n)?);
    let reports = run(spec, |m| {
        let mut rng = member_rng(spec.seed ^ (j as u64) << 32, m);
        let f = annulus_field(&partition, j, &mut rng);
        Ok(bernstein_check(&f, j, 0.5, 2.0, f64::INFINITY, &partition)?.upper)
    })?;
    Ok(EnsembleStats::from_reports(&reports))
}

/// `Λ^s` commutator with `s = 1` and exponents `(r, p₁, q₁, p₂, q₂) = (2, ∞, 2, 4, 4)`.
pub fn lambda_commutator_ensemble(n: usize, spec: EnsembleSpec) -> Result<EnsembleStats> {
    let g = grid(n)?;
    let e = CommutatorExponents::new(2.0, f64::INFINITY, 2.0, 4.0, 4.0)?;
    let reports = run(spec, |m| {
        let mut rng = member_rng(spec.seed, m);
        let gamma = member_gamma(m);
        let f = power_law_field(g, gamma, &mut rng);
        let h = power_law_field(g, gamma, &mut rng);
        lambda_commutator_check(&f, &h, 1.0, e)
    })?;
    Ok(EnsembleStats::from_reports(&reports))
}

/// Both Riesz-commutator estimates at exponent `p`.
pub fn riesz_commutator_ensemble(n: usize, p: f64, spec: EnsembleSpec) -> Result<[EnsembleStats; 2]> {
    let g = grid(n)?;
    let partition = DyadicPartition::new(g);
    let reports = run(spec, |m| {
        let mut rng = member_rng(spec.seed.wrapping_add(1), m);
        let gamma = member_gamma(m);
        let u = random_velocity(g, gamma, &mut rng);
        let theta = power_law_field(g, gamma, &mut rng);
        riesz_commutator_check(&u, &theta, p, &partition)
    })?;
    Ok([
        EnsembleStats::from_reports(reports.iter().map(|r| &r[0])),
        EnsembleStats::from_reports(reports.iter().map(|r| &r[1])),
    ])
}

/// Block-commutator ratios at exponent `p`, one entry per block `0..=j_max`.
pub fn block_commutator_ensemble(n: usize, p: f64, spec: EnsembleSpec) -> Result<Vec<EnsembleStats>> {
    let g = grid(n)?;
    let partition = DyadicPartition::new(g);
    let reports: Vec<Vec<InequalityReport>> = run(spec, |m| {
        let mut rng = member_rng(spec.seed.wrapping_add(2), m);
        let gamma = member_gamma(m);
        let u = random_velocity(g, gamma, &mut rng);
        let theta = power_law_field(g, gamma, &mut rng);
        (0..=partition.j_max())
            .map(|q| block_commutator_check(&u, &theta, q, p, &partition))
            .collect()
    })?;
    Ok((0..=partition.j_max() as usize)
        .map(|q| EnsembleStats::from_reports(reports.iter().map(|r| &r[q])))
        .collect())
}

/// Logarithmic Sobolev ratios with `s = 3` on `|k|^{−2}` fields.
pub fn log_sobolev_ensemble(n: usize, spec: EnsembleSpec) -> Result<EnsembleStats> {
    let g = grid(n)?;
    let partition = DyadicPartition::new(g);
    let reports = run(spec, |m| {
        let mut rng = member_rng(spec.seed.wrapping_add(3), m);
        let f = power_law_field(g, 2.0, &mut rng);
        log_sobolev_check(&f, 3.0, &partition)
    })?;
    Ok(EnsembleStats::from_reports(&reports))
}

/// Extremes of the positivity gap over an ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositivitySummary {
    /// Minimum of `gap / scale` over `s ∈ {1/2, 1}`, `p ∈ {4, 6}`, with
    /// `scale = max(|lhs|, rhs)`.
    pub min_relative_gap: f64,
    /// Maximum of `|gap|` at `p = 2` over the same `s` values.
    pub max_abs_gap_p2: f64,
    pub evaluations: usize,
}

pub fn positivity_ensemble(n: usize, spec: EnsembleSpec) -> Result<PositivitySummary> {
    let g = grid(n)?;
    let rows = run(spec, |m| {
        let mut rng = member_rng(spec.seed.wrapping_add(4), m);
        let f = power_law_field(g, member_gamma(m), &mut rng).to_real();
        let mut rel = f64::INFINITY;
        let mut p2 = 0.0f64;
        for s in [0.5, 1.0] {
            for p in [4, 6] {
                let (lhs, rhs) = positivity_terms(&f, s, p)?;
                let scale = lhs.abs().max(rhs);
                rel = rel.min(if scale > 0.0 { (lhs - rhs) / scale } else { 0.0 });
            }
            let (lhs, rhs) = positivity_terms(&f, s, 2)?;
            p2 = p2.max((lhs - rhs).abs());
        }
        Ok((rel, p2))
    })?;
    Ok(PositivitySummary {
        min_relative_gap: rows.iter().map(|r| r.0).fold(f64::INFINITY, f64::min),
        max_abs_gap_p2: rows.iter().map(|r| r.1).fold(0.0, f64::max),
        evaluations: rows.len() * 6,
    })
}

/// Heat-decay slopes for flat-spectrum data on `1 ≤ |k| ≤ n/3`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatSummary {
    pub p: f64,
    pub q: f64,
    pub bound: f64,
    /// Largest (least negative) fitted slope over the ensemble.
    pub max_slope: f64,
    pub slopes: Vec<f64>,
}

pub fn heat_decay_ensemble(n: usize, p: f64, q: f64, spec: EnsembleSpec) -> Result<HeatSummary> {
    let g = grid(n)?;
    let window = HeatWindow::for_grid(&g);
    let reports = run(spec, |m| {
        let mut rng = member_rng(spec.seed.wrapping_add(5), m);
        let f = flat_spectrum_field(g, 1.0, n as f64 / 3.0, &mut rng);
        heat_decay_check(&f, 1.0, p, q, window)
    })?;
    let bound = reports.first().map_or(f64::NAN, |r| r.bound);
    let slopes: Vec<f64> = reports.iter().map(|r| r.slope).collect();
    Ok(HeatSummary {
        p,
        q,
        bound,
        max_slope: slopes.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        slopes,
    })
}
