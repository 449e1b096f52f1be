use serde::Serialize;

use super::record::DiagnosticsRecord;
use crate::error::{Error, Result};

/// Relative tolerance of the transport bound.
pub const TRANSPORT_TOLERANCE: f64 = 1e-6;

/// Fewest samples accepted by [`exponential_bound_fit`].
pub const MIN_FIT_SAMPLES: usize = 16;

/// One checked inequality over a series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsEntry {
    pub name: String,
    /// Fitted (or fixed) constant; `None` for a degenerate fit.
    pub constant: Option<f64>,
    pub times: Vec<f64>,
    /// `bound − quantity` at each sample.
    pub margin: Vec<f64>,
    pub min_margin: f64,
    /// Absolute tolerance applied to the margin.
    pub tolerance: f64,
    pub violation: bool,
    pub degenerate: bool,
}

impl BoundsEntry {
    fn new(name: &str, constant: Option<f64>, times: Vec<f64>, margin: Vec<f64>, tolerance: f64) -> Self {
        let min_margin = margin.iter().copied().fold(f64::INFINITY, f64::min);
        let violation = margin.iter().any(|&m| !(m >= -tolerance));
        Self {
            name: name.into(),
            constant,
            times,
            margin,
            min_margin: if min_margin.is_finite() { min_margin } else { 0.0 },
            tolerance,
            violation,
            degenerate: constant.is_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct BoundsReport {
    pub entries: Vec<BoundsEntry>,
}

impl BoundsReport {
    pub fn any_violation(&self) -> bool {
        self.entries.iter().any(|e| e.violation)
    }

    pub fn entry(&self, name: &str) -> Option<&BoundsEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

/// Margin of `‖θ(t)‖_{L^∞} ≤ ‖θ₀‖_{L^∞} + ∫₀ᵗ‖u‖_{L^∞}dτ`, flagged when it
/// drops below `−1e−6·scale` with `scale` the largest term in the series.
/// Time is measured from the first record, so a resumed segment is checked
/// from its own starting state.
pub fn theta_transport_bound(series: &[DiagnosticsRecord]) -> BoundsEntry {
    let theta0 = series.first().map_or(0.0, |r| r.linf_theta);
    let int0 = series.first().map_or(0.0, |r| r.int_linf_u);
    let scale = series
        .iter()
        .map(|r| (theta0 + r.int_linf_u - int0).max(r.linf_theta))
        .fold(0.0, f64::max);
    BoundsEntry::new(
        "theta-transport",
        Some(1.0),
        series.iter().map(|r| r.t).collect(),
        series
            .iter()
            .map(|r| theta0 + (r.int_linf_u - int0) - r.linf_theta)
            .collect(),
        TRANSPORT_TOLERANCE * scale,
    )
}

/// Quantities fitted against `Q(0)e^{ct}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quantity {
    /// `‖(u,ω,θ)‖²_{L²} + ∫‖∇ω‖² + ∫‖Λ^{1/2}θ‖²`.
    EnergyFunctional,
    /// `‖θ‖_{L^∞}`.
    ThetaLinf,
    /// `‖Ω‖_{L^∞}`.
    VorticityLinf,
}

impl Quantity {
    pub const ALL: [Quantity; 3] = [Self::EnergyFunctional, Self::ThetaLinf, Self::VorticityLinf];

    pub fn name(&self) -> &'static str {
        match self {
            Self::EnergyFunctional => "energy-functional",
            Self::ThetaLinf => "theta-linf",
            Self::VorticityLinf => "vorticity-linf",
        }
    }

    pub fn value(&self, r: &DiagnosticsRecord) -> f64 {
        match self {
            Self::EnergyFunctional => r.energy_functional(),
            Self::ThetaLinf => r.linf_theta,
            Self::VorticityLinf => r.linf_vorticity,
        }
    }
}

/// Smallest `c ≥ 0` with `Q(t) ≤ Q(0)e^{c(t−t₀)}` on the series:
/// `c = max(0, max_t log(Q(t)/Q(0))/(t − t₀))`. A zero `Q(0)` gives a
/// degenerate entry.
pub fn exponential_bound_fit(series: &[DiagnosticsRecord], quantity: Quantity) -> Result<BoundsEntry> {
    if series.len() < MIN_FIT_SAMPLES {
        return Err(Error::arg(format!(
            "exponential fit needs at least {MIN_FIT_SAMPLES} samples, got {}",
            series.len()
        )));
    }
    let t0 = series[0].t;
    let q0 = quantity.value(&series[0]);
    let times: Vec<f64> = series.iter().map(|r| r.t).collect();
    if q0 == 0.0 {
        let margin = series.iter().map(|r| -quantity.value(r)).collect();
        return Ok(BoundsEntry::new(quantity.name(), None, times, margin, 0.0));
    }
    let c = series[1..]
        .iter()
        .filter(|r| r.t > t0)
        .map(|r| (quantity.value(r) / q0).ln() / (r.t - t0))
        .fold(0.0, f64::max);
    let margin = series
        .iter()
        .map(|r| q0 * (c * (r.t - t0)).exp() - quantity.value(r))
        .collect();
    Ok(BoundsEntry::new(quantity.name(), Some(c), times, margin, 1e-12 * q0))
}

/// Two fitted constants agree within a factor of 2; constants below
/// `floor` count as zero.
pub fn constants_stable(a: f64, b: f64, floor: f64) -> bool {
    if !(a.is_finite() && b.is_finite()) {
        return false;
    }
    let (lo, hi) = (a.min(b), a.max(b));
    if hi <= floor {
        return true;
    }
    hi < 2.0 * lo
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(values: impl Fn(f64) -> f64) -> Vec<DiagnosticsRecord> {
        (0..20)
            .map(|i| {
                let t = i as f64 * 0.05;
                let mut r = DiagnosticsRecord::default();
                r.t = t;
                r.linf_theta = values(t);
                r
            })
            .collect()
    }

    #[test]
    fn synthetic_exponential_recovers_rate() {
        let s = series(|t| 2.0 * (3.0 * t).exp());
        let e = exponential_bound_fit(&s, Quantity::ThetaLinf).unwrap();
        assert!((e.constant.unwrap() - 3.0).abs() < 1e-9);
        assert!(!e.violation);
    }

    #[test]
    fn decaying_quantity_has_zero_rate() {
        let s = series(|t| (-t).exp());
        let e = exponential_bound_fit(&s, Quantity::ThetaLinf).unwrap();
        assert_eq!(e.constant, Some(0.0));
    }

    #[test]
    fn zero_start_is_degenerate() {
        let s = series(|_| 0.0);
        let e = exponential_bound_fit(&s, Quantity::ThetaLinf).unwrap();
        assert!(e.degenerate && !e.violation);
        assert!(exponential_bound_fit(&s[..5], Quantity::ThetaLinf).is_err());
    }

    #[test]
    fn transport_margin_of_zero_series() {
        let e = theta_transport_bound(&series(|_| 0.0));
        assert!(e.margin.iter().all(|&m| m == 0.0) && !e.violation);
    }

    #[test]
    fn stability_rule() {
        assert!(constants_stable(1.0, 1.9, 1e-8));
        assert!(!constants_stable(1.0, 2.0, 1e-8));
        assert!(constants_stable(0.0, 1e-10, 1e-8));
        assert!(!constants_stable(f64::INFINITY, 1.0, 1e-8));
    }
}
