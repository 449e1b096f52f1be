use serde::Serialize;

use super::report::InequalityReport;
use crate::error::{Error, Result};
use crate::field::{lp_norm, SpectralField};
use crate::lp::DyadicPartition;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BernsteinReport {
    /// `‖Λ^{2α}f‖_{L^q}` against `2^{2αj + 2j(1/p − 1/q)}‖f‖_{L^p}`.
    pub upper: InequalityReport,
    /// `‖Λ^{2α}f‖_{L^q}` against `2^{2αj}‖f‖_{L^q}` (reverse direction).
    pub lower: InequalityReport,
}

fn inv(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

/// Bernstein ratios for a field supported in the annulus of block `j`.
pub fn bernstein_check(
    f: &SpectralField,
    j: i32,
    alpha: f64,
    p: f64,
    q: f64,
    partition: &DyadicPartition,
) -> Result<BernsteinReport> {
    if !(2.0 <= p && p <= q) {
        return Err(Error::arg(format!("need 2 <= p <= q, got p = {p}, q = {q}")));
    }
    let profile = partition.profile(j)?;
    let outside = f
        .coeffs()
        .iter()
        .zip(profile)
        .filter(|(_, &w)| w == 0.0)
        .map(|(c, _)| c.norm())
        .fold(0.0, f64::max);
    if outside > 1e-12 * f.max_abs().max(f64::MIN_POSITIVE) {
        return Err(Error::arg(format!("field is not supported in annulus {j}")));
    }
    let lifted = f.lambda_pow(2.0 * alpha).to_real();
    let lhs = lp_norm(&lifted, q);
    let real = f.to_real();
    let scale = 2f64.powf(j as f64);
    let upper_rhs = scale.powf(2.0 * alpha + 2.0 * (inv(p) - inv(q))) * lp_norm(&real, p);
    let lower_rhs = scale.powf(2.0 * alpha) * lp_norm(&real, q);
    Ok(BernsteinReport {
        upper: InequalityReport::new("bernstein-upper", lhs, upper_rhs),
        lower: InequalityReport::new("bernstein-lower", lhs, lower_rhs),
    })
}
