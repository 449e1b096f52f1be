use super::commutator::gradient_norm;
use super::report::InequalityReport;
use crate::error::{Error, Result};
use crate::lp::{BesovIndex, DyadicPartition};
use crate::field::{lp_norm, SpectralField};

/// Logarithmic Sobolev inequality: lhs `‖∇f‖_{L^∞}`, rhs
/// `‖∇f‖_{L²} + ‖∇f‖_{B⁰_{∞,∞}} log(e + ‖Λ^s f‖_{L²})`.
pub fn log_sobolev_check(
    f: &SpectralField,
    s: f64,
    partition: &DyadicPartition,
) -> Result<InequalityReport> {
    if !(s > 2.0) {
        return Err(Error::arg(format!("need s > 2, got {s}")));
    }
    let grad = f.gradient();
    let besov = partition.besov_norm_vector(
        &[&grad.u1, &grad.u2],
        BesovIndex::new(0.0, f64::INFINITY, f64::INFINITY)?,
    )?;
    let top = lp_norm(&f.lambda_pow(s).to_real(), 2.0);
    Ok(InequalityReport::new(
        "log-sobolev",
        gradient_norm(f, f64::INFINITY),
        gradient_norm(f, 2.0) + besov * (std::f64::consts::E + top).ln(),
    ))
}
