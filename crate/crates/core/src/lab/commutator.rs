use serde::Serialize;

use super::report::InequalityReport;
use crate::error::{Error, Result};
use crate::field::{lp_norm, pointwise_magnitude, product, RealField, SpectralField, VectorField};
use crate::lp::{BesovIndex, DyadicPartition};

/// `‖∇f‖_{L^p}` with the pointwise Euclidean magnitude of the gradient.
pub fn gradient_norm(f: &SpectralField, p: f64) -> f64 {
    let g = f.gradient().to_real();
    lp_norm(&pointwise_magnitude(&g).expect("same grid"), p)
}

/// `‖∇u‖_{L^p}` with the pointwise Frobenius norm of the velocity gradient.
pub fn velocity_gradient_norm(u: &VectorField, p: f64) -> f64 {
    let parts: Vec<RealField> = [&u.u1, &u.u2]
        .iter()
        .flat_map(|c| [c.partial(1).to_real(), c.partial(2).to_real()])
        .collect();
    lp_norm(&pointwise_magnitude(&parts).expect("same grid"), p)
}

fn vector_norm(parts: &[SpectralField], p: f64) -> f64 {
    let reals: Vec<RealField> = parts.iter().map(|f| f.to_real()).collect();
    lp_norm(&pointwise_magnitude(&reals).expect("same grid"), p)
}

fn require_divergence_free(u: &VectorField) -> Result<()> {
    if !u.is_divergence_free() {
        return Err(Error::NotDivergenceFree(u.divergence_defect()));
    }
    Ok(())
}

/// `[Λ^s, f]g = Λ^s(fg) − fΛ^s g`, with both products dealiased.
pub fn lambda_commutator(f: &SpectralField, g: &SpectralField, s: f64) -> Result<SpectralField> {
    f.grid().check_same(g.grid())?;
    product(f, g).lambda_pow(s).sub(&product(f, &g.lambda_pow(s)))
}

/// Exponents `(r, p₁, q₁, p₂, q₂)` with `1/r = 1/p₁ + 1/q₁ = 1/p₂ + 1/q₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutatorExponents {
    pub r: f64,
    pub p1: f64,
    pub q1: f64,
    pub p2: f64,
    pub q2: f64,
}

fn inv(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

impl CommutatorExponents {
    pub fn new(r: f64, p1: f64, q1: f64, p2: f64, q2: f64) -> Result<Self> {
        let e = Self { r, p1, q1, p2, q2 };
        e.validate()?;
        Ok(e)
    }

    pub fn validate(&self) -> Result<()> {
        let ok_range = self.r > 1.0
            && self.r.is_finite()
            && [self.p1, self.q1, self.p2, self.q2].iter().all(|&x| x >= 1.0);
        let rel1 = (inv(self.r) - inv(self.p1) - inv(self.q1)).abs();
        let rel2 = (inv(self.r) - inv(self.p2) - inv(self.q2)).abs();
        if !ok_range || rel1 > 1e-12 || rel2 > 1e-12 {
            return Err(Error::arg(format!(
                "exponents violate 1/r = 1/p1 + 1/q1 = 1/p2 + 1/q2: {self:?}"
            )));
        }
        Ok(())
    }

    /// Exponents of the `Λ` commutator in the `Ḣ¹` temperature estimate:
    /// `r = 4/3`, `(p₁, q₁) = (p₂, q₂) = (4, 2)`.
    pub fn h1_temperature() -> Self {
        Self {
            r: 4.0 / 3.0,
            p1: 4.0,
            q1: 2.0,
            p2: 4.0,
            q2: 2.0,
        }
    }
}

/// `‖[Λ^s,f]g‖_{L^r}` against
/// `‖∇f‖_{L^{p₁}}‖Λ^{s−1}g‖_{L^{q₁}} + ‖Λ^s f‖_{L^{p₂}}‖g‖_{L^{q₂}}`.
pub fn lambda_commutator_check(
    f: &SpectralField,
    g: &SpectralField,
    s: f64,
    e: CommutatorExponents,
) -> Result<InequalityReport> {
    e.validate()?;
    let lhs = lp_norm(&lambda_commutator(f, g, s)?.to_real(), e.r);
    let rhs = gradient_norm(f, e.p1) * lp_norm(&g.lambda_pow(s - 1.0).to_real(), e.q1)
        + lp_norm(&f.lambda_pow(s).to_real(), e.p2) * lp_norm(&g.to_real(), e.q2);
    Ok(InequalityReport::new("lambda-commutator", lhs, rhs))
}

/// `[Λ^s, u·∇]θ = Λ^s(u·∇θ) − u·∇Λ^sθ`.
pub fn transport_commutator(u: &VectorField, theta: &SpectralField, s: f64) -> Result<SpectralField> {
    u.advect(theta)?
        .lambda_pow(s)
        .sub(&u.advect(&theta.lambda_pow(s))?)
}

/// Componentwise form of the `Λ^s` commutator bound for `[Λ^s, u·∇]θ`:
/// lhs `‖[Λ^s,u·∇]θ‖_{L^r}`, rhs
/// `‖∇u‖_{L^{p₁}}‖Λ^{s−1}∇θ‖_{L^{q₁}} + ‖Λ^s u‖_{L^{p₂}}‖∇θ‖_{L^{q₂}}`.
pub fn transport_commutator_check(
    u: &VectorField,
    theta: &SpectralField,
    s: f64,
    e: CommutatorExponents,
) -> Result<InequalityReport> {
    e.validate()?;
    let lhs = lp_norm(&transport_commutator(u, theta, s)?.to_real(), e.r);
    let grad = theta.gradient();
    let rhs = velocity_gradient_norm(u, e.p1)
        * vector_norm(&[grad.u1.lambda_pow(s - 1.0), grad.u2.lambda_pow(s - 1.0)], e.q1)
        + vector_norm(&[u.u1.lambda_pow(s), u.u2.lambda_pow(s)], e.p2)
            * vector_norm(&[grad.u1.clone(), grad.u2.clone()], e.q2);
    Ok(InequalityReport::new("transport-commutator", lhs, rhs))
}

/// `[ℛ₁, u·∇]θ = ℛ₁(u·∇θ) − u·∇ℛ₁θ`.
pub fn riesz_commutator(u: &VectorField, theta: &SpectralField) -> Result<SpectralField> {
    require_divergence_free(u)?;
    u.advect(theta)?.riesz1().sub(&u.advect(&theta.riesz1())?)
}

/// Two reports for the Riesz commutator:
///
/// 1. `‖[ℛ₁,u·∇]θ‖_{L^p}` against `‖∇u‖_{L^p}‖θ‖_{L^∞}`;
/// 2. `‖[ℛ₁,u·∇]θ‖_{B⁰_{∞,1}}` against
///    `(‖Ω‖_{L^∞} + ‖Ω‖_{L^p})(‖θ‖_{B^{1/2}_{∞,1}} + ‖θ‖_{L^p})`.
pub fn riesz_commutator_check(
    u: &VectorField,
    theta: &SpectralField,
    p: f64,
    partition: &DyadicPartition,
) -> Result<[InequalityReport; 2]> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::arg(format!("need 1 < p < ∞, got {p}")));
    }
    let comm = riesz_commutator(u, theta)?;
    let th = theta.to_real();
    let first = InequalityReport::new(
        "riesz-commutator-lp",
        lp_norm(&comm.to_real(), p),
        velocity_gradient_norm(u, p) * lp_norm(&th, f64::INFINITY),
    );
    let omega = u.curl().to_real();
    let b0 = BesovIndex::new(0.0, f64::INFINITY, 1.0)?;
    let b_eps = BesovIndex::new(0.5, f64::INFINITY, 1.0)?;
    let second = InequalityReport::new(
        "riesz-commutator-besov",
        partition.besov_norm(&comm, b0)?,
        (lp_norm(&omega, f64::INFINITY) + lp_norm(&omega, p))
            * (partition.besov_norm(theta, b_eps)? + lp_norm(&th, p)),
    );
    Ok([first, second])
}

/// `[Δ_q, u·∇]θ = Δ_q(u·∇θ) − u·∇Δ_qθ`.
pub fn block_commutator(
    u: &VectorField,
    theta: &SpectralField,
    q: i32,
    partition: &DyadicPartition,
) -> Result<SpectralField> {
    require_divergence_free(u)?;
    partition
        .block(&u.advect(theta)?, q)?
        .sub(&u.advect(&partition.block(theta, q)?)?)
}

/// `‖[Δ_q,u·∇]θ‖_{L^p}` against `‖∇u‖_{L^p}‖θ‖_{B⁰_{∞,∞}}`.
pub fn block_commutator_check(
    u: &VectorField,
    theta: &SpectralField,
    q: i32,
    p: f64,
    partition: &DyadicPartition,
) -> Result<InequalityReport> {
    let comm = block_commutator(u, theta, q, partition)?;
    let b = BesovIndex::new(0.0, f64::INFINITY, f64::INFINITY)?;
    Ok(InequalityReport::new(
        format!("block-commutator-q{q}"),
        lp_norm(&comm.to_real(), p),
        velocity_gradient_norm(u, p) * partition.besov_norm(theta, b)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_relation_enforced() {
        assert!(CommutatorExponents::new(2.0, f64::INFINITY, 2.0, 4.0, 4.0).is_ok());
        assert!(CommutatorExponents::h1_temperature().validate().is_ok());
        assert!(CommutatorExponents::new(2.0, 4.0, 2.0, 4.0, 4.0).is_err());
        assert!(CommutatorExponents::new(1.0, 2.0, 2.0, 2.0, 2.0).is_err());
    }
}
