use num_complex::Complex64;

use super::params::Params;
use super::state::State;
use crate::error::{Error, Result};
use crate::field::SpectralField;

/// Minimum snapshot density (samples per unit time).
const MIN_DENSITY: f64 = 32.0;

/// Forcing of the micro-rotation Duhamel formula, `2χΩ − 4χω − u·∇ω`.
fn forcing(state: &State, params: &Params) -> Result<SpectralField> {
    let c = params.couplings;
    let mut g = state.micro_rotation.scale(-4.0 * params.chi);
    if c.rotation {
        g = g.axpy(2.0 * params.chi, &state.vorticity)?;
    }
    if c.advection {
        g = g.sub(&state.velocity().advect(&state.micro_rotation)?)?;
    }
    Ok(g)
}

/// Weights `(A, B)` of `∫₀ʰ e^{−λσ}[g_i σ/h + g_{i+1}(h−σ)/h] dσ = A g_i + B g_{i+1}`.
fn product_weights(lambda: f64, h: f64) -> (f64, f64) {
    let z = lambda * h;
    if z < 1e-2 {
        let a = 0.5 - z / 3.0 + z * z / 8.0 - z.powi(3) / 30.0 + z.powi(4) / 144.0;
        let b = 0.5 - z / 6.0 + z * z / 24.0 - z.powi(3) / 120.0 + z.powi(4) / 720.0;
        (h * a, h * b)
    } else {
        let e = (-z).exp();
        let a = (1.0 - e * (1.0 + z)) / (z * z);
        let b = (z - 1.0 + e) / (z * z);
        (h * a, h * b)
    }
}

/// Rebuilds `ω` from the Duhamel formula
/// `ω(t) = e^{νtΔ}ω₀ + ∫₀ᵗ e^{ν(t−τ)Δ}(2χΩ − 4χω − u·∇ω) dτ`
/// over the stored snapshots and returns the largest relative L² deviation
/// from the stepped `ω`.
///
/// The forcing is interpolated linearly between snapshots and the heat
/// kernel is integrated exactly on each interval (product trapezoidal rule).
pub fn mild_omega_check(trajectory: &[State], params: &Params) -> Result<f64> {
    let (first, last) = match (trajectory.first(), trajectory.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(Error::arg("empty trajectory")),
    };
    let span = last.t - first.t;
    if trajectory.len() < 2 || ((trajectory.len() - 1) as f64) < MIN_DENSITY * span {
        return Err(Error::arg(format!(
            "trajectory too sparse: {} samples over {span}",
            trajectory.len()
        )));
    }
    let grid = *first.grid();
    let rates: Vec<f64> = (0..grid.len())
        .map(|idx| {
            let (k1, k2) = grid.wavevector(idx);
            params.nu * (k1 * k1 + k2 * k2) as f64
        })
        .collect();

    let mut rebuilt: Vec<Complex64> = first.micro_rotation.coeffs().to_vec();
    let mut g_prev = forcing(first, params)?;
    let mut worst = 0.0f64;
    for pair in trajectory.windows(2) {
        let h = pair[1].t - pair[0].t;
        if !(h > 0.0) {
            return Err(Error::arg("trajectory times must increase"));
        }
        let g_next = forcing(&pair[1], params)?;
        for (idx, c) in rebuilt.iter_mut().enumerate() {
            let (a, b) = product_weights(rates[idx], h);
            *c = *c * (-rates[idx] * h).exp() + g_prev.coeffs()[idx] * a + g_next.coeffs()[idx] * b;
        }
        let stepped = pair[1].micro_rotation.coeffs();
        let diff = crate::field::neumaier_sum(
            rebuilt.iter().zip(stepped).map(|(x, y)| (x - y).norm_sqr()),
        )
        .sqrt();
        let norm = crate::field::neumaier_sum(stepped.iter().map(|y| y.norm_sqr())).sqrt();
        if diff > 0.0 {
            worst = worst.max(diff / norm.max(f64::MIN_POSITIVE));
        }
        g_prev = g_next;
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_weights_branches_agree() {
        // Just below the switch the series must match the closed form.
        for &h in &[0.01, 0.1] {
            let z = 0.999e-2;
            let (a, b) = product_weights(z / h, h);
            let e = (-z).exp();
            let a_exact = h * (1.0 - e * (1.0 + z)) / (z * z);
            let b_exact = h * (z - 1.0 + e) / (z * z);
            assert!((a - a_exact).abs() < 1e-9 * h && (b - b_exact).abs() < 1e-9 * h);
        }
        let (a, b) = product_weights(0.0, 0.2);
        assert_eq!((a, b), (0.1, 0.1));
    }

    #[test]
    fn product_weights_integrate_exponential_exactly() {
        // g ≡ 1 on the interval: A + B = (1 − e^{−λh})/λ
        let (lam, h) = (7.0, 0.3);
        let (a, b) = product_weights(lam, h);
        assert!((a + b - (1.0 - (-lam * h).exp()) / lam).abs() < 1e-15);
    }

    #[test]
    fn sparse_trajectory_rejected() {
        let g = crate::field::GridSpec::new(8).unwrap();
        let mut s1 = State::zeros(g);
        s1.t = 1.0;
        assert!(mild_omega_check(&[State::zeros(g), s1], &Params::default()).is_err());
        assert!(mild_omega_check(&[], &Params::default()).is_err());
    }
}
