use num_complex::Complex64;

use super::params::Params;
use super::state::State;
use crate::field::{advect_real, RealField, SpectralField};

/// Time derivatives `(dΩ, dω, dθ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tendency {
    pub vorticity: SpectralField,
    pub micro_rotation: SpectralField,
    pub temperature: SpectralField,
}

/// Full right-hand side of the system at `state`.
pub fn rhs(state: &State, params: &Params) -> Tendency {
    let mut t = explicit_terms(state, params);
    let grid = *state.grid();
    let om = state.vorticity.coeffs();
    let w = state.micro_rotation.coeffs();
    let th = state.temperature.coeffs();
    for idx in 0..grid.len() {
        let (k1, k2) = grid.wavevector(idx);
        let ks = (k1 * k1 + k2 * k2) as f64;
        let [a, b, c, d] = params.rotation_block(ks);
        t.vorticity.coeffs_mut()[idx] += om[idx] * a + w[idx] * b;
        t.micro_rotation.coeffs_mut()[idx] += om[idx] * c + w[idx] * d;
        t.temperature.coeffs_mut()[idx] -= th[idx] * params.theta_rate(ks);
    }
    for f in [&mut t.vorticity, &mut t.micro_rotation, &mut t.temperature] {
        f.dealias();
    }
    t
}

/// Terms integrated explicitly: transport plus the buoyancy exchange
/// `∂₁θ → Ω`, `u₂ → θ`. The `(Ω, ω)` block and `Λ^β` are exponentiated.
pub(crate) fn explicit_terms(state: &State, params: &Params) -> Tendency {
    let grid = *state.grid();
    let c = params.couplings;
    let u = state.velocity();

    let (mut d_om, d_w, mut d_th) = if c.advection {
        let ur: [RealField; 2] = u.to_real();
        let adv = |f: &SpectralField| advect_real(&ur, f).scale(-1.0);
        (
            adv(&state.vorticity),
            adv(&state.micro_rotation),
            adv(&state.temperature),
        )
    } else {
        (
            SpectralField::zeros(grid),
            SpectralField::zeros(grid),
            SpectralField::zeros(grid),
        )
    };

    if c.buoyancy {
        let th = state.temperature.coeffs();
        let u2 = u.u2.coeffs();
        for idx in 0..grid.len() {
            let (k1, _) = grid.wavevector(idx);
            if !grid.is_nyquist(k1) {
                d_om.coeffs_mut()[idx] += th[idx] * Complex64::new(0.0, k1 as f64);
            }
            d_th.coeffs_mut()[idx] += u2[idx];
        }
    }
    Tendency {
        vorticity: d_om,
        micro_rotation: d_w,
        temperature: d_th,
    }
}
