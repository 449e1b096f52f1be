use num_complex::Complex64;

use super::spectral::{RealField, SpectralField};
use crate::error::Result;

/// Neumaier-compensated sum.
pub fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `‖f‖_{L^p}` on the torus with midpoint quadrature; `p = ∞` is the
/// collocation maximum, which underestimates the true supremum.
pub fn lp_norm(f: &RealField, p: f64) -> f64 {
    debug_assert!(p >= 1.0, "L^p exponent must be >= 1");
    if p.is_infinite() {
        return f.values().iter().fold(0.0, |m, v| m.max(v.abs()));
    }
    let area = f.grid().cell_area();
    let integral = if p == 2.0 {
        neumaier_sum(f.values().iter().map(|v| v * v))
    } else if p == 1.0 {
        neumaier_sum(f.values().iter().map(|v| v.abs()))
    } else {
        neumaier_sum(f.values().iter().map(|v| v.abs().powf(p)))
    };
    (integral * area).powf(1.0 / p)
}

/// Pointwise Euclidean magnitude of a list of component fields.
pub fn pointwise_magnitude(components: &[RealField]) -> Result<RealField> {
    let first = &components[0];
    let mut acc = first.map(|v| v * v);
    for c in &components[1..] {
        acc = acc.zip_with(c, |a, b| a + b * b)?;
    }
    Ok(acc.map(f64::sqrt))
}

/// `∫ f ḡ dx = (2π)² Σ_k f̂(k) conj(ĝ(k))`, real part.
pub fn inner_product(f: &SpectralField, g: &SpectralField) -> Result<f64> {
    f.grid().check_same(g.grid())?;
    let s = neumaier_sum(
        f.coeffs()
            .iter()
            .zip(g.coeffs())
            .map(|(a, b): (&Complex64, &Complex64)| (a * b.conj()).re),
    );
    Ok(f.grid().length().powi(2) * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GridSpec;
    use std::f64::consts::PI;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let vals = std::iter::once(1e16).chain(std::iter::repeat(1.0).take(1000)).chain(std::iter::once(-1e16));
        assert_eq!(neumaier_sum(vals), 1000.0);
    }

    #[test]
    fn constant_and_sine_norms() {
        let g = GridSpec::new(64).unwrap();
        let c = RealField::from_fn(g, |_, _| 3.0);
        assert!((lp_norm(&c, 2.0) - 3.0 * 2.0 * PI).abs() < 1e-12);
        let s = RealField::from_fn(g, |x, _| x.sin());
        assert!((lp_norm(&s, f64::INFINITY) - 1.0).abs() < 1e-3);
        assert!((lp_norm(&s, 2.0) - 2f64.sqrt() * PI).abs() < 1e-12);
        // |sin| has a kink, so the collocation sum is only second-order accurate.
        assert!((lp_norm(&s, 1.0) - 8.0 * PI).abs() < 1e-3 * 8.0 * PI);
    }
}
