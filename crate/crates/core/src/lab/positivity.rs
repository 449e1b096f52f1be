//! Positivity of `∫|f|^{p−2} f Λ^s f` against `(2/p)‖Λ^{s/2}|f|^{p/2}‖²`.
//!
//! For even `p` the integrand `|f|^{p−2}f = f^{p−1}` is a polynomial, and
//! `|f|^{p/2}` is evaluated as the polynomial `f^{p/2}` (for `p ≡ 2 mod 4`
//! this is the signed power, for which the same inequality holds and which
//! makes the `p = 2` case an exact identity). All pointwise powers are
//! formed on an oversampled grid large enough that neither the integral nor
//! the spectrum of `f^{p/2}` aliases.

use crate::error::{Error, Result};
use crate::field::{neumaier_sum, resample, GridSpec, RealField};

fn oversampling(p: u32) -> usize {
    if p <= 6 {
        2
    } else {
        4
    }
}

/// `(lhs, rhs)` with lhs `∫ f^{p−1} Λ^s f` and rhs `(2/p)‖Λ^{s/2} f^{p/2}‖²_{L²}`.
pub fn positivity_terms(f: &RealField, s: f64, p: u32) -> Result<(f64, f64)> {
    if !matches!(p, 2 | 4 | 6 | 8) {
        return Err(Error::arg(format!("p must be one of 2, 4, 6, 8, got {p}")));
    }
    if !(0.0..=2.0).contains(&s) {
        return Err(Error::arg(format!("s must lie in [0, 2], got {s}")));
    }
    let spec = f.forward();
    let n = f.grid().n() * oversampling(p);
    let fine = GridSpec::with_dealias(n, 1.0)?;
    let fine_f = resample(&spec, fine);
    let values = fine_f.to_real();
    let lifted = fine_f.lambda_pow(s).to_real();

    let area = fine.cell_area();
    let lhs = area
        * neumaier_sum(
            values
                .values()
                .iter()
                .zip(lifted.values())
                .map(|(&v, &l)| v.powi(p as i32 - 1) * l),
        );
    let power = values.map(|v| v.powi(p as i32 / 2)).forward();
    let rhs = 2.0 / p as f64 * power.lambda_pow(0.5 * s).l2_norm().powi(2);
    Ok((lhs, rhs))
}

/// `∫ f^{p−1} Λ^s f − (2/p)‖Λ^{s/2} f^{p/2}‖²_{L²}`; nonnegative up to rounding.
pub fn positivity_gap(f: &RealField, s: f64, p: u32) -> Result<f64> {
    let (lhs, rhs) = positivity_terms(f, s, p)?;
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::lp_norm;

    fn profile(x: f64, y: f64) -> f64 {
        x.sin() + 0.5 * (2.0 * y).cos() + 0.25 * (x + 3.0 * y).sin()
    }

    fn sample() -> RealField {
        RealField::from_fn(GridSpec::new(16).unwrap(), profile)
    }

    #[test]
    fn p2_is_an_identity() {
        for s in [0.0, 0.5, 1.0, 2.0] {
            assert!(positivity_gap(&sample(), s, 2).unwrap().abs() < 1e-11);
        }
    }

    #[test]
    fn s0_reduces_to_lp_norm() {
        let f = sample();
        // The p-th power needs a grid fine enough not to alias its mean.
        let fine = RealField::from_fn(GridSpec::new(64).unwrap(), profile);
        for p in [4, 6, 8] {
            let expected = (1.0 - 2.0 / p as f64) * lp_norm(&fine, p as f64).powi(p as i32);
            let gap = positivity_gap(&f, 0.0, p).unwrap();
            assert!((gap - expected).abs() < 1e-10 * expected, "p={p}: {gap} vs {expected}");
        }
    }

    #[test]
    fn rejects_odd_exponent() {
        assert!(positivity_gap(&sample(), 1.0, 3).is_err());
        assert!(positivity_gap(&sample(), 2.5, 4).is_err());
    }
}
