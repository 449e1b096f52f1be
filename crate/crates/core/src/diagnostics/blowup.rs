use serde::Serialize;

use super::record::DiagnosticsRecord;
use crate::field::SpectralField;
use crate::lab::ls_slope;

/// Tail slopes above this value mean the top octave is no longer decaying
/// fast enough for the grid to resolve the solution.
pub const TAIL_SLOPE_LIMIT: f64 = -2.0;

/// `E(m) = Σ_{m−1/2 ≤ |k| < m+1/2} |f̂(k)|²` for integer shells `m`.
pub fn shell_spectrum(f: &SpectralField) -> Vec<f64> {
    let grid = f.grid();
    let shells = (grid.dealias_cutoff() * std::f64::consts::SQRT_2).ceil() as usize + 2;
    let mut e = vec![0.0; shells];
    for (idx, c) in f.coeffs().iter().enumerate() {
        let (k1, k2) = grid.wavevector(idx);
        let m = ((k1 * k1 + k2 * k2) as f64).sqrt().round() as usize;
        if m < shells {
            e[m] += c.norm_sqr();
        }
    }
    e
}

/// Shells holding less than this fraction of the total energy are treated
/// as empty (round-off level).
const SHELL_FLOOR: f64 = 1e-24;

/// Least-squares slope of `log E(m)` against `log m` over the top resolved
/// octave `cutoff/2 ≤ m ≤ cutoff`, ignoring shells at round-off level.
/// `None` if fewer than two shells carry energy.
pub fn tail_slope(f: &SpectralField) -> Option<f64> {
    let cutoff = f.grid().dealias_cutoff();
    let e = shell_spectrum(f);
    let floor = SHELL_FLOOR * e.iter().sum::<f64>();
    let (x, y): (Vec<f64>, Vec<f64>) = e
        .iter()
        .enumerate()
        .filter(|&(m, &v)| m as f64 >= 0.5 * cutoff && m as f64 <= cutoff && v > floor && v > 0.0)
        .map(|(m, &v)| ((m as f64).ln(), v.ln()))
        .unzip();
    (x.len() >= 2).then(|| ls_slope(&x, &y))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowupReport {
    /// Average growth rate of `∫₀ᵗ‖Ω‖_{L^∞}dτ` over the second half of the
    /// series (equal to the mean of `‖Ω‖_{L^∞}` there).
    pub vorticity_integral_growth: f64,
    pub final_integral: f64,
    pub tail_slope_theta: Option<f64>,
    pub tail_slope_vorticity: Option<f64>,
    /// Largest tail slope seen anywhere in the series.
    pub worst_tail_slope: Option<f64>,
    pub resolution_exhausted: bool,
}

/// Summarises a series of records.
pub fn blowup_indicator(series: &[DiagnosticsRecord]) -> BlowupReport {
    let (Some(first), Some(last)) = (series.first(), series.last()) else {
        return BlowupReport {
            vorticity_integral_growth: 0.0,
            final_integral: 0.0,
            tail_slope_theta: None,
            tail_slope_vorticity: None,
            worst_tail_slope: None,
            resolution_exhausted: false,
        };
    };
    let t_mid = 0.5 * (first.t + last.t);
    let mid = series.iter().find(|r| r.t >= t_mid).unwrap_or(first);
    let growth = if last.t > mid.t {
        (last.int_linf_vorticity - mid.int_linf_vorticity) / (last.t - mid.t)
    } else {
        0.0
    };
    let worst = series
        .iter()
        .flat_map(|r| [r.tail_theta, r.tail_vorticity])
        .flatten()
        .reduce(f64::max);
    BlowupReport {
        vorticity_integral_growth: growth,
        final_integral: last.int_linf_vorticity,
        tail_slope_theta: last.tail_theta,
        tail_slope_vorticity: last.tail_vorticity,
        worst_tail_slope: worst,
        resolution_exhausted: worst.is_some_and(|s| s > TAIL_SLOPE_LIMIT),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GridSpec;
    use num_complex::Complex64;

    #[test]
    fn tail_slope_of_power_law() {
        let grid = GridSpec::new(64).unwrap();
        // |f̂|² ∝ |k|^{-6} gives shell energy ∝ m^{-5}.
        let f = SpectralField::from_modes(grid, |k1, k2| {
            let r2 = (k1 * k1 + k2 * k2) as f64;
            if r2 == 0.0 || !grid.keeps(k1, k2) {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(r2.powf(-1.5), 0.0)
            }
        });
        let slope = tail_slope(&f).unwrap();
        assert!((slope + 5.0).abs() < 0.3, "{slope}");
    }

    #[test]
    fn empty_tail_is_none() {
        let grid = GridSpec::new(32).unwrap();
        let mut f = SpectralField::zeros(grid);
        f.set_coeff(1, 0, Complex64::new(1.0, 0.0));
        f.set_coeff(-1, 0, Complex64::new(1.0, 0.0));
        assert_eq!(tail_slope(&f), None);
        assert!(!blowup_indicator(&[]).resolution_exhausted);
    }
}
