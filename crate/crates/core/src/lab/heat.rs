use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{lp_norm, pointwise_magnitude, GridSpec, SpectralField};

/// Log-spaced sampling window for heat-decay fits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatWindow {
    pub t_min: f64,
    pub t_max: f64,
    pub count: usize,
}

impl HeatWindow {
    /// `[4/n², 1/4]`: from the grid-scale diffusion time up to well below
    /// the domain-scale saturation time, 16 samples.
    pub fn for_grid(grid: &GridSpec) -> Self {
        let n = grid.n() as f64;
        Self {
            t_min: 4.0 / (n * n),
            t_max: 0.25,
            count: 16,
        }
    }

    pub fn times(&self) -> Result<Vec<f64>> {
        if !(self.t_min > 0.0 && self.t_max > self.t_min && self.count >= 2) {
            return Err(Error::arg(format!("degenerate time window {self:?}")));
        }
        let (a, b) = (self.t_min.ln(), self.t_max.ln());
        let m = (self.count - 1) as f64;
        Ok((0..self.count)
            .map(|i| (a + (b - a) * i as f64 / m).exp())
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatDecayReport {
    /// Least-squares slope of `log ‖∇^s e^{tΔ}f‖_{L^q}` against `log t`.
    pub slope: f64,
    /// `−s/2 − (1/p − 1/q)`.
    pub bound: f64,
    /// For data on a single frequency shell `|k|² = κ`: the maximal relative
    /// deviation from the exact decay `e^{−κt}‖∇^s f‖_{L^q}`.
    pub single_shell_deviation: Option<f64>,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// Least-squares slope of `y` against `x`.
pub(crate) fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn inv(p: f64) -> f64 {
    if p.is_infinite() {
        0.0
    } else {
        1.0 / p
    }
}

// ‖∇^s g‖_{L^q}: the gradient magnitude for s = 1, Λ^s g otherwise.
fn derivative_norm(g: &SpectralField, s: f64, q: f64) -> f64 {
    if s == 1.0 {
        let parts = g.gradient().to_real();
        lp_norm(&pointwise_magnitude(&parts).expect("same grid"), q)
    } else {
        lp_norm(&g.lambda_pow(s).to_real(), q)
    }
}

fn single_shell(f: &SpectralField) -> Option<f64> {
    let tol = 1e-12 * f.max_abs();
    let mut shell = None;
    for (idx, c) in f.coeffs().iter().enumerate() {
        if c.norm() <= tol {
            continue;
        }
        let (k1, k2) = f.grid().wavevector(idx);
        let r2 = (k1 * k1 + k2 * k2) as f64;
        match shell {
            None => shell = Some(r2),
            Some(s) if s != r2 => return None,
            _ => {}
        }
    }
    shell
}

/// Heat-kernel smoothing rate of `f` over `window`.
pub fn heat_decay_check(
    f: &SpectralField,
    s: f64,
    p: f64,
    q: f64,
    window: HeatWindow,
) -> Result<HeatDecayReport> {
    if !(s > 0.0 && p >= 1.0 && q >= p) {
        return Err(Error::arg(format!("need s > 0 and 1 <= p <= q, got s={s}, p={p}, q={q}")));
    }
    if f.max_abs() == 0.0 || f.mean().norm() > 1e-12 * f.max_abs() {
        return Err(Error::arg("heat decay needs nonzero mean-free data"));
    }
    let times = window.times()?;
    let values: Vec<f64> = times
        .iter()
        .map(|&t| f.heat(t).map(|g| derivative_norm(&g, s, q)))
        .collect::<Result<_>>()?;
    let lx: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    let ly: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let single_shell_deviation = single_shell(f).map(|kappa| {
        let v0 = derivative_norm(f, s, q);
        times
            .iter()
            .zip(&values)
            .map(|(&t, &v)| {
                let exact = (-kappa * t).exp() * v0;
                (v - exact).abs() / exact
            })
            .fold(0.0, f64::max)
    });
    Ok(HeatDecayReport {
        slope: ls_slope(&lx, &ly),
        bound: -0.5 * s - (inv(p) - inv(q)),
        single_shell_deviation,
        times,
        values,
    })
}
