use num_complex::Complex64;

use super::fft::fft2;
use super::grid::GridSpec;
use crate::error::{Error, Result};

/// Real samples of a scalar field on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: GridSpec,
    values: Vec<f64>,
}

/// Fourier coefficients of a scalar field, FFT-ordered.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: GridSpec,
    coeffs: Vec<Complex64>,
}

/// Two-component vector field in spectral form.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub u1: SpectralField,
    pub u2: SpectralField,
}

impl RealField {
    pub fn new(grid: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::arg(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
        }
    }

    /// Samples `f(x1, x2)` at every grid point.
    pub fn from_fn(grid: GridSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = grid.n();
        let values = (0..grid.len())
            .map(|idx| f(grid.coord(idx / n), grid.coord(idx % n)))
            .collect();
        Self { grid, values }
    }

    pub(crate) fn from_raw(grid: GridSpec, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Pointwise map, keeping the grid.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_raw(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_with(&self, other: &RealField, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self::from_raw(
            self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    /// Forward transform: discrete Fourier coefficients normalised by `n²`.
    pub fn forward(&self) -> SpectralField {
        let n = self.grid.n();
        let mut data: Vec<Complex64> = self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        fft2(&mut data, n, false);
        let scale = 1.0 / (n * n) as f64;
        data.iter_mut().for_each(|c| *c *= scale);
        SpectralField {
            grid: self.grid,
            coeffs: data,
        }
    }
}

impl SpectralField {
    pub fn new(grid: GridSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::arg(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { grid, coeffs })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            grid,
            coeffs: vec![Complex64::new(0.0, 0.0); grid.len()],
        }
    }

    /// Builds a field from a per-wavevector coefficient rule, called once per
    /// mode in storage order.
    pub fn from_modes(grid: GridSpec, mut f: impl FnMut(i64, i64) -> Complex64) -> Self {
        let coeffs = (0..grid.len())
            .map(|idx| {
                let (k1, k2) = grid.wavevector(idx);
                f(k1, k2)
            })
            .collect();
        Self { grid, coeffs }
    }

    pub(crate) fn from_raw(grid: GridSpec, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), grid.len());
        Self { grid, coeffs }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Coefficient of wavevector `(k1, k2)` (indices taken modulo n).
    pub fn coeff(&self, k1: i64, k2: i64) -> Complex64 {
        let n = self.grid.n();
        self.coeffs[self.grid.index_of(k1) * n + self.grid.index_of(k2)]
    }

    pub fn set_coeff(&mut self, k1: i64, k2: i64, value: Complex64) {
        let n = self.grid.n();
        let idx = self.grid.index_of(k1) * n + self.grid.index_of(k2);
        self.coeffs[idx] = value;
    }

    pub fn mean(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest `|c(k) − conj(c(−k))|` over the lattice.
    pub fn hermitian_defect(&self) -> f64 {
        (0..self.coeffs.len())
            .map(|idx| (self.coeffs[idx] - self.coeffs[self.grid.conjugate_index(idx)].conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.hermitian_defect() <= rel_tol * self.max_abs().max(f64::MIN_POSITIVE)
    }

    /// Projects onto Hermitian-symmetric coefficients (real data).
    pub fn hermitian_project(&mut self) {
        let orig = self.coeffs.clone();
        for (idx, c) in self.coeffs.iter_mut().enumerate() {
            *c = 0.5 * (orig[idx] + orig[self.grid.conjugate_index(idx)].conj());
        }
    }

    /// Zeroes every mode with `|k_i| > dealias_fraction · n/2`.
    pub fn dealias(&mut self) {
        let grid = self.grid;
        for (idx, c) in self.coeffs.iter_mut().enumerate() {
            let (k1, k2) = grid.wavevector(idx);
            if !grid.keeps(k1, k2) {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }

    pub fn dealiased(mut self) -> Self {
        self.dealias();
        self
    }

    /// Inverse transform to real samples; rejects non-Hermitian input.
    pub fn inverse(&self) -> Result<RealField> {
        let defect = self.hermitian_defect();
        if defect > 1e-10 * self.max_abs().max(f64::MIN_POSITIVE) {
            return Err(Error::NonHermitian(defect));
        }
        Ok(self.to_real())
    }

    /// Inverse transform keeping only the real part, without the symmetry check.
    pub fn to_real(&self) -> RealField {
        let n = self.grid.n();
        let mut data = self.coeffs.clone();
        fft2(&mut data, n, true);
        RealField::from_raw(self.grid, data.iter().map(|c| c.re).collect())
    }

    /// Pointwise scaling of every coefficient.
    pub fn scale(&self, s: f64) -> Self {
        Self::from_raw(self.grid, self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn add(&self, other: &SpectralField) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SpectralField) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: f64, other: &SpectralField) -> Result<Self> {
        self.zip_with(other, |a, b| a + b * s)
    }

    pub fn zip_with(
        &self,
        other: &SpectralField,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self::from_raw(
            self.grid,
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    /// Applies a wavevector-dependent multiplier `m(k1, k2)`.
    pub fn apply(&self, m: impl Fn(i64, i64) -> Complex64) -> Self {
        let grid = self.grid;
        Self::from_raw(
            grid,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(idx, &c)| {
                    let (k1, k2) = grid.wavevector(idx);
                    c * m(k1, k2)
                })
                .collect(),
        )
    }

    /// Real-valued radial multiplier `m(|k|²)`.
    pub fn apply_radial(&self, m: impl Fn(f64) -> f64) -> Self {
        self.apply(|k1, k2| Complex64::new(m((k1 * k1 + k2 * k2) as f64), 0.0))
    }

    /// Sum of `|c(k)|²` (compensated).
    pub fn energy_sum(&self) -> f64 {
        super::neumaier_sum(self.coeffs.iter().map(|c| c.norm_sqr()))
    }

    /// `√((2π)² Σ_k |c(k)|²)`, the L² norm by Parseval.
    pub fn l2_norm(&self) -> f64 {
        (self.grid.length().powi(2) * self.energy_sum()).sqrt()
    }

    /// Largest `|c|` outside the dealiased set.
    pub fn alias_content(&self) -> f64 {
        let grid = self.grid;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(idx, _)| {
                let (k1, k2) = grid.wavevector(*idx);
                !grid.keeps(k1, k2)
            })
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }
}

impl VectorField {
    pub fn new(u1: SpectralField, u2: SpectralField) -> Result<Self> {
        u1.grid().check_same(u2.grid())?;
        Ok(Self { u1, u2 })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self {
            u1: SpectralField::zeros(grid),
            u2: SpectralField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &GridSpec {
        self.u1.grid()
    }

    /// `max_k |k₁û₁ + k₂û₂|`.
    pub fn divergence_defect(&self) -> f64 {
        let grid = *self.grid();
        (0..grid.len())
            .map(|idx| {
                let (k1, k2) = grid.wavevector(idx);
                (self.u1.coeffs()[idx] * k1 as f64 + self.u2.coeffs()[idx] * k2 as f64).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.u1.max_abs().max(self.u2.max_abs())
    }

    pub fn is_divergence_free(&self) -> bool {
        self.divergence_defect() <= 1e-12 * self.max_abs().max(f64::MIN_POSITIVE)
    }

    pub fn to_real(&self) -> [RealField; 2] {
        [self.u1.to_real(), self.u2.to_real()]
    }
}
