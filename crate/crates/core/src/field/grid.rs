use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Square periodic grid on `[0, 2π)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    n: usize,
    dealias_fraction: f64,
}

impl GridSpec {
    pub const DEFAULT_DEALIAS: f64 = 2.0 / 3.0;

    pub fn new(n: usize) -> Result<Self> {
        Self::with_dealias(n, Self::DEFAULT_DEALIAS)
    }

    pub fn with_dealias(n: usize, dealias_fraction: f64) -> Result<Self> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "n must be a power of two >= 8, got {n}"
            )));
        }
        if !(dealias_fraction > 0.0 && dealias_fraction <= 1.0) {
            return Err(Error::InvalidGrid(format!(
                "dealias fraction must lie in (0, 1], got {dealias_fraction}"
            )));
        }
        Ok(Self { n, dealias_fraction })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dealias_fraction(&self) -> f64 {
        self.dealias_fraction
    }

    /// Side length of the torus.
    pub fn length(&self) -> f64 {
        2.0 * PI
    }

    pub fn dx(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// Quadrature weight of one grid cell, `(2π/n)²`.
    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dx()
    }

    /// Continuous cutoff `dealias_fraction · n/2`.
    pub fn dealias_cutoff(&self) -> f64 {
        self.dealias_fraction * (self.n / 2) as f64
    }

    /// Largest retained integer wavenumber per axis.
    pub fn kmax(&self) -> i64 {
        self.dealias_cutoff().floor() as i64
    }

    /// Signed wavenumber of FFT index `i`, in `{−n/2, …, n/2−1}`.
    #[inline]
    pub fn wavenumber(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// FFT index of signed wavenumber `k` (taken modulo n).
    #[inline]
    pub fn index_of(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    #[inline]
    pub fn wavevector(&self, idx: usize) -> (i64, i64) {
        (self.wavenumber(idx / self.n), self.wavenumber(idx % self.n))
    }

    /// Flat index of the mode `−k`.
    #[inline]
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let n = self.n;
        let (i1, i2) = (idx / n, idx % n);
        ((n - i1) % n) * n + (n - i2) % n
    }

    /// True for `k_i = −n/2` on either axis (the unpaired Nyquist line).
    #[inline]
    pub fn is_nyquist(&self, k: i64) -> bool {
        k == -((self.n / 2) as i64)
    }

    /// Whether mode `(k1, k2)` survives the dealiasing mask.
    #[inline]
    pub fn keeps(&self, k1: i64, k2: i64) -> bool {
        let c = self.dealias_cutoff();
        (k1.abs() as f64) <= c && (k2.abs() as f64) <= c
    }

    /// Grid coordinate of sample index `i` along an axis.
    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        self.dx() * i as f64
    }

    pub(crate) fn check_same(&self, other: &GridSpec) -> Result<()> {
        if self.n != other.n {
            Err(Error::GridMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(GridSpec::new(4).is_err());
        assert!(GridSpec::new(12).is_err());
        assert!(GridSpec::with_dealias(16, 0.0).is_err());
        assert!(GridSpec::with_dealias(16, 1.5).is_err());
        assert!(GridSpec::with_dealias(16, 1.0).is_ok());
    }

    #[test]
    fn wavenumbers_cover_resolved_range() {
        let g = GridSpec::new(8).unwrap();
        let ks: Vec<i64> = (0..8).map(|i| g.wavenumber(i)).collect();
        assert_eq!(ks, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        for k in -4..4 {
            assert_eq!(g.wavenumber(g.index_of(k)), k);
        }
    }

    #[test]
    fn dealias_cutoff_at_64() {
        let g = GridSpec::new(64).unwrap();
        assert_eq!(g.kmax(), 21);
        assert!(g.keeps(21, -21));
        assert!(!g.keeps(22, 0));
    }
}
