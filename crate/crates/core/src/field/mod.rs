//! Periodic-grid fields, spectral transforms and Fourier multipliers.
//!
//! The physical domain is the torus `[0, 2π)²`. Sample `(i1, i2)` sits at
//! `x = (2π i1 / n, 2π i2 / n)` and is stored at `i1 * n + i2`; spectral
//! coefficients use the same layout with FFT wavenumber ordering, so index
//! `i` along an axis is wavenumber `i` for `i < n/2` and `i − n` otherwise.
//!
//! Forward transforms are normalised so that a constant field `c` has
//! `coeffs(0,0) = c`; Parseval therefore reads
//! `‖f‖²_{L²} = (2π)² Σ_k |f̂(k)|²`.

mod checkpoint;
mod fft;
mod grid;
mod norms;
mod ops;
mod spectral;

pub use checkpoint::{Checkpoint, CHECKPOINT_MAGIC, CHECKPOINT_VERSION};
pub use grid::GridSpec;
pub use norms::{inner_product, lp_norm, neumaier_sum, pointwise_magnitude};
pub use spectral::{RealField, SpectralField, VectorField};
pub(crate) use ops::{advect_real, product, resample};
