use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::parallel;

type PlanCache = RwLock<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>;

fn cache() -> &'static PlanCache {
    static CACHE: OnceLock<PlanCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    if let Some(p) = cache().read().expect("fft cache poisoned").get(&(n, inverse)) {
        return Arc::clone(p);
    }
    let mut guard = cache().write().expect("fft cache poisoned");
    Arc::clone(guard.entry((n, inverse)).or_insert_with(|| {
        let dir = if inverse {
            FftDirection::Inverse
        } else {
            FftDirection::Forward
        };
        FftPlanner::new().plan_fft(n, dir)
    }))
}

fn transpose(src: &[Complex64], dst: &mut [Complex64], n: usize) {
    const B: usize = 16;
    for ib in (0..n).step_by(B) {
        for jb in (0..n).step_by(B) {
            for i in ib..(ib + B).min(n) {
                for j in jb..(jb + B).min(n) {
                    dst[j * n + i] = src[i * n + j];
                }
            }
        }
    }
}

fn rows(data: &mut [Complex64], n: usize, fft: &Arc<dyn Fft<f64>>) {
    let scratch_len = fft.get_inplace_scratch_len();
    parallel::for_each_row(
        data,
        n,
        || vec![Complex64::new(0.0, 0.0); scratch_len],
        |scratch, row| fft.process_with_scratch(row, scratch),
    );
}

/// Unnormalised 2D DFT in place: `Σ_x f(x) e^{∓i k·x}`.
pub(crate) fn fft2(data: &mut [Complex64], n: usize, inverse: bool) {
    debug_assert_eq!(data.len(), n * n);
    let fft = plan(n, inverse);
    rows(data, n, &fft);
    let mut tmp = vec![Complex64::new(0.0, 0.0); n * n];
    transpose(data, &mut tmp, n);
    rows(&mut tmp, n, &fft);
    transpose(&tmp, data, n);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpose_is_involution() {
        let n = 37;
        let a: Vec<Complex64> = (0..n * n).map(|i| Complex64::new(i as f64, 0.0)).collect();
        let mut b = vec![Complex64::default(); n * n];
        let mut c = vec![Complex64::default(); n * n];
        transpose(&a, &mut b, n);
        transpose(&b, &mut c, n);
        assert_eq!(a, c);
        assert_eq!(b[1], a[n]);
    }
}
