//! Transforms, multipliers and commutators against direct evaluation.

use std::collections::HashMap;
use std::f64::consts::PI;

use approx::assert_relative_eq;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use micropolar::field::{lp_norm, GridSpec, RealField, SpectralField, VectorField};
use micropolar::lab::{block_commutator, lambda_commutator, riesz_commutator};
use micropolar::lp::DyadicPartition;

type Modes = HashMap<(i64, i64), Complex64>;

fn random_real(n: usize, seed: u64) -> RealField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RealField::new(GridSpec::new(n).unwrap(), (0..n * n).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
}

/// Real, dealiased random field with a handful of low modes.
fn random_smooth(n: usize, seed: u64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = SpectralField::from_modes(GridSpec::new(n).unwrap(), |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    f.hermitian_project();
    f.dealias();
    f
}

fn modes_of(f: &SpectralField) -> Modes {
    let g = *f.grid();
    (0..g.len())
        .filter(|&i| f.coeffs()[i].norm() > 0.0)
        .map(|i| (g.wavevector(i), f.coeffs()[i]))
        .collect()
}

/// Exact Fourier series of a product, truncated to the retained modes.
fn convolve(a: &Modes, b: &Modes, grid: &GridSpec) -> Modes {
    let mut out = Modes::new();
    for (&(p1, p2), &x) in a {
        for (&(q1, q2), &y) in b {
            let k = (p1 + q1, p2 + q2);
            if grid.keeps(k.0, k.1) {
                *out.entry(k).or_default() += x * y;
            }
        }
    }
    out
}

fn map_modes(a: &Modes, m: impl Fn(i64, i64) -> Complex64) -> Modes {
    a.iter().map(|(&(k1, k2), &c)| ((k1, k2), c * m(k1, k2))).collect()
}

fn add(a: &Modes, b: &Modes, sb: f64) -> Modes {
    let mut out = a.clone();
    for (k, &c) in b {
        *out.entry(*k).or_default() += c * sb;
    }
    out
}

fn max_deviation(f: &SpectralField, oracle: &Modes) -> f64 {
    let g = *f.grid();
    (0..g.len())
        .map(|i| {
            let want = oracle.get(&g.wavevector(i)).copied().unwrap_or_default();
            (f.coeffs()[i] - want).norm()
        })
        .fold(0.0, f64::max)
}

fn lambda_symbol(s: f64) -> impl Fn(i64, i64) -> Complex64 {
    move |k1, k2| {
        let r2 = (k1 * k1 + k2 * k2) as f64;
        Complex64::new(if r2 == 0.0 { 0.0 } else { r2.powf(0.5 * s) }, 0.0)
    }
}

fn advect_modes(u: &VectorField, th: &Modes, grid: &GridSpec) -> Modes {
    let d1 = map_modes(th, |k1, _| Complex64::new(0.0, k1 as f64));
    let d2 = map_modes(th, |_, k2| Complex64::new(0.0, k2 as f64));
    add(&convolve(&modes_of(&u.u1), &d1, grid), &convolve(&modes_of(&u.u2), &d2, grid), 1.0)
}

#[test]
fn forward_matches_direct_dft() {
    let n = 8;
    let f = random_real(n, 3);
    let g = *f.grid();
    let hat = f.forward();
    for idx in 0..g.len() {
        let (k1, k2) = g.wavevector(idx);
        let mut sum = Complex64::default();
        for i1 in 0..n {
            for i2 in 0..n {
                let phase = -(k1 as f64 * g.coord(i1) + k2 as f64 * g.coord(i2));
                sum += f.values()[i1 * n + i2] * Complex64::from_polar(1.0, phase);
            }
        }
        let want = sum / (n * n) as f64;
        assert!((hat.coeffs()[idx] - want).norm() < 1e-14, "mode ({k1},{k2})");
    }
}

#[test]
fn inverse_recovers_samples() {
    let f = random_real(16, 4);
    let back = f.forward().inverse().unwrap();
    for (a, b) in f.values().iter().zip(back.values()) {
        assert_relative_eq!(a, b, epsilon = 1e-14);
    }
}

#[test]
fn derivatives_match_finite_differences() {
    let n = 64;
    let grid = GridSpec::new(n).unwrap();
    let f = RealField::from_fn(grid, |x, y| (x.sin() + (2.0 * y).cos()).exp());
    let h = grid.dx();
    let v = f.values();
    let at = |i: usize, j: usize| v[(i % n) * n + (j % n)];
    let d1 = f.forward().partial(1).to_real();
    let lap = f.forward().laplacian().to_real();
    let mut err_d1: f64 = 0.0;
    let mut err_lap: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            // fourth-order central stencils
            let fd1 = (-at(i + 2, j) + 8.0 * at(i + 1, j) - 8.0 * at(i + n - 1, j) + at(i + n - 2, j)) / (12.0 * h);
            let second = |a: f64, b: f64, c: f64, d: f64, e: f64| (-a + 16.0 * b - 30.0 * c + 16.0 * d - e) / (12.0 * h * h);
            let fxx = second(at(i + 2, j), at(i + 1, j), at(i, j), at(i + n - 1, j), at(i + n - 2, j));
            let fyy = second(at(i, j + 2), at(i, j + 1), at(i, j), at(i, j + n - 1), at(i, j + n - 2));
            err_d1 = err_d1.max((d1.values()[i * n + j] - fd1).abs());
            err_lap = err_lap.max((lap.values()[i * n + j] - fxx - fyy).abs());
        }
    }
    assert!(err_d1 < 2e-3, "d1 error {err_d1}");
    assert!(err_lap < 2e-2, "laplacian error {err_lap}");
}

#[test]
fn biot_savart_closed_form() {
    // Ω = −2 sin x₁ sin x₂ has stream function ψ = sin x₁ sin x₂.
    let grid = GridSpec::new(16).unwrap();
    let om = RealField::from_fn(grid, |x, y| -2.0 * x.sin() * y.sin()).forward();
    let u = om.biot_savart();
    assert!(u.is_divergence_free());
    let [u1, u2] = u.to_real();
    let w1 = RealField::from_fn(grid, |x, y| -x.sin() * y.cos());
    let w2 = RealField::from_fn(grid, |x, y| x.cos() * y.sin());
    for (a, b) in u1.values().iter().zip(w1.values()).chain(u2.values().iter().zip(w2.values())) {
        assert_relative_eq!(a, b, epsilon = 1e-14);
    }
    let back = u.curl();
    assert!(back.sub(&om).unwrap().max_abs() < 1e-15);
}

#[test]
fn advection_closed_form() {
    // Ω = cos x₁ gives u = (0, sin x₁); u·∇(sin x₂) = sin x₁ cos x₂.
    let grid = GridSpec::new(16).unwrap();
    let u = RealField::from_fn(grid, |x, _| x.cos()).forward().biot_savart();
    let th = RealField::from_fn(grid, |_, y| y.sin()).forward();
    let got = u.advect(&th).unwrap().to_real();
    let want = RealField::from_fn(grid, |x, y| x.sin() * y.cos());
    for (a, b) in got.values().iter().zip(want.values()) {
        assert_relative_eq!(a, b, epsilon = 1e-14);
    }
}

#[test]
fn lambda_commutator_matches_convolution() {
    let (f, g) = (random_smooth(8, 10), random_smooth(8, 11));
    let grid = *f.grid();
    for s in [0.5, 1.0, 1.5] {
        let (fm, gm) = (modes_of(&f), modes_of(&g));
        let lhs = map_modes(&convolve(&fm, &gm, &grid), lambda_symbol(s));
        let rhs = convolve(&fm, &map_modes(&gm, lambda_symbol(s)), &grid);
        let oracle = add(&lhs, &rhs, -1.0);
        let got = lambda_commutator(&f, &g, s).unwrap();
        assert!(max_deviation(&got, &oracle) < 1e-13, "s = {s}");
    }
}

#[test]
fn riesz_commutator_matches_convolution() {
    let u = random_smooth(8, 12).biot_savart();
    let th = random_smooth(8, 13);
    let grid = *th.grid();
    let riesz = |k1: i64, k2: i64| {
        let r = ((k1 * k1 + k2 * k2) as f64).sqrt();
        if r == 0.0 || grid.is_nyquist(k1) {
            Complex64::default()
        } else {
            Complex64::new(0.0, k1 as f64 / r)
        }
    };
    let thm = modes_of(&th);
    let oracle = add(
        &map_modes(&advect_modes(&u, &thm, &grid), riesz),
        &advect_modes(&u, &map_modes(&thm, riesz), &grid),
        -1.0,
    );
    let got = riesz_commutator(&u, &th).unwrap();
    assert!(max_deviation(&got, &oracle) < 1e-13);
}

/// Cosine-taper low-pass profile, written out independently.
fn chi(r: f64) -> f64 {
    if r <= 0.75 {
        1.0
    } else if r <= 4.0 / 3.0 {
        (0.5 * PI * (r - 0.75) / (4.0 / 3.0 - 0.75)).cos().powi(2)
    } else {
        0.0
    }
}

#[test]
fn block_commutator_matches_convolution() {
    // n = 16 keeps |k| ≤ 5, so blocks −1, 0, 1 use the dyadic formula.
    let u = random_smooth(16, 14).biot_savart();
    let th = random_smooth(16, 15);
    let grid = *th.grid();
    let partition = DyadicPartition::new(grid);
    for q in 0..partition.j_max() {
        let phi = |k1: i64, k2: i64| {
            let r = ((k1 * k1 + k2 * k2) as f64).sqrt();
            let s = 2f64.powi(q);
            Complex64::new(chi(r / (2.0 * s)) - chi(r / s), 0.0)
        };
        let thm = modes_of(&th);
        let oracle = add(
            &map_modes(&advect_modes(&u, &thm, &grid), phi),
            &advect_modes(&u, &map_modes(&thm, phi), &grid),
            -1.0,
        );
        let got = block_commutator(&u, &th, q, &partition).unwrap();
        assert!(max_deviation(&got, &oracle) < 1e-13, "block {q}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn parseval_holds(seed in any::<u64>(), log_n in 3u32..7) {
        let f = random_real(1 << log_n, seed);
        let physical = lp_norm(&f, 2.0);
        prop_assert!((f.forward().l2_norm() - physical).abs() <= 1e-12 * physical);
    }

    #[test]
    fn heat_is_a_semigroup(seed in any::<u64>(), s in 0.0f64..0.5, t in 0.0f64..0.5) {
        let f = random_smooth(16, seed);
        let two = f.heat(s).unwrap().heat(t).unwrap();
        let one = f.heat(s + t).unwrap();
        prop_assert!(two.sub(&one).unwrap().max_abs() <= 1e-14);
    }

    #[test]
    fn fractional_powers_compose(seed in any::<u64>(), a in -1.0f64..2.0, b in -1.0f64..2.0) {
        let mut f = random_smooth(16, seed);
        f.set_coeff(0, 0, Complex64::default());
        let two = f.lambda_pow(a).lambda_pow(b);
        let one = f.lambda_pow(a + b);
        prop_assert!(two.sub(&one).unwrap().max_abs() <= 1e-12 * (1.0 + one.max_abs()));
    }
}
