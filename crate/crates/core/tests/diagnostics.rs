//! Diagnostics records against closed forms and structural inequalities.

use std::f64::consts::PI;

use micropolar::diagnostics::{
    blowup_indicator, record, shell_spectrum, sobolev_norm, tail_slope, DiagnosticsConfig,
    DiagnosticsRecord,
};
use micropolar::field::{GridSpec, RealField, SpectralField};
use micropolar::harness::{simulate, RunConfig};
use micropolar::lp::DyadicPartition;
use micropolar::solver::{Couplings, State};

fn close(got: f64, want: f64, what: &str) {
    assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "{what}: {got} vs {want}");
}

#[test]
fn single_mode_record() {
    let (a, c) = (0.7, 1.3);
    let grid = GridSpec::new(64).unwrap();
    let th = RealField::from_fn(grid, |x, _| a * (3.0 * x).cos()).forward();
    let w = RealField::from_fn(grid, |x, _| c * (2.0 * x).cos()).forward();
    let s = State::new(0.0, SpectralField::zeros(grid), w, th).unwrap();
    let cfg = DiagnosticsConfig::default();
    let r = record(&s, None, &cfg, &DyadicPartition::new(grid)).unwrap();

    // ∫cos² = 2π², ∫cos⁴ = 4π²·3/8, ∫cos⁸ = 4π²·35/128 on the torus.
    let l2 = a * PI * 2f64.sqrt();
    close(r.l2_theta, l2, "l2 theta");
    close(r.l4_theta, a * (1.5 * PI * PI).powf(0.25), "l4 theta");
    close(r.l8_theta, a * (35.0 * PI * PI / 32.0).powf(0.125), "l8 theta");
    close(r.linf_theta, a, "linf theta");
    close(r.hk_theta, 3f64.powf(cfg.k) * l2, "hk theta");
    close(r.h1dot_theta, 3.0 * l2, "h1dot theta");
    close(r.half_theta_sq, 3.0 * l2 * l2, "half theta sq");
    close(r.k_half_theta_sq, 3f64.powf(2.0 * cfg.k + 1.0) * l2 * l2, "k+1/2 theta sq");
    close(r.three_half_theta_sq, 27.0 * l2 * l2, "3/2 theta sq");
    close(r.hs_theta, 10f64.powf(0.5 * cfg.s) * l2, "hs theta");
    // |k| = 3 sits in block 1 alone.
    close(r.besov_half_theta, 2f64.sqrt() * a, "B^1/2 theta");
    close(r.besov_zero_theta, a, "B^0 theta");

    close(r.l2_omega, c * PI * 2f64.sqrt(), "l2 omega");
    close(r.grad_omega_sq, 4.0 * c * c * 2.0 * PI * PI, "grad omega sq");
    close(r.grad_omega_inf, 2.0 * c, "grad omega inf");
    close(r.lr_omega, c * (35.0 * PI * PI / 32.0).powf(0.125), "lr omega");

    // Γ = ℛ₁θ + ω = −a sin 3x₁ + c cos 2x₁, integrated by brute force.
    let n = 4096;
    let h = 2.0 * PI / n as f64;
    let integral: f64 = (0..n)
        .map(|i| {
            let x = i as f64 * h;
            (-a * (3.0 * x).sin() + c * (2.0 * x).cos()).abs().powf(cfg.r)
        })
        .sum::<f64>()
        * h
        * 2.0
        * PI;
    close(r.lr_gamma, integral.powf(1.0 / cfg.r), "lr gamma");

    assert_eq!(r.l2_u, 0.0);
    assert_eq!(r.linf_u, 0.0);
    assert_eq!(r.linf_vorticity, 0.0);
    assert_eq!(r.tail_theta, None);
    assert!(r.int_grad_omega_sq == 0.0 && r.int_half_theta_sq == 0.0);
}

#[test]
fn sobolev_norm_matches_physical_quadrature() {
    // ‖f‖²_{H¹} = ‖f‖² + ‖∂₁f‖² + ‖∂₂f‖² with hand-differentiated f.
    let grid = GridSpec::new(64).unwrap();
    let f = |x: f64, y: f64| (x.sin() + 0.5 * y.cos()).exp();
    let fx = |x: f64, y: f64| x.cos() * f(x, y);
    let fy = |x: f64, y: f64| -0.5 * y.sin() * f(x, y);
    let sq = |g: &dyn Fn(f64, f64) -> f64| {
        RealField::from_fn(grid, g).values().iter().map(|v| v * v).sum::<f64>() * grid.cell_area()
    };
    let want = (sq(&f) + sq(&fx) + sq(&fy)).sqrt();
    let got = sobolev_norm(&RealField::from_fn(grid, f).forward(), 1.0);
    assert!((got - want).abs() < 1e-12 * want);
}

fn short_run() -> Vec<DiagnosticsRecord> {
    let mut c = RunConfig::default();
    c.n = 32;
    c.t_end = 0.6;
    c.output_every = 0.03;
    c.init.amplitude = 0.5;
    let initial = c.init.generate(c.grid().unwrap());
    simulate(&c, initial, None).unwrap().records
}

#[test]
fn accumulators_are_trapezoid_sums() {
    let rec = short_run();
    assert!(rec.len() > 10);
    let pairs: [(fn(&DiagnosticsRecord) -> f64, fn(&DiagnosticsRecord) -> f64); 6] = [
        (|r| r.grad_omega_sq, |r| r.int_grad_omega_sq),
        (|r| r.half_theta_sq, |r| r.int_half_theta_sq),
        (|r| r.k_half_theta_sq, |r| r.int_k_half_theta_sq),
        (|r| r.three_half_theta_sq, |r| r.int_three_half_theta_sq),
        (|r| r.linf_u, |r| r.int_linf_u),
        (|r| r.linf_vorticity, |r| r.int_linf_vorticity),
    ];
    for (i, (value, integral)) in pairs.iter().enumerate() {
        let mut acc = 0.0;
        for w in rec.windows(2) {
            acc += 0.5 * (w[1].t - w[0].t) * (value(&w[0]) + value(&w[1]));
            assert!(integral(&w[1]) >= integral(&w[0]), "accumulator {i} decreased");
            assert!((integral(&w[1]) - acc).abs() <= 1e-12 * acc.max(1.0), "accumulator {i}");
        }
    }
}

#[test]
fn norms_respect_hoelder_and_interpolation() {
    let area = 4.0 * PI * PI;
    for r in short_run() {
        let tol = 1.0 + 1e-12;
        assert!(r.l2_theta <= area.powf(0.25) * r.l4_theta * tol);
        assert!(r.l4_theta <= area.powf(0.125) * r.l8_theta * tol);
        assert!(r.l8_theta <= area.powf(0.125) * r.linf_theta * tol);
        assert!(r.l4_theta <= (r.l2_theta * r.linf_theta).sqrt() * tol);
        assert!(r.l8_theta <= r.l4_theta.powf(0.5) * r.linf_theta.powf(0.5) * tol);
        // ‖Λ^kθ‖ ≤ ‖θ‖^{1−k}‖Λθ‖^k
        assert!(r.hk_theta <= r.l2_theta.powf(0.4) * r.h1dot_theta.powf(0.6) * tol);
        // ‖Λ^{1/2}θ‖² ≤ ‖θ‖‖Λθ‖
        assert!(r.half_theta_sq <= r.l2_theta * r.h1dot_theta * tol);
        assert!(r.besov_zero_theta <= r.besov_half_theta * tol);
    }
}

#[test]
fn shells_carry_the_energy() {
    let grid = GridSpec::new(32).unwrap();
    let f = RealField::from_fn(grid, |x, y| (x + y).sin() + (3.0 * y).cos()).forward();
    let e = shell_spectrum(&f);
    close(e.iter().sum::<f64>() * 4.0 * PI * PI, f.l2_norm().powi(2), "Parseval over shells");
    close(e[1] + e[2], 0.5, "shells 1 and 2");
    close(e[3], 0.5, "shell 3");
}

#[test]
fn heat_flow_steepens_the_tail() {
    let grid = GridSpec::new(64).unwrap();
    let f = SpectralField::from_modes(grid, |k1, k2| {
        let r2 = (k1 * k1 + k2 * k2) as f64;
        if r2 == 0.0 { 0.0.into() } else { (1.0 / r2).into() }
    })
    .dealiased();
    let mut last = tail_slope(&f).unwrap();
    for t in [0.001, 0.003, 0.01] {
        let s = tail_slope(&f.heat(t).unwrap()).unwrap();
        assert!(s < last, "t = {t}: slope {s} not below {last}");
        last = s;
    }
}

#[test]
fn diffusive_run_is_not_flagged() {
    // No transport, rotation or buoyancy: every field only decays.
    let mut c = RunConfig::default();
    c.n = 32;
    c.t_end = 0.5;
    c.output_every = 0.05;
    c.params.couplings = Couplings::none();
    c.params.velocity_dissipation_alpha = 1.0;
    let initial = c.init.generate(c.grid().unwrap());
    let sim = simulate(&c, initial, None).unwrap();
    let report = blowup_indicator(&sim.records);
    assert!(!report.resolution_exhausted);
    let first = sim.records.first().unwrap().tail_theta.unwrap();
    let last = sim.records.last().unwrap().tail_theta.unwrap();
    assert!(last < first, "tail {first} -> {last}");
    assert!(report.vorticity_integral_growth.is_finite());
}
