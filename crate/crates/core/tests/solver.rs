//! Right-hand side, integrator and identities on closed-form cases.

use std::f64::consts::PI;

use micropolar::field::{GridSpec, RealField, SpectralField};
use micropolar::harness::convergence::fixed_step_run;
use micropolar::parallel::with_workers;
use micropolar::solver::{
    gamma_residual, mild_omega_check, rhs, Couplings, InitialData, InitialFamily, Params, State,
    Stepper, StepperConfig,
};

fn grid(n: usize) -> GridSpec {
    GridSpec::new(n).unwrap()
}

fn sample(n: usize, f: impl Fn(f64, f64) -> f64) -> SpectralField {
    RealField::from_fn(grid(n), f).forward()
}

fn random_state(n: usize, amplitude: f64, seed: u64) -> State {
    InitialData { family: InitialFamily::RandomBandlimited, amplitude, seed }.generate(grid(n))
}

fn assert_field(got: &SpectralField, want: impl Fn(f64, f64) -> f64, what: &str) {
    let want = RealField::from_fn(*got.grid(), want);
    let got = got.to_real();
    let err = got.values().iter().zip(want.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(err < 1e-13, "{what}: max error {err}");
}

#[test]
fn rest_state_is_stationary() {
    let t = rhs(&State::zeros(grid(16)), &Params::default());
    for f in [&t.vorticity, &t.micro_rotation, &t.temperature] {
        assert_eq!(f.max_abs(), 0.0);
    }
}

#[test]
fn tendencies_of_single_modes() {
    let p = Params::default();
    let z = || SpectralField::zeros(grid(16));

    // θ = sin x₁: u = 0, dΩ = ∂₁θ, dθ = −Λθ.
    let s = State::new(0.0, z(), z(), sample(16, |x, _| x.sin())).unwrap();
    let t = rhs(&s, &p);
    assert_field(&t.vorticity, |x, _| x.cos(), "dΩ from θ");
    assert_field(&t.micro_rotation, |_, _| 0.0, "dω from θ");
    assert_field(&t.temperature, |x, _| -x.sin(), "dθ from θ");

    // Ω = cos x₁: u = (0, sin x₁), u·∇Ω = 0, dω = 2χΩ, dθ = u₂.
    let s = State::new(0.0, sample(16, |x, _| x.cos()), z(), z()).unwrap();
    let t = rhs(&s, &p);
    assert_field(&t.vorticity, |_, _| 0.0, "dΩ from Ω");
    assert_field(&t.micro_rotation, |x, _| x.cos(), "dω from Ω");
    assert_field(&t.temperature, |x, _| x.sin(), "dθ from Ω");

    // ω = cos x₂: dΩ = −2χΔω, dω = νΔω − 4χω.
    let s = State::new(0.0, z(), sample(16, |_, y| y.cos()), z()).unwrap();
    let t = rhs(&s, &p);
    assert_field(&t.vorticity, |_, y| y.cos(), "dΩ from ω");
    assert_field(&t.micro_rotation, |_, y| -3.0 * y.cos(), "dω from ω");
    assert_field(&t.temperature, |_, _| 0.0, "dθ from ω");
}

#[test]
fn decoupled_modes_follow_exponentials() {
    let p = Params { beta: 0.5, couplings: Couplings::none(), ..Params::default() };
    let s = State::new(
        0.0,
        sample(32, |x, y| (x + 2.0 * y).cos()),
        sample(32, |x, y| (3.0 * x).sin() * y.cos()),
        sample(32, |x, y| (2.0 * x - y).sin()),
    )
    .unwrap();
    let t = 0.7;
    let out = fixed_step_run(&s, &p, t, 7).unwrap();
    // ν|k|² + 4χ with |k|² = 10; |k|^β with |k|² = 5.
    let dw = (-(10.0 + 2.0) * t).exp();
    let dth = (-(5f64).powf(0.25) * t).exp();
    assert_field(&out.vorticity, |x, y| (x + 2.0 * y).cos(), "Ω");
    assert_field(&out.micro_rotation, |x, y| dw * (3.0 * x).sin() * y.cos(), "ω");
    assert_field(&out.temperature, |x, y| dth * (2.0 * x - y).sin(), "θ");
}

#[test]
fn gamma_identity_on_single_modes_and_random_states() {
    let p = Params::default();
    let z = || SpectralField::zeros(grid(32));
    let singles = [
        State::new(0.0, sample(32, |x, y| (x + 2.0 * y).cos()), z(), z()).unwrap(),
        State::new(0.0, z(), sample(32, |x, y| (3.0 * x - y).sin()), z()).unwrap(),
        State::new(0.0, z(), z(), sample(32, |x, y| (2.0 * x).cos() * y.sin())).unwrap(),
    ];
    for (i, s) in singles.iter().enumerate() {
        let r = gamma_residual(s, &p).unwrap();
        assert!(r < 1e-13, "single mode {i}: residual {r}");
    }
    for seed in 0..4 {
        let r = gamma_residual(&random_state(32, 1.0, seed), &p).unwrap();
        assert!(r < 1e-12, "seed {seed}: residual {r}");
    }
}

#[test]
fn gamma_identity_rejects_other_parameters() {
    let s = random_state(16, 0.1, 0);
    assert!(gamma_residual(&s, &Params { nu: 2.0, ..Params::default() }).is_err());
    assert!(gamma_residual(&s, &Params { beta: 0.8, ..Params::default() }).is_err());
}

fn trajectory(dt: f64, t_end: f64) -> Vec<State> {
    let config = StepperConfig { cfl: 0.4, dt_max: dt };
    let mut stepper = Stepper::new(Params::default(), config).unwrap();
    let mut states = vec![random_state(32, 0.2, 5)];
    stepper
        .advance_to(states[0].clone(), t_end, |s| states.push(s.clone()))
        .unwrap();
    states
}

#[test]
fn duhamel_formula_converges_at_second_order() {
    let coarse = mild_omega_check(&trajectory(4e-3, 0.4), &Params::default()).unwrap();
    let fine = mild_omega_check(&trajectory(2e-3, 0.4), &Params::default()).unwrap();
    assert!(fine < 1e-4, "deviation {fine}");
    let order = (coarse / fine).log2();
    assert!(order > 1.7, "observed order {order} ({coarse} -> {fine})");
}

#[test]
fn temperature_mean_is_conserved() {
    let mut s = random_state(32, 0.3, 2);
    s.temperature.set_coeff(0, 0, 0.4.into());
    let out = fixed_step_run(&s, &Params::default(), 1.0, 100).unwrap();
    assert!((out.temperature.mean().re - 0.4).abs() < 1e-14);
    assert_eq!(out.vorticity.mean().re, 0.0);
}

#[test]
fn runs_are_bitwise_reproducible_across_pools() {
    let s = random_state(32, 0.3, 9);
    let a = with_workers(1, || fixed_step_run(&s, &Params::default(), 0.2, 20).unwrap());
    let b = with_workers(3, || fixed_step_run(&s, &Params::default(), 0.2, 20).unwrap());
    let c = fixed_step_run(&s, &Params::default(), 0.2, 20).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert!((a.t - 0.2).abs() < 1e-15 && a.t < 2.0 * PI);
}
