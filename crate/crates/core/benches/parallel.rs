use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use micropolar::field::{GridSpec, RealField};
use micropolar::lab::suite::{bernstein_ensemble, EnsembleSpec};
use micropolar::parallel::with_workers;
use micropolar::solver::{rhs, InitialData, InitialFamily, Params, State, Stepper, StepperConfig};

const SIZES: [usize; 2] = [128, 256];

/// `(label, workers)`: 0 is the default pool, 1 forces a single thread.
const MODES: [(&str, usize); 2] = [("pool", 0), ("single", 1)];

fn initial(n: usize) -> State {
    let data = InitialData { family: InitialFamily::RandomBandlimited, amplitude: 0.2, seed: 7 };
    data.generate(GridSpec::new(n).unwrap())
}

fn transforms(c: &mut Criterion) {
    let mut g = c.benchmark_group("forward_fft");
    for n in SIZES {
        let f = RealField::from_fn(GridSpec::new(n).unwrap(), |x, y| (x + 2.0 * y).sin() * y.cos());
        for (label, workers) in MODES {
            g.bench_with_input(BenchmarkId::new(label, n), &f, |b, f| {
                with_workers(workers, || b.iter(|| black_box(f.forward())))
            });
        }
    }
    g.finish();
}

fn tendencies(c: &mut Criterion) {
    let mut g = c.benchmark_group("rhs");
    let params = Params::default();
    for n in SIZES {
        let s = initial(n);
        for (label, workers) in MODES {
            g.bench_with_input(BenchmarkId::new(label, n), &s, |b, s| {
                with_workers(workers, || b.iter(|| black_box(rhs(s, &params))))
            });
        }
    }
    g.finish();
}

fn steps(c: &mut Criterion) {
    let mut g = c.benchmark_group("step");
    for n in SIZES {
        let s = initial(n);
        for (label, workers) in MODES {
            let mut stepper = Stepper::new(Params::default(), StepperConfig::default()).unwrap();
            g.bench_with_input(BenchmarkId::new(label, n), &s, |b, s| {
                with_workers(workers, || b.iter(|| black_box(stepper.step(s, 1e-3).unwrap())))
            });
        }
    }
    g.finish();
}

fn ensembles(c: &mut Criterion) {
    let mut g = c.benchmark_group("bernstein_ensemble");
    g.sample_size(10);
    let spec = EnsembleSpec { members: 16, ..EnsembleSpec::default() };
    for (label, workers) in MODES {
        g.bench_function(label, |b| {
            with_workers(workers, || b.iter(|| black_box(bernstein_ensemble(64, 3, spec).unwrap())))
        });
    }
    g.finish();
}

criterion_group!(benches, transforms, tendencies, steps, ensembles);
criterion_main!(benches);
