//! Littlewood–Paley partition properties.

use proptest::prelude::*;

use micropolar::field::{GridSpec, RealField, SpectralField};
use micropolar::diagnostics::sobolev_norm;
use micropolar::lab::ensemble::{member_rng, power_law_field};
use micropolar::lp::{BesovIndex, DyadicPartition};

fn field(n: usize, gamma: f64, seed: u64) -> SpectralField {
    power_law_field(GridSpec::new(n).unwrap(), gamma, &mut member_rng(seed, 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn blocks_sum_to_the_field(seed in any::<u64>(), log_n in 4u32..8) {
        let f = field(1 << log_n, 1.0, seed);
        let p = DyadicPartition::new(*f.grid());
        let mut sum = SpectralField::zeros(*f.grid());
        for j in p.blocks() {
            sum = sum.add(&p.block(&f, j).unwrap()).unwrap();
        }
        let target = f.clone().dealiased();
        prop_assert!(sum.sub(&target).unwrap().max_abs() <= 1e-15 * (1.0 + target.max_abs()));
        let low = p.low_pass(&f, p.j_max() + 1).unwrap();
        prop_assert!(low.sub(&target).unwrap().max_abs() <= 1e-15 * (1.0 + target.max_abs()));
    }

    #[test]
    fn squared_blocks_bracket_l2(seed in any::<u64>()) {
        // 0 ≤ φ_j, Σφ_j = 1 and at most two blocks overlap, so ½ ≤ Σφ_j² ≤ 1.
        let f = field(64, 1.0, seed);
        let p = DyadicPartition::new(*f.grid());
        let l2 = f.dealiased().l2_norm();
        let b = p.besov_norm(&field(64, 1.0, seed), BesovIndex::new(0.0, 2.0, 2.0).unwrap()).unwrap();
        let ratio = (b / l2).powi(2);
        prop_assert!((0.5 - 1e-12..=1.0 + 1e-12).contains(&ratio), "ratio {}", ratio);
    }
}

#[test]
fn profiles_are_a_partition_of_unity() {
    let grid = GridSpec::new(128).unwrap();
    let p = DyadicPartition::new(grid);
    for idx in 0..grid.len() {
        let (k1, k2) = grid.wavevector(idx);
        if !grid.keeps(k1, k2) {
            continue;
        }
        let total: f64 = p.blocks().map(|j| p.profile(j).unwrap()[idx]).sum();
        assert!((total - 1.0).abs() < 1e-15, "({k1},{k2}) sums to {total}");
        assert!(p.blocks().all(|j| p.profile(j).unwrap()[idx] >= 0.0));
    }
}

#[test]
fn mode_inside_one_annulus() {
    // |k| = 6 lies in (4/3·4, 3/2·4], where only block 2 is nonzero.
    let grid = GridSpec::new(64).unwrap();
    let p = DyadicPartition::new(grid);
    let f = RealField::from_fn(grid, |x, _| (6.0 * x).cos()).forward();
    for j in p.blocks() {
        let b = p.block(&f, j).unwrap();
        if j == 2 {
            assert!(b.sub(&f).unwrap().max_abs() < 1e-15);
        } else {
            assert!(b.max_abs() < 1e-15, "block {j} not empty");
        }
    }
    for (s, q) in [(0.0, 1.0), (0.5, 1.0), (1.0, 2.0), (-0.5, f64::INFINITY)] {
        let v = p.besov_norm(&f, BesovIndex::new(s, f64::INFINITY, q).unwrap()).unwrap();
        let want = 2f64.powf(2.0 * s);
        assert!((v - want).abs() < 1e-13 * want, "B^{s}_(inf,{q}) = {v}, want {want}");
    }
}

#[test]
fn constant_lives_in_the_low_block() {
    let grid = GridSpec::new(32).unwrap();
    let p = DyadicPartition::new(grid);
    let f = RealField::from_fn(grid, |_, _| 2.5).forward();
    let norms = p.block_norms(&f, f64::INFINITY).unwrap();
    assert!((norms[0] - 2.5).abs() < 1e-14);
    assert!(norms[1..].iter().all(|&v| v < 1e-14));
    for s in [0.0, 0.5, 3.0] {
        let v = p.besov_norm(&f, BesovIndex::new(s, f64::INFINITY, 1.0).unwrap()).unwrap();
        assert!((v - 2.5 * 2f64.powf(-s)).abs() < 1e-13);
    }
}

#[test]
fn besov_and_sobolev_are_equivalent() {
    // ‖f‖_{B^s_{2,2}} / ‖f‖_{H^s} stays in a fixed band across an ensemble
    // mixing rough and smooth members and across resolutions.
    for s in [0.5, 1.0, 2.0] {
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for n in [32, 64, 128] {
            for seed in 0..12 {
                let f = field(n, if seed % 2 == 0 { 1.0 } else { 2.0 }, seed).dealiased();
                let p = DyadicPartition::new(*f.grid());
                let b = p.besov_norm(&f, BesovIndex::new(s, 2.0, 2.0).unwrap()).unwrap();
                let r = b / sobolev_norm(&f, s);
                lo = lo.min(r);
                hi = hi.max(r);
            }
        }
        assert!(lo > 0.2 && hi < 5.0, "s = {s}: ratio in [{lo}, {hi}]");
    }
}
