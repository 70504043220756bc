use boltzmann_core::benchmark::{Objective, ObjectiveSpec};
use boltzmann_core::ga::{decode, Genome};
use boltzmann_core::AnnealingSchedule;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Lattice of values one 5-bit slice decodes to.
fn lattice(objective: Objective) -> Vec<f64> {
    let spec = ObjectiveSpec::new(objective, 1).unwrap();
    (0..32u32)
        .map(|v| {
            let bits = (0..5).rev().map(|b| (v >> b) & 1 == 1).collect();
            decode(&Genome::new(bits), &spec, 5)[0]
        })
        .collect()
}

fn window_tail(s: &AnnealingSchedule<f64>, n: usize) -> f64 {
    s.tail_sum(n, 4 * n).unwrap()
}

#[test]
fn schedule_is_nondecreasing_for_both_kinds() {
    for s in [
        AnnealingSchedule::cauchy_with_prefix(1.0, 1.1, 100_000).unwrap(),
        AnnealingSchedule::calibrated(2.0, 100, 300.0).unwrap(),
        AnnealingSchedule::constant(300.0).unwrap(),
    ] {
        let series = s.series(100_000);
        assert!(series.windows(2).all(|w| w[1].1 >= w[0].1));
    }
}

#[test]
fn window_tails_shrink_for_steep_schedules() {
    for alpha in [1.5, 2.0] {
        let s = AnnealingSchedule::cauchy(1.0, alpha).unwrap();
        let tails: Vec<f64> = (0..16).map(|j| window_tail(&s, 1 << j)).collect();
        assert!(tails.windows(2).all(|w| w[1] <= w[0]), "alpha {alpha}: {tails:?}");
    }
}

#[test]
fn window_tails_for_alpha_near_one_rise_before_they_fall() {
    let s = AnnealingSchedule::cauchy(1.0, 1.1).unwrap();
    let tails: Vec<f64> = (0..17).map(|j| window_tail(&s, 1 << j)).collect();
    assert!(tails[1] > tails[0] && tails[2] > tails[1]);
    assert!(tails[2..].windows(2).all(|w| w[1] <= w[0]), "{tails:?}");
}

#[test]
fn window_tails_eventually_fall_below_threshold() {
    for alpha in [1.1, 1.5, 2.0] {
        let s = AnnealingSchedule::cauchy(1.0, alpha).unwrap();
        let n = s.cauchy_window_index(1e-3, 1 << 22, 256).unwrap();
        let n = n.unwrap_or_else(|| panic!("alpha {alpha}: no index found"));
        if 4.0 * n <= (1u64 << 22) as f64 {
            assert!(window_tail(&s, n as usize) < 1e-3);
        } else {
            assert!(s.tail_integral_bound(n, 4.0 * n).unwrap() < 1e-3);
        }
    }
}

#[test]
fn origin_is_optimal_for_zero_minimum_functions() {
    for objective in [Objective::Rastrigin, Objective::Griewangk, Objective::Ackley] {
        let spec = ObjectiveSpec::<f64>::new(objective, 15).unwrap();
        let raw = spec.evaluate_raw(&[0.0; 15]).unwrap();
        assert!(raw.abs() <= 1e-12);
        assert_eq!(spec.to_fitness(raw).unwrap(), 1.0);
    }
}

#[test]
fn separable_lattice_sweeps_respect_bounds() {
    for objective in [Objective::Rastrigin, Objective::Schwefel] {
        let one = ObjectiveSpec::new(objective, 1).unwrap();
        let values: Vec<f64> = lattice(objective)
            .iter()
            .map(|&v| one.evaluate_raw(&[v]).unwrap())
            .collect();
        let (lo, hi) = values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        let spec = ObjectiveSpec::new(objective, 15).unwrap();
        let (l, u) = spec.analytic_bounds();
        assert!(l <= 15.0 * lo && 15.0 * hi <= u, "{objective}: [{lo}, {hi}]");
    }
}

#[test]
fn ackley_termwise_sweep_respects_bounds() {
    let spec = ObjectiveSpec::new(Objective::Ackley, 15).unwrap();
    let (l, u) = spec.analytic_bounds();
    let grid = lattice(Objective::Ackley);
    let max_sq = grid.iter().map(|v| v * v).fold(0.0, f64::max);
    let min_cos = grid
        .iter()
        .map(|v| (std::f64::consts::TAU * v).cos())
        .fold(f64::INFINITY, f64::min);
    let termwise_max =
        20.0 - 20.0 * (-0.2 * max_sq.sqrt()).exp() + std::f64::consts::E - min_cos.exp();
    assert!(termwise_max <= u);
    for &v in &grid {
        let f = spec.evaluate_raw(&[v; 15]).unwrap();
        assert!(l <= f && f <= u);
    }
}

#[test]
fn fitness_stays_in_unit_interval_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for objective in Objective::ALL {
        let spec = ObjectiveSpec::new(objective, 15).unwrap();
        for _ in 0..20_000 {
            let x: Vec<f64> = (0..15).map(|_| rng.random_range(spec.lower..=spec.upper)).collect();
            let fit = spec.to_fitness(spec.evaluate_raw(&x).unwrap()).unwrap();
            assert!((0.0..=1.0).contains(&fit));
        }
    }
}

#[test]
fn fitness_is_strictly_decreasing_in_raw() {
    for objective in Objective::ALL {
        let spec = ObjectiveSpec::new(objective, 15).unwrap();
        let (l, u) = spec.analytic_bounds();
        let fits: Vec<f64> = (0..=100)
            .map(|i| spec.to_fitness(l + (u - l) * i as f64 / 100.0).unwrap())
            .collect();
        assert!(fits.windows(2).all(|w| w[1] < w[0]));
    }
}

#[test]
fn griewangk_random_lattice_points_respect_bounds() {
    let spec = ObjectiveSpec::new(Objective::Griewangk, 15).unwrap();
    let (l, u) = spec.analytic_bounds();
    let grid = lattice(Objective::Griewangk);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100_000 {
        let x: Vec<f64> = (0..15).map(|_| grid[rng.random_range(0..32)]).collect();
        let f = spec.evaluate_raw(&x).unwrap();
        assert!(l <= f && f <= u);
    }
}
