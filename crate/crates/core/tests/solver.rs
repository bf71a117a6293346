use fdde::numerics::{delayed_series_oracle, trapezoid_weights};
use fdde::solver::{build_grid, simulate, CommensurateGrid};
use fdde::{DelayPair, FractionalOrder, HistorySpec, LinearRhs};
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn order(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

/// Classical trapezoid integrator for x' = a x(t−τ1) + b x(t−τ2), written
/// independently of the weight tables.
fn classical_trapezoid(a: f64, b: f64, grid: &CommensurateGrid, phi: f64) -> Vec<f64> {
    let (k1, k2, k, h) = (grid.k1(), grid.k2(), grid.k(), grid.h());
    let mut x = vec![phi; k + 1];
    let g = |x: &[f64], j: usize| a * x[j + k - k1] + b * x[j + k - k2];
    let mut integral = 0.0;
    for n in 0..grid.steps() {
        integral += 0.5 * h * (g(&x, n) + g(&x, n + 1));
        x.push(phi + integral);
    }
    x
}

#[test]
fn alpha_one_reduces_to_classical_trapezoid() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..25 {
        let a = rng.gen_range(-2.0..1.0);
        let b = rng.gen_range(-2.0..1.0);
        let k1 = rng.gen_range(1..40);
        let k2 = rng.gen_range(1..40);
        let phi = rng.gen_range(-1.0..1.0);
        let grid = CommensurateGrid::new(0.01, 800, k1, k2).unwrap();
        let traj = simulate(
            &LinearRhs::new(a, b),
            order(1.0),
            &grid,
            &HistorySpec::Constant(phi),
        )
        .unwrap();
        let reference = classical_trapezoid(a, b, &grid, phi);
        for (got, want) in traj.values().iter().zip(&reference) {
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(1.0),
                "{got} vs {want}"
            );
        }
    }
}

fn max_oracle_error(alpha: f64, h: f64) -> f64 {
    let grid = build_grid(DelayPair::new(1.0, 1.0).unwrap(), 5.0, h, 1e-9).unwrap();
    let traj = simulate(
        &LinearRhs::new(-1.0, 0.0),
        order(alpha),
        &grid,
        &HistorySpec::Constant(1.0),
    )
    .unwrap();
    traj.points()
        .map(|(t, x)| (x - delayed_series_oracle(order(alpha), -1.0, 1.0, t)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn convergence_order_against_series_oracle() {
    for &alpha in &[0.5, 0.9, 1.0] {
        let errs: Vec<f64> = [0.01, 0.005, 0.0025]
            .iter()
            .map(|&h| max_oracle_error(alpha, h))
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] < w[0], "alpha {alpha}: {errs:?}");
            let p = (w[0] / w[1]).log2();
            if alpha == 0.5 {
                // Error at t = τ + h is exactly first order in h.
                assert!((p - 1.0).abs() <= 1e-6, "alpha {alpha}: order {p}");
            } else {
                assert!(p >= 1.0, "alpha {alpha}: order {p}");
            }
        }
    }
}

#[test]
fn constant_equilibrium_stays_fixed() {
    // g(x1, x2) = x1 − x2³ has x* = ±1.
    let rhs = |x1: f64, x2: f64| x1 - x2 * x2 * x2;
    for &alpha in &[0.3, 0.7, 1.0] {
        for &x_star in &[-1.0, 1.0] {
            let grid = CommensurateGrid::new(0.01, 2000, 17, 5).unwrap();
            let traj = simulate(&rhs, order(alpha), &grid, &HistorySpec::Constant(x_star)).unwrap();
            assert!(traj.values().iter().all(|x| (x - x_star).abs() <= 1e-12));
        }
    }
}

#[test]
fn explicit_update_reads_only_known_values() {
    // Probing g records the largest grid time it was evaluated at; with unit
    // delays it can never look at t > t_n while producing x_{n+1}.
    use std::cell::Cell;
    let last_seen = Cell::new(f64::NEG_INFINITY);
    let rhs = |x1: f64, _x2: f64| {
        // x tracks time exactly when g ≡ 1 and α = 1.
        last_seen.set(last_seen.get().max(x1));
        1.0
    };
    let grid = CommensurateGrid::new(0.125, 64, 1, 3).unwrap();
    let traj = simulate(&rhs, order(1.0), &grid, &HistorySpec::function(|t| t)).unwrap();
    // x(t) = t on the whole grid, and g saw at most x_{N−1}.
    for (t, x) in traj.points() {
        assert!((x - t).abs() < 1e-12);
    }
    assert!((last_seen.get() - (grid.horizon() - grid.h())).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weight_row_invariants(alpha in 0.001f64..=1.0, n in 0usize..=200) {
        let row = trapezoid_weights(order(alpha), n);
        prop_assert_eq!(row.weights.len(), n + 2);
        prop_assert_eq!(*row.weights.last().unwrap(), 1.0);
        prop_assert!(row.weights[0] >= 0.0);
        prop_assert!(row.weights[1..=n].iter().all(|&w| w > 0.0));
        let want = (alpha + 1.0) * ((n + 1) as f64).powf(alpha);
        prop_assert!(((row.sum() - want) / want).abs() <= 1e-12);
    }

    #[test]
    fn constant_history_with_zero_rhs_is_constant(
        alpha in 0.05f64..=1.0,
        c in -5.0f64..5.0,
        k1 in 1usize..20,
        k2 in 1usize..20,
    ) {
        let grid = CommensurateGrid::new(0.05, 200, k1, k2).unwrap();
        let traj = simulate(&LinearRhs::new(1.0, -1.0), order(alpha), &grid, &HistorySpec::Constant(c)).unwrap();
        prop_assert!(traj.values().iter().all(|x| (x - c).abs() <= 1e-12 * c.abs().max(1.0)));
    }
}
