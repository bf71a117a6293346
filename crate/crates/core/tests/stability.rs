use fdde::stability::{
    characteristic_residual, classify, critical_curve, linearize, stable_at_zero_delay,
};
use fdde::{
    CriticalCurvePoint, CurveSearch, DelayPair, Equilibrium, FractionalOrder, LinearCoefficients,
    StabilityVerdict, SystemRhs,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn order(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

fn coef(a: f64, b: f64) -> LinearCoefficients {
    LinearCoefficients::new(a, b).unwrap()
}

fn curve(alpha: f64, c: LinearCoefficients, samples: usize) -> Vec<CriticalCurvePoint> {
    let s = CurveSearch::default_for(order(alpha), c).with_samples(samples);
    critical_curve(order(alpha), c, &s).unwrap()
}

/// Real and imaginary parts of (iv)^α − a e^{−ivτ1} − b e^{−ivτ2}, written out.
fn critical_equations(alpha: f64, c: LinearCoefficients, p: &CriticalCurvePoint) -> (f64, f64) {
    let w = p.v.powf(alpha);
    let half = alpha * std::f64::consts::FRAC_PI_2;
    let eq_re = w * half.cos() - c.a * (p.v * p.tau1).cos() - c.b * (p.v * p.tau2).cos();
    let eq_im = w * half.sin() + c.a * (p.v * p.tau1).sin() + c.b * (p.v * p.tau2).sin();
    (eq_re, eq_im)
}

fn sorted_triples(points: impl Iterator<Item = (f64, f64, f64)>) -> Vec<(f64, f64, f64)> {
    let mut v: Vec<_> = points.collect();
    v.sort_by(|p, q| {
        p.0.total_cmp(&q.0)
            .then(p.1.total_cmp(&q.1))
            .then(p.2.total_cmp(&q.2))
    });
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn curve_points_solve_both_equations(
        alpha in 0.2f64..=1.0,
        a in -5.0f64..5.0,
        b in -5.0f64..5.0,
    ) {
        prop_assume!(a.abs() > 1e-3 && b.abs() > 1e-3);
        let c = coef(a, b);
        for p in curve(alpha, c, 2000) {
            let (re, im) = critical_equations(alpha, c, &p);
            prop_assert!(re.abs() <= 1e-9 && im.abs() <= 1e-9, "{p:?}");
            prop_assert!(p.tau1 >= 0.0 && p.tau2 >= 0.0);
            let delays = DelayPair::new(p.tau1, p.tau2).unwrap();
            let r = characteristic_residual(order(alpha), c, delays, Complex64::new(0.0, p.v));
            prop_assert!(r.norm() <= 1e-9, "{p:?}: {r}");
        }
    }

    #[test]
    fn swapping_coefficients_swaps_delays(
        alpha in 0.3f64..=1.0,
        a in -4.0f64..4.0,
        b in -4.0f64..4.0,
    ) {
        prop_assume!(a.abs() > 1e-2 && b.abs() > 1e-2);
        let c = coef(a, b);
        // Same window for both so the v samples coincide.
        let s = CurveSearch::default_for(order(alpha), c).with_samples(1500);
        let direct = critical_curve(order(alpha), c, &s).unwrap();
        let swapped = critical_curve(order(alpha), c.swapped(), &s).unwrap();
        prop_assert_eq!(direct.len(), swapped.len());
        let lhs = sorted_triples(direct.iter().map(|p| (p.v, p.tau1, p.tau2)));
        let rhs = sorted_triples(swapped.iter().map(|p| (p.v, p.tau2, p.tau1)));
        for (x, y) in lhs.iter().zip(&rhs) {
            prop_assert!((x.0 - y.0).abs() <= 1e-15 * x.0);
            prop_assert!((x.1 - y.1).abs() <= 1e-12 && (x.2 - y.2).abs() <= 1e-12, "{x:?} {y:?}");
        }
        let mut labels: Vec<_> = direct.iter().map(|p| (p.v.to_bits(), p.branch)).collect();
        let mut swapped_labels: Vec<_> = swapped.iter().map(|p| (p.v.to_bits(), p.branch.swapped())).collect();
        labels.sort();
        swapped_labels.sort();
        prop_assert_eq!(labels, swapped_labels);
    }

    #[test]
    fn zero_delays_follow_sign_of_sum(a in -10.0f64..10.0, b in -10.0f64..10.0, alpha in 0.1f64..=1.0) {
        let c = coef(a, b);
        let s = CurveSearch::default_for(order(alpha), c);
        let verdict = classify(order(alpha), c, DelayPair::new(0.0, 0.0).unwrap(), 1e-6, &s)
            .unwrap()
            .verdict;
        let want = if (a + b).abs() <= 1e-12 {
            StabilityVerdict::OnBoundary
        } else if a + b < 0.0 {
            StabilityVerdict::StableAtZeroDelays
        } else {
            StabilityVerdict::UnstableAtZeroDelays
        };
        prop_assert_eq!(verdict, want);
        prop_assert_eq!(stable_at_zero_delay(c), want);
    }
}

/// `g(x1, x2) = Σ c_ij x1^i x2^j` over `i + j ≤ 3`, without closed-form partials.
struct Polynomial {
    c: [[f64; 4]; 4],
}

impl Polynomial {
    fn value(&self, x1: f64, x2: f64) -> f64 {
        let mut s = 0.0;
        for i in 0..4 {
            for j in 0..4 - i {
                s += self.c[i][j] * x1.powi(i as i32) * x2.powi(j as i32);
            }
        }
        s
    }

    fn exact_partials(&self, x: f64) -> (f64, f64) {
        let (mut d1, mut d2) = (0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 - i {
                if i > 0 {
                    d1 += self.c[i][j] * i as f64 * x.powi(i as i32 - 1) * x.powi(j as i32);
                }
                if j > 0 {
                    d2 += self.c[i][j] * j as f64 * x.powi(i as i32) * x.powi(j as i32 - 1);
                }
            }
        }
        (d1, d2)
    }
}

impl SystemRhs for Polynomial {
    fn eval(&self, x1: f64, x2: f64) -> f64 {
        self.value(x1, x2)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn numerical_partials_match_analytic(
        coeffs in prop::array::uniform16(-2.0f64..2.0),
        x in -3.0f64..3.0,
    ) {
        let mut c = [[0.0; 4]; 4];
        for (k, v) in coeffs.iter().enumerate() {
            c[k / 4][k % 4] = *v;
        }
        let g = Polynomial { c };
        let got = linearize(&g, Equilibrium { x_star: x }).unwrap();
        let (a, b) = g.exact_partials(x);
        prop_assert!((got.a - a).abs() <= 1e-7 * a.abs().max(1.0), "{} vs {}", got.a, a);
        prop_assert!((got.b - b).abs() <= 1e-7 * b.abs().max(1.0), "{} vs {}", got.b, b);
    }
}

#[test]
fn verdicts_survive_finer_sampling() {
    let cases = [
        (0.7, coef(1.0, -3.0)),
        (0.9, coef(1.0, -3.0)),
        (1.0, coef(1.0, -3.0)),
        (0.7, coef(-3.0, -22.4977)),
        (0.5, coef(-1.0, 2.0 / 3.0)),
    ];
    for (alpha, c) in cases {
        let coarse = CurveSearch::default_for(order(alpha), c);
        let fine = coarse.with_samples(2 * coarse.samples);
        let scale = if c.b.abs() > 10.0 { 0.05 } else { 1.0 };
        for i in 0..6 {
            for j in 0..6 {
                let d = DelayPair::new(scale * 0.37 * i as f64, scale * 0.29 * j as f64).unwrap();
                let v1 = classify(order(alpha), c, d, 1e-6, &coarse).unwrap().verdict;
                let v2 = classify(order(alpha), c, d, 1e-6, &fine).unwrap().verdict;
                assert_eq!(v1, v2, "alpha {alpha} {c:?} {d:?}");
            }
        }
    }
}

#[test]
fn ucar_curves_are_distinct_across_orders() {
    // Boundary height at τ1 = 0 for the Uçar coefficients; the ordering is a
    // recorded property of this implementation (≈ 0.3136, 0.3717, 0.4124, 0.4352).
    let c = coef(1.0, -3.0);
    let heights: Vec<f64> = [0.7, 0.8, 0.9, 1.0]
        .iter()
        .map(|&al| {
            let s = CurveSearch::default_for(order(al), c);
            fdde::stability::critical_tau2_for_tau1(order(al), c, 0.0, &s)
                .unwrap()
                .unwrap()
        })
        .collect();
    for w in heights.windows(2) {
        assert!(w[1] - w[0] > 0.02, "{heights:?}");
    }
}
