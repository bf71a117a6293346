//! Stability of equilibria of `D^α x = g(x(t−τ1), x(t−τ2))`.
//!
//! Linearizing at an equilibrium `x*` gives `D^α ξ = a ξ(t−τ1) + b ξ(t−τ2)`
//! with characteristic equation `λ^α = a e^{−λτ1} + b e^{−λτ2}`. Stability can
//! only change where a root crosses the imaginary axis, `λ = iv`; those
//! `(τ1, τ2)` form the critical curves computed in [`critical_curve`].

mod curves;

pub use curves::{
    classify, cosine_arguments, critical_crossings, critical_curve, critical_tau2_for_tau1,
    curve_delays, Branch, Classification, CriticalCurvePoint, CurveSearch, DEFAULT_MAX_BRANCH,
    DEFAULT_SAMPLES, RESIDUAL_TOLERANCE,
};

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::FractionalOrder;
use crate::solver::{DelayPair, SystemRhs};

/// `|a + b|` at or below this is treated as a root at `λ = 0`.
pub const ZERO_DELAY_TOLERANCE: f64 = 1e-12;

const EQUILIBRIUM_TOLERANCE: f64 = 1e-12;

/// A constant solution `x*` with `g(x*, x*) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equilibrium {
    pub x_star: f64,
}

/// Partial derivatives `a = ∂g/∂x1`, `b = ∂g/∂x2` at `(x*, x*)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearCoefficients {
    pub a: f64,
    pub b: f64,
}

impl LinearCoefficients {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::NonFiniteCoefficient {
                name: "a",
                value: a,
            });
        }
        if !b.is_finite() {
            return Err(Error::NonFiniteCoefficient {
                name: "b",
                value: b,
            });
        }
        Ok(LinearCoefficients { a, b })
    }

    /// The curve formulas divide by `2a` and `2b`.
    pub fn require_two_delays(&self) -> Result<()> {
        if self.a == 0.0 || self.b == 0.0 {
            Err(Error::DegenerateCoefficients {
                a: self.a,
                b: self.b,
            })
        } else {
            Ok(())
        }
    }

    /// `(b, a)`: the same system with the roles of the delays exchanged.
    pub fn swapped(&self) -> Self {
        LinearCoefficients {
            a: self.b,
            b: self.a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityVerdict {
    StableAtZeroDelays,
    UnstableAtZeroDelays,
    Stable,
    Unstable,
    OnBoundary,
}

impl StabilityVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            StabilityVerdict::StableAtZeroDelays => "StableAtZeroDelays",
            StabilityVerdict::UnstableAtZeroDelays => "UnstableAtZeroDelays",
            StabilityVerdict::Stable => "Stable",
            StabilityVerdict::Unstable => "Unstable",
            StabilityVerdict::OnBoundary => "OnBoundary",
        }
    }

    pub fn is_stable(self) -> bool {
        matches!(
            self,
            StabilityVerdict::Stable | StabilityVerdict::StableAtZeroDelays
        )
    }
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Roots of `x ↦ g(x, x)` on `[lo, hi]`, ascending.
///
/// The bracket is scanned at `resolution` equally spaced points and every
/// sign change is bisected. Roots where `g(x, x)` touches zero without
/// changing sign are missed unless they fall exactly on a scan point.
pub fn find_equilibria<R>(rhs: &R, lo: f64, hi: f64, resolution: usize) -> Vec<Equilibrium>
where
    R: SystemRhs + ?Sized,
{
    assert!(
        lo.is_finite() && hi.is_finite() && lo < hi,
        "bracket must be finite and non-empty"
    );
    assert!(resolution >= 2, "resolution must be at least 2");
    let diag = |x: f64| rhs.eval(x, x);
    let step = (hi - lo) / (resolution - 1) as f64;
    let xs: Vec<f64> = (0..resolution)
        .map(|i| {
            if i + 1 == resolution {
                hi
            } else {
                lo + i as f64 * step
            }
        })
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| diag(x)).collect();

    let mut roots = Vec::new();
    for i in 0..resolution {
        if fs[i] == 0.0 {
            roots.push(xs[i]);
        }
        if i + 1 < resolution
            && fs[i] != 0.0
            && fs[i + 1] != 0.0
            && (fs[i] < 0.0) != (fs[i + 1] < 0.0)
        {
            roots.push(bisect(&diag, xs[i], xs[i + 1], fs[i]));
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|x, y| (*x - *y).abs() <= 1e-9 * x.abs().max(1.0));
    roots
        .into_iter()
        .map(|x_star| Equilibrium { x_star })
        .collect()
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid.abs() <= EQUILIBRIUM_TOLERANCE && (hi - lo) <= 1e-12 * mid.abs().max(1.0) {
            return mid;
        }
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Coefficients of the linearization at `eq`.
///
/// Uses the closed-form partials when the system provides them; otherwise
/// central differences with step `s = max(1e-6, 1e-6·|x*|)`, improved by one
/// Richardson step `(4 D(s/2) − D(s)) / 3`.
pub fn linearize<R>(rhs: &R, eq: Equilibrium) -> Result<LinearCoefficients>
where
    R: SystemRhs + ?Sized,
{
    let x = eq.x_star;
    let (a, b) = match rhs.partials(x, x) {
        Some(p) => p,
        None => {
            let s = (1e-6 * x.abs()).max(1e-6);
            let d1 = |s: f64| (rhs.eval(x + s, x) - rhs.eval(x - s, x)) / (2.0 * s);
            let d2 = |s: f64| (rhs.eval(x, x + s) - rhs.eval(x, x - s)) / (2.0 * s);
            let richardson = |d: &dyn Fn(f64) -> f64| (4.0 * d(0.5 * s) - d(s)) / 3.0;
            (richardson(&d1), richardson(&d2))
        }
    };
    LinearCoefficients::new(a, b)
}

/// Delay-free verdict: the equilibrium of `D^α ξ = (a + b) ξ` is stable iff `a + b < 0`.
pub fn stable_at_zero_delay(coef: LinearCoefficients) -> StabilityVerdict {
    let s = coef.a + coef.b;
    if s.abs() <= ZERO_DELAY_TOLERANCE {
        StabilityVerdict::OnBoundary
    } else if s < 0.0 {
        StabilityVerdict::StableAtZeroDelays
    } else {
        StabilityVerdict::UnstableAtZeroDelays
    }
}

/// `λ^α − a e^{−λτ1} − b e^{−λτ2}`, principal branch of `λ^α`.
pub fn characteristic_residual(
    alpha: FractionalOrder,
    coef: LinearCoefficients,
    delays: DelayPair,
    lambda: Complex64,
) -> Complex64 {
    let power = if lambda == Complex64::new(0.0, 0.0) {
        Complex64::new(0.0, 0.0)
    } else {
        lambda.powf(alpha.value())
    };
    power - coef.a * (-lambda * delays.tau1()).exp() - coef.b * (-lambda * delays.tau2()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::LinearRhs;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn equilibria_of_cubic() {
        let rhs = |x1: f64, x2: f64| x1 - x2 * x2 * x2;
        let eq = find_equilibria(&rhs, -3.0, 3.0, 601);
        let xs: Vec<f64> = eq.iter().map(|e| e.x_star).collect();
        assert_eq!(xs.len(), 3);
        for (x, want) in xs.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((x - want).abs() < 1e-12, "{xs:?}");
        }
    }

    #[test]
    fn equilibria_off_grid_roots() {
        let rhs = |x1: f64, x2: f64| x1 - x2 * x2 * x2;
        let xs: Vec<f64> = find_equilibria(&rhs, -2.95, 3.1, 7)
            .iter()
            .map(|e| e.x_star)
            .collect();
        assert_eq!(xs.len(), 3);
        assert!(xs.iter().all(|x| (x - x * x * x).abs() <= 1e-12));
    }

    #[test]
    fn no_sign_change_no_root() {
        assert!(find_equilibria(&|_: f64, _: f64| 1.0, -5.0, 5.0, 100).is_empty());
        // Tangential root is missed.
        assert!(find_equilibria(&|x: f64, _: f64| (x - 0.3).powi(2), -1.0, 1.0, 10).is_empty());
    }

    #[test]
    fn linearize_linear_system() {
        let rhs = |x1: f64, x2: f64| 2.5 * x1 - 0.75 * x2;
        let coef = linearize(&rhs, Equilibrium { x_star: 0.0 }).unwrap();
        assert!((coef.a - 2.5).abs() < 1e-9 && (coef.b + 0.75).abs() < 1e-9);
        let coef = linearize(&LinearRhs::new(2.5, -0.75), Equilibrium { x_star: 3.0 }).unwrap();
        assert_eq!((coef.a, coef.b), (2.5, -0.75));
    }

    #[test]
    fn linearize_rejects_non_finite() {
        let rhs = |x1: f64, _: f64| x1.sqrt();
        assert!(matches!(
            linearize(&rhs, Equilibrium { x_star: 0.0 }),
            Err(Error::NonFiniteCoefficient { .. })
        ));
    }

    #[test]
    fn zero_delay_verdicts() {
        let v = |a, b| stable_at_zero_delay(LinearCoefficients::new(a, b).unwrap());
        assert_eq!(v(1.0, -3.0), StabilityVerdict::StableAtZeroDelays);
        assert_eq!(v(-3.0, -22.4977), StabilityVerdict::StableAtZeroDelays);
        assert_eq!(v(1.0, -1.0), StabilityVerdict::OnBoundary);
        assert_eq!(v(1.0, 0.0), StabilityVerdict::UnstableAtZeroDelays);
    }

    #[test]
    fn residual_examples() {
        let one = FractionalOrder::new(1.0).unwrap();
        let r = characteristic_residual(
            one,
            LinearCoefficients::new(-1.0, 0.0).unwrap(),
            DelayPair::new(0.0, 0.0).unwrap(),
            Complex64::new(-1.0, 0.0),
        );
        assert!(r.norm() < 1e-15);

        let r = characteristic_residual(
            one,
            LinearCoefficients::new(1.0, -3.0).unwrap(),
            DelayPair::new(FRAC_PI_4, FRAC_PI_4).unwrap(),
            Complex64::new(0.0, 2.0),
        );
        assert!(r.norm() <= 1e-12, "{r}");
    }
}
