use crate::error::{Error, Result};

/// Smallest admissible step is `h_request / MAX_STEP_DIVISOR`.
pub const MAX_STEP_DIVISOR: f64 = 1024.0;

/// The two delays `(τ1, τ2)`, both finite and non-negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayPair {
    tau1: f64,
    tau2: f64,
}

impl DelayPair {
    pub fn new(tau1: f64, tau2: f64) -> Result<Self> {
        for (name, tau) in [("tau1", tau1), ("tau2", tau2)] {
            if !tau.is_finite() || tau < 0.0 {
                return Err(Error::invalid(
                    name,
                    format!("delay must be finite and >= 0, got {tau}"),
                ));
            }
        }
        Ok(DelayPair { tau1, tau2 })
    }

    pub fn tau1(&self) -> f64 {
        self.tau1
    }

    pub fn tau2(&self) -> f64 {
        self.tau2
    }

    pub fn is_zero(&self) -> bool {
        self.tau1 == 0.0 && self.tau2 == 0.0
    }
}

/// Uniform grid `t_n = n·h`, `n = −k..=N`, with `h·k1 = τ1`, `h·k2 = τ2`,
/// `k = max(k1, k2)` and `k1, k2 ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommensurateGrid {
    h: f64,
    steps: usize,
    k1: usize,
    k2: usize,
}

impl CommensurateGrid {
    /// Grid from explicit step counts. Both delays must span at least one step,
    /// otherwise the scheme would need `f_{n+1}` before `x_{n+1}` is known.
    pub fn new(h: f64, steps: usize, k1: usize, k2: usize) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::invalid(
                "h",
                format!("step must be positive, got {h}"),
            ));
        }
        if steps == 0 {
            return Err(Error::invalid("N", "at least one step is required"));
        }
        if k1 == 0 || k2 == 0 {
            return Err(Error::invalid(
                "k1/k2",
                "delays shorter than one step make the scheme implicit",
            ));
        }
        Ok(CommensurateGrid { h, steps, k1, k2 })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Number of steps `N`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    /// Length of the history segment, `max(k1, k2)`.
    pub fn k(&self) -> usize {
        self.k1.max(self.k2)
    }

    pub fn horizon(&self) -> f64 {
        self.steps as f64 * self.h
    }

    pub fn tau1(&self) -> f64 {
        self.k1 as f64 * self.h
    }

    pub fn tau2(&self) -> f64 {
        self.k2 as f64 * self.h
    }
}

fn near_integer(ratio: f64, tolerance: f64) -> Option<usize> {
    let r = ratio.round();
    if r >= 1.0 && (ratio - r).abs() <= tolerance * r {
        Some(r as usize)
    } else {
        None
    }
}

/// Largest step `h ≤ h_request` for which `τ1/h`, `τ2/h` and `T/h` are all
/// integers to relative `tolerance`.
///
/// Every admissible step divides the shorter delay, so the candidates are
/// `τ_min / k` for increasing `k`, down to `h_request / 1024`. Delays are never
/// perturbed to make them fit.
pub fn build_grid(
    delays: DelayPair,
    horizon: f64,
    h_request: f64,
    tolerance: f64,
) -> Result<CommensurateGrid> {
    let (tau1, tau2) = (delays.tau1(), delays.tau2());
    if !(tau1 > 0.0) || !(tau2 > 0.0) {
        return Err(Error::invalid(
            "tau1/tau2",
            "the solver needs both delays > 0; zero delays are handled analytically",
        ));
    }
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::invalid(
            "T",
            format!("horizon must be positive, got {horizon}"),
        ));
    }
    if !(h_request > 0.0) || !h_request.is_finite() {
        return Err(Error::invalid(
            "h",
            format!("step must be positive, got {h_request}"),
        ));
    }
    if !(tolerance >= 0.0) {
        return Err(Error::invalid(
            "tolerance",
            format!("must be >= 0, got {tolerance}"),
        ));
    }

    let tau_min = tau1.min(tau2);
    let h_min = h_request / MAX_STEP_DIVISOR;
    // First k with τ_min/k ≤ h_request, allowing for representation error.
    let mut k = ((tau_min / h_request) * (1.0 - tolerance)).ceil().max(1.0) as usize;
    loop {
        let h = tau_min / k as f64;
        if h < h_min {
            break;
        }
        if h <= h_request * (1.0 + tolerance) {
            let fit = (
                near_integer(tau1 / h, tolerance),
                near_integer(tau2 / h, tolerance),
                near_integer(horizon / h, tolerance),
            );
            if let (Some(k1), Some(k2), Some(n)) = fit {
                return CommensurateGrid::new(h, n, k1, k2);
            }
        }
        k += 1;
    }
    Err(Error::IncommensurableDelays {
        tau1,
        tau2,
        horizon,
        h_request,
        h_min,
    })
}
