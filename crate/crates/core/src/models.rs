//! The Uçar and Ikeda example systems.

use crate::error::{Error, Result};
use crate::solver::SystemRhs;
use crate::stability::Equilibrium;

/// Parameters of `D^α x = δ x(t−τ1) − ε x(t−τ2)³`, both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UcarParams {
    delta: f64,
    epsilon: f64,
}

impl UcarParams {
    pub fn new(delta: f64, epsilon: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::invalid(
                "delta",
                format!("must be positive, got {delta}"),
            ));
        }
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::invalid(
                "epsilon",
                format!("must be positive, got {epsilon}"),
            ));
        }
        Ok(UcarParams { delta, epsilon })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

impl Default for UcarParams {
    fn default() -> Self {
        UcarParams {
            delta: 1.0,
            epsilon: 1.0,
        }
    }
}

/// Parameters of `D^α x = c1 x(t−τ1) + c2 sin(x(t−τ2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IkedaParams {
    c1: f64,
    c2: f64,
}

impl IkedaParams {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !c1.is_finite() {
            return Err(Error::invalid("c1", format!("must be finite, got {c1}")));
        }
        if !c2.is_finite() {
            return Err(Error::invalid("c2", format!("must be finite, got {c2}")));
        }
        Ok(IkedaParams { c1, c2 })
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }
}

impl Default for IkedaParams {
    fn default() -> Self {
        IkedaParams { c1: -3.0, c2: 24.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ucar {
    pub params: UcarParams,
}

impl Ucar {
    /// `0` and `±√(δ/ε)`, ascending.
    pub fn equilibria(&self) -> [Equilibrium; 3] {
        let r = (self.params.delta / self.params.epsilon).sqrt();
        [-r, 0.0, r].map(|x_star| Equilibrium { x_star })
    }
}

impl SystemRhs for Ucar {
    fn eval(&self, x1: f64, x2: f64) -> f64 {
        self.params.delta * x1 - self.params.epsilon * x2 * x2 * x2
    }

    fn partials(&self, _x1: f64, x2: f64) -> Option<(f64, f64)> {
        Some((self.params.delta, -3.0 * self.params.epsilon * x2 * x2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ikeda {
    pub params: IkedaParams,
}

impl SystemRhs for Ikeda {
    fn eval(&self, x1: f64, x2: f64) -> f64 {
        self.params.c1 * x1 + self.params.c2 * x2.sin()
    }

    fn partials(&self, _x1: f64, x2: f64) -> Option<(f64, f64)> {
        Some((self.params.c1, self.params.c2 * x2.cos()))
    }
}

pub fn ucar_rhs(p: UcarParams) -> Ucar {
    Ucar { params: p }
}

pub fn ikeda_rhs(p: IkedaParams) -> Ikeda {
    Ikeda { params: p }
}
