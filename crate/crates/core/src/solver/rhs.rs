/// Right-hand side `g(x1, x2)`, where `x1 = x(t − τ1)` and `x2 = x(t − τ2)`.
///
/// Any `Fn(f64, f64) -> f64` is a `SystemRhs` without analytic partials.
pub trait SystemRhs {
    fn eval(&self, x1: f64, x2: f64) -> f64;

    /// `(∂g/∂x1, ∂g/∂x2)` at `(x1, x2)`, when known in closed form.
    fn partials(&self, _x1: f64, _x2: f64) -> Option<(f64, f64)> {
        None
    }
}

impl<F> SystemRhs for F
where
    F: Fn(f64, f64) -> f64,
{
    fn eval(&self, x1: f64, x2: f64) -> f64 {
        self(x1, x2)
    }
}

/// `g(x1, x2) = a·x1 + b·x2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearRhs {
    pub a: f64,
    pub b: f64,
}

impl LinearRhs {
    pub fn new(a: f64, b: f64) -> Self {
        LinearRhs { a, b }
    }
}

impl SystemRhs for LinearRhs {
    fn eval(&self, x1: f64, x2: f64) -> f64 {
        self.a * x1 + self.b * x2
    }

    fn partials(&self, _x1: f64, _x2: f64) -> Option<(f64, f64)> {
        Some((self.a, self.b))
    }
}
