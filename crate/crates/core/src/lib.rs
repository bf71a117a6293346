//! Fractional delay differential equations with two discrete delays.
//!
//! The crate covers the scalar problem
//!
//! ```text
//! D^α x(t) = g(x(t − τ1), x(t − τ2)),   0 < α ≤ 1,
//! x(t) = φ(t) for t ≤ 0,
//! ```
//!
//! where `D^α` is the Caputo derivative. It provides
//!
//! * [`numerics`]: gamma function, product-trapezoidal weights, Mittag-Leffler
//!   series and a closed-form solution of the linear one-delay problem used as
//!   a test oracle;
//! * [`solver`]: the explicit product-trapezoidal scheme on a grid that
//!   divides both delays;
//! * [`stability`]: equilibria, linearization, the characteristic equation and
//!   the parametric critical curves in the (τ1, τ2) plane;
//! * [`models`]: the Uçar and Ikeda example systems.
//!
//! ```
//! use fdde::{models, solver, FractionalOrder, DelayPair, HistorySpec};
//!
//! let rhs = models::ucar_rhs(models::UcarParams::new(1.0, 1.0).unwrap());
//! let alpha = FractionalOrder::new(0.9).unwrap();
//! let grid = solver::build_grid(DelayPair::new(0.4, 0.5).unwrap(), 10.0, 0.01, 1e-9).unwrap();
//! let traj = solver::simulate(&rhs, alpha, &grid, &HistorySpec::Constant(0.8)).unwrap();
//! assert!(!traj.is_truncated());
//! ```

// `!(x > 0.0)` is used on purpose so that NaN is rejected along with the rest.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod models;
pub mod numerics;
pub mod solver;
pub mod stability;

pub use error::{Error, Result};
pub use numerics::{FractionalOrder, WeightRow};
pub use solver::{
    CommensurateGrid, DelayPair, HistorySpec, LinearRhs, PhaseRow, SystemRhs, Trajectory,
};
pub use stability::{
    Branch, Classification, CriticalCurvePoint, CurveSearch, Equilibrium, LinearCoefficients,
    StabilityVerdict,
};
