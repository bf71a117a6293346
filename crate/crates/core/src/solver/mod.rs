//! Product-trapezoidal scheme for `D^α x = g(x(t−τ1), x(t−τ2))`.
//!
//! The initial value problem is rewritten as the Volterra equation
//!
//! ```text
//! x(t) = φ(0) + 1/Γ(α) ∫_0^t (t − ζ)^(α−1) g(x(ζ−τ1), x(ζ−τ2)) dζ
//! ```
//!
//! and advanced on a uniform grid whose step divides both delays, so the
//! delayed states are plain index shifts.

mod grid;
mod rhs;
mod scheme;
mod trajectory;

pub use grid::{build_grid, CommensurateGrid, DelayPair, MAX_STEP_DIVISOR};
pub use rhs::{LinearRhs, SystemRhs};
pub use scheme::simulate;
pub use trajectory::{phase_columns, HistorySpec, PhaseRow, Trajectory};
