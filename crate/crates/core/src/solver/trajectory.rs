use std::fmt;
use std::sync::Arc;

use super::CommensurateGrid;

/// Initial function `φ` on `[−k·h, 0]`.
#[derive(Clone)]
pub enum HistorySpec {
    Constant(f64),
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl HistorySpec {
    pub fn function<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        HistorySpec::Function(Arc::new(f))
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            HistorySpec::Constant(c) => *c,
            HistorySpec::Function(f) => f(t),
        }
    }
}

impl fmt::Debug for HistorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HistorySpec::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            HistorySpec::Function(_) => f.write_str("Function(..)"),
        }
    }
}

/// Grid values `x_{−k}, ..., x_0, x_1, ..., x_last`.
///
/// When a step produces a non-finite value the run stops there;
/// `truncated_at` holds that step index and the stored values end just before it.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub(crate) h: f64,
    pub(crate) history_len: usize,
    pub(crate) values: Vec<f64>,
    pub(crate) truncated_at: Option<usize>,
}

impl Trajectory {
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Grid index of the first stored value, `−k`.
    pub fn t0_offset(&self) -> isize {
        -(self.history_len as isize)
    }

    /// All stored values, history first.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Computed values `x_0, x_1, ...`.
    pub fn forward(&self) -> &[f64] {
        &self.values[self.history_len..]
    }

    /// Index of the last stored grid point.
    pub fn last_index(&self) -> usize {
        self.values.len() - 1 - self.history_len
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated_at.is_some()
    }

    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    /// `x_j` for grid index `j ≥ −k`, if stored.
    pub fn get(&self, j: isize) -> Option<f64> {
        let idx = j + self.history_len as isize;
        if idx < 0 {
            return None;
        }
        self.values.get(idx as usize).copied()
    }

    pub fn time(&self, j: isize) -> f64 {
        j as f64 * self.h
    }

    /// `(t_n, x_n)` for `n ≥ 0`.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.forward()
            .iter()
            .enumerate()
            .map(move |(n, &x)| (n as f64 * self.h, x))
    }

    /// Value at the grid point nearest to `t`.
    pub fn at_time(&self, t: f64) -> Option<f64> {
        self.get((t / self.h).round() as isize)
    }

    pub fn final_value(&self) -> f64 {
        *self.values.last().expect("trajectory holds at least x_0")
    }
}

/// One row of the delay embedding: `(t, x(t), x(t − τ1), x(t − τ2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRow {
    pub t: f64,
    pub x: f64,
    pub x_tau1: f64,
    pub x_tau2: f64,
}

/// Delay-embedding table for every stored step `n ≥ 0`.
pub fn phase_columns(traj: &Trajectory, grid: &CommensurateGrid) -> Vec<PhaseRow> {
    assert!(
        traj.history_len >= grid.k(),
        "trajectory history shorter than the grid's delays"
    );
    let (k1, k2) = (grid.k1() as isize, grid.k2() as isize);
    (0..=traj.last_index() as isize)
        .map(|n| PhaseRow {
            t: traj.time(n),
            x: traj.values[(n + traj.history_len as isize) as usize],
            x_tau1: traj.values[(n - k1 + traj.history_len as isize) as usize],
            x_tau2: traj.values[(n - k2 + traj.history_len as isize) as usize],
        })
        .collect()
}
