use super::{CommensurateGrid, HistorySpec, SystemRhs, Trajectory};
use crate::error::{Error, Result};
use crate::numerics::{first_weight, gamma_pos, interior_weight, FractionalOrder};

/// Advance the product-trapezoidal scheme over the whole grid:
///
/// ```text
/// x_{n+1} = φ(0) + h^α/Γ(α+2) · Σ_{j=0}^{n+1} a_{j,n+1} · g(x_{j−k1}, x_{j−k2})
/// ```
///
/// Because `k1, k2 ≥ 1`, the term `j = n + 1` only reads `x_{≤n}` and the
/// update is explicit. Each `f_j = g(x_{j−k1}, x_{j−k2})` is evaluated once
/// and stored; the interior weights depend on `n − j` only and are tabulated
/// up front, so step `n` costs `O(n)` and the run `O(N²)`.
///
/// A non-finite value stops the run and marks the trajectory truncated.
pub fn simulate<R>(
    rhs: &R,
    alpha: FractionalOrder,
    grid: &CommensurateGrid,
    history: &HistorySpec,
) -> Result<Trajectory>
where
    R: SystemRhs + ?Sized,
{
    let h = grid.h();
    let k = grid.k();
    let (k1, k2) = (grid.k1(), grid.k2());
    let steps = grid.steps();
    let a = alpha.value();

    let mut values = Vec::with_capacity(k + steps + 1);
    for j in 0..=k {
        let t = (j as f64 - k as f64) * h;
        let x = history.eval(t);
        if !x.is_finite() {
            return Err(Error::NonFiniteHistory { t });
        }
        values.push(x);
    }
    let phi0 = values[k];

    // Interior weight for lag m = n − j + 1 is stored at reversed[N − 1 − m],
    // so step n reads the contiguous slice reversed[N−1−n .. N−1] alongside f[1..=n].
    let reversed: Vec<f64> = (1..steps).rev().map(|m| interior_weight(a, m)).collect();
    let scale = h.powf(a) / gamma_pos(a + 2.0);

    // values[i] holds x_{i−k}; f[j] = g(x_{j−k1}, x_{j−k2}).
    let lagged = |values: &[f64], j: usize| rhs.eval(values[j + k - k1], values[j + k - k2]);
    let mut f = Vec::with_capacity(steps + 1);
    f.push(lagged(&values, 0));

    let mut truncated_at = None;
    for n in 0..steps {
        debug_assert!(n + 1 + k - k1 < values.len() && n + 1 + k - k2 < values.len());
        f.push(lagged(&values, n + 1));

        let acc = first_weight(a, n) * f[0]
            + dot(&f[1..=n], &reversed[steps - 1 - n..steps - 1])
            + f[n + 1];
        let x = phi0 + scale * acc;
        if !x.is_finite() {
            truncated_at = Some(n + 1);
            break;
        }
        values.push(x);
    }

    Ok(Trajectory {
        h,
        history_len: k,
        values,
        truncated_at,
    })
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = [0.0; 4];
    let xs = x.chunks_exact(4);
    let ys = y.chunks_exact(4);
    let tail: f64 = xs
        .remainder()
        .iter()
        .zip(ys.remainder())
        .map(|(a, b)| a * b)
        .sum();
    for (a, b) in xs.zip(ys) {
        for i in 0..4 {
            acc[i] += a[i] * b[i];
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}
