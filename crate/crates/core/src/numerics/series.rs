use super::{gamma_pos, FractionalOrder};
use crate::error::{Error, Result};

/// Default cap on the number of Mittag-Leffler series terms.
pub const DEFAULT_SERIES_CAP: usize = 10_000;

const ML_MAX_ABS_Z: f64 = 50.0;
const ML_TERM_TOL: f64 = 1e-14;

/// One-parameter Mittag-Leffler function `E_α(z) = Σ z^k / Γ(αk + 1)` for
/// real `|z| ≤ 50`, summed until a term drops below 1e-14 in magnitude.
///
/// The plain series cancels badly for large negative `z`; it is meant as a
/// reference for moderate arguments.
pub fn mittag_leffler(alpha: FractionalOrder, z: f64) -> Result<f64> {
    mittag_leffler_with_cap(alpha, z, DEFAULT_SERIES_CAP)
}

pub fn mittag_leffler_with_cap(alpha: FractionalOrder, z: f64, max_terms: usize) -> Result<f64> {
    if !(z.abs() <= ML_MAX_ABS_Z) {
        return Err(Error::Domain {
            function: "mittag_leffler",
            x: z,
        });
    }
    let alpha = alpha.value();
    let mut sum = Neumaier::default();
    for k in 0..max_terms {
        let term = if k == 0 {
            1.0
        } else {
            z.powi(k as i32) / gamma_pos(alpha * k as f64 + 1.0)
        };
        if !term.is_finite() {
            return Err(Error::Overflow { index: k });
        }
        sum.add(term);
        if term.abs() < ML_TERM_TOL {
            return Ok(sum.total());
        }
    }
    Err(Error::NonConvergence { terms: max_terms })
}

/// Exact solution of `D^α x(t) = a·x(t − τ)` with history `φ ≡ 1`.
///
/// Repeated application of `I^μ t^ν = Γ(ν+1)/Γ(μ+ν+1) t^(μ+ν)` over the
/// method-of-steps intervals gives
///
/// ```text
/// x(t) = Σ_{k≥0} a^k · max(t − (k−1)τ, 0)^(kα) / Γ(kα + 1)
/// ```
///
/// where the `k = 0` term is `max(t + τ, 0)^0 = 1`, the constant history.
/// Only terms with `(k−1)τ < t` are non-zero, so the sum is finite.
pub fn delayed_series_oracle(alpha: FractionalOrder, a: f64, tau: f64, t: f64) -> f64 {
    debug_assert!(tau > 0.0 && t >= 0.0);
    let alpha = alpha.value();
    let mut sum = Neumaier::default();
    sum.add(1.0);
    let mut k = 1usize;
    while ((k - 1) as f64) * tau < t {
        let kf = k as f64;
        let base = t - (kf - 1.0) * tau;
        sum.add(a.powi(k as i32) * base.powf(kf * alpha) / gamma_pos(kf * alpha + 1.0));
        k += 1;
    }
    sum.total()
}

/// Neumaier's compensated summation.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
