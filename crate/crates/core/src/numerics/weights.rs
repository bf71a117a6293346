use super::FractionalOrder;

/// Row `n` of the product-trapezoidal weight table: `a_{j,n+1}` for
/// `j = 0..=n+1`, the coefficients of `f_j` when the fractional integral is
/// evaluated at `t_{n+1}` with a piecewise-linear integrand.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightRow {
    pub n: usize,
    pub weights: Vec<f64>,
}

impl WeightRow {
    pub fn sum(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Weights `a_{j,n+1}`:
///
/// ```text
/// j = 0        : n^(α+1) − (n − α)(n + 1)^α
/// 1 ≤ j ≤ n    : (n−j+2)^(α+1) + (n−j)^(α+1) − 2(n−j+1)^(α+1)
/// j = n + 1    : 1
/// ```
pub fn trapezoid_weights(alpha: FractionalOrder, n: usize) -> WeightRow {
    let mut weights = Vec::with_capacity(n + 2);
    weights.push(first_weight(alpha.value(), n));
    weights.extend((1..=n).map(|j| interior_weight(alpha.value(), n - j + 1)));
    weights.push(1.0);
    WeightRow { n, weights }
}

pub(crate) fn first_weight(alpha: f64, n: usize) -> f64 {
    let n = n as f64;
    n.powf(alpha + 1.0) - (n - alpha) * (n + 1.0).powf(alpha)
}

// Below this lag the direct second difference loses fewer than ~3 digits.
const SERIES_FROM: usize = 4;

/// Second difference `(m+1)^p + (m−1)^p − 2 m^p` of `p = α + 1`, for `m ≥ 1`.
///
/// Taken directly, the three terms are of size `m^p` while the result is of
/// size `p(p−1) m^(p−2)`, so about `2 log10(m)` digits cancel. For `m ≥ 4`
/// the binomial expansion in `x = 1/m` is summed instead:
///
/// ```text
/// 2 m^(p−2) · Σ_{k≥1} C(p, 2k) x^(2k−2)
/// ```
///
/// which has only positive leading terms and converges like `x²`. For α = 1
/// every coefficient past the first vanishes and the value is exactly 2.
pub(crate) fn interior_weight(alpha: f64, m: usize) -> f64 {
    debug_assert!(m >= 1);
    let p = alpha + 1.0;
    if m < SERIES_FROM {
        let m = m as f64;
        return (m + 1.0).powf(p) + (m - 1.0).powf(p) - 2.0 * m.powf(p);
    }
    let mf = m as f64;
    let x2 = 1.0 / (mf * mf);
    // C(p, 2) and then C(p, 2k+2) = C(p, 2k)(p−2k)(p−2k−1)/((2k+1)(2k+2)).
    let mut coef = 0.5 * p * (p - 1.0);
    let mut sum = coef;
    let mut xpow = 1.0;
    for k in 1..64 {
        let kk = 2.0 * k as f64;
        coef *= (p - kk) * (p - kk - 1.0) / ((kk + 1.0) * (kk + 2.0));
        xpow *= x2;
        let term = coef * xpow;
        sum += term;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    2.0 * mf.powf(alpha - 1.0) * sum
}
