use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI};

use super::{stable_at_zero_delay, LinearCoefficients, StabilityVerdict};
use crate::error::{Error, Result};
use crate::numerics::FractionalOrder;
use crate::solver::DelayPair;

/// Curve points must satisfy both real critical equations to this accuracy.
pub const RESIDUAL_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_BRANCH: u32 = 8;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const DEFAULT_V_MIN: f64 = 1e-6;

// Roundoff slack for arccos arguments at the ends of the valid v-interval.
const ACOS_SLACK: f64 = 1e-12;

/// Which inverse-cosine solution produced a curve point:
/// `v·τ_i + απ/2 = sign_i · arccos(A_i) + 2π·m_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    pub sign1: i8,
    pub m1: u32,
    pub sign2: i8,
    pub m2: u32,
}

impl Branch {
    pub fn swapped(self) -> Self {
        Branch {
            sign1: self.sign2,
            m1: self.m2,
            sign2: self.sign1,
            m2: self.m1,
        }
    }
}

/// A delay pair at which `λ = iv` solves the characteristic equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalCurvePoint {
    pub v: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub branch: Branch,
    /// Larger absolute residual of the real and imaginary critical equations.
    pub residual: f64,
}

/// Sampling window and branch cap for the critical curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSearch {
    pub v_min: f64,
    pub v_max: f64,
    pub samples: usize,
    pub max_branch: u32,
}

impl CurveSearch {
    /// `v ∈ [1e-6, 4 (|a| + |b|)^{1/α}]`, 10 000 samples, branches up to 8.
    ///
    /// On the imaginary axis `|λ^α| = v^α ≤ |a| + |b|`, so the window holds
    /// every crossing with room to spare.
    pub fn default_for(alpha: FractionalOrder, coef: LinearCoefficients) -> Self {
        CurveSearch {
            v_min: DEFAULT_V_MIN,
            v_max: 4.0 * (coef.a.abs() + coef.b.abs()).powf(1.0 / alpha.value()),
            samples: DEFAULT_SAMPLES,
            max_branch: DEFAULT_MAX_BRANCH,
        }
    }

    pub fn with_samples(self, samples: usize) -> Self {
        CurveSearch { samples, ..self }
    }

    fn validate(&self) -> Result<()> {
        if !(self.v_min > 0.0) || !self.v_max.is_finite() || self.v_max < self.v_min {
            return Err(Error::invalid(
                "v_range",
                format!(
                    "need 0 < v_min <= v_max < inf, got [{}, {}]",
                    self.v_min, self.v_max
                ),
            ));
        }
        if self.samples == 0 {
            return Err(Error::invalid("samples", "at least one sample is required"));
        }
        Ok(())
    }
}

/// The curve equations at one frequency, with everything that does not
/// depend on the branch precomputed.
struct Frequency {
    v: f64,
    /// `v^α`
    w: f64,
    acos1: f64,
    acos2: f64,
}

struct Curves {
    alpha: f64,
    a: f64,
    b: f64,
    max_branch: u32,
}

impl Curves {
    fn new(alpha: FractionalOrder, coef: LinearCoefficients, max_branch: u32) -> Result<Self> {
        coef.require_two_delays()?;
        Ok(Curves {
            alpha: alpha.value(),
            a: coef.a,
            b: coef.b,
            max_branch,
        })
    }

    /// `cos(v τ1 + απ/2) = (v^{2α} + a² − b²) / (2 a v^α)`; the τ2 argument is
    /// the same expression with `a` and `b` exchanged.
    fn cos_argument(w: f64, p: f64, q: f64) -> Option<f64> {
        let c = (w * w + (p * p - q * q)) / (2.0 * p * w);
        if c.abs() <= 1.0 {
            Some(c)
        } else if c.abs() <= 1.0 + ACOS_SLACK {
            Some(c.signum())
        } else {
            None
        }
    }

    fn at(&self, v: f64) -> Option<Frequency> {
        let w = v.powf(self.alpha);
        let c1 = Self::cos_argument(w, self.a, self.b)?;
        let c2 = Self::cos_argument(w, self.b, self.a)?;
        Some(Frequency {
            v,
            w,
            acos1: c1.acos(),
            acos2: c2.acos(),
        })
    }

    /// Ends of the interval where both arguments lie in [−1, 1]:
    /// `||a| − |b|| ≤ v^α ≤ |a| + |b|`.
    fn valid_interval(&self) -> (f64, f64) {
        let inv = 1.0 / self.alpha;
        (
            (self.a.abs() - self.b.abs()).abs().powf(inv),
            (self.a.abs() + self.b.abs()).powf(inv),
        )
    }

    fn tau(&self, f: &Frequency, acos: f64, sign: i8, m: u32) -> f64 {
        (f64::from(sign) * acos + 2.0 * PI * f64::from(m) - self.alpha * FRAC_PI_2) / f.v
    }

    /// Residuals `(re, im)` of the unsquared equations
    /// `v^α cos(απ/2) − a cos(vτ1) = b cos(vτ2)` and
    /// `v^α sin(απ/2) + a sin(vτ1) = −b sin(vτ2)`.
    fn residual(&self, f: &Frequency, tau1: f64, tau2: f64) -> (f64, f64) {
        let (s, c) = (self.alpha * FRAC_PI_2).sin_cos();
        let (s1, c1) = (f.v * tau1).sin_cos();
        let (s2, c2) = (f.v * tau2).sin_cos();
        let re = f.w * c - self.a * c1 - self.b * c2;
        let im = f.w * s + self.a * s1 + self.b * s2;
        (re, im)
    }

    fn branches(&self) -> impl Iterator<Item = (i8, u32)> {
        let max = self.max_branch;
        [1i8, -1]
            .into_iter()
            .flat_map(move |s| (0..=max).map(move |m| (s, m)))
    }

    /// Every residual-validated completion of a fixed `(sign1, m1, τ1)`.
    fn complete(
        &self,
        f: &Frequency,
        sign1: i8,
        m1: u32,
        tau1: f64,
        out: &mut Vec<CriticalCurvePoint>,
    ) {
        for (sign2, m2) in self.branches() {
            let tau2 = self.tau(f, f.acos2, sign2, m2);
            if tau2 < 0.0 {
                continue;
            }
            let (re, im) = self.residual(f, tau1, tau2);
            // |re + i·im| bounds both equations and the characteristic residual at λ = iv.
            if re.hypot(im) <= RESIDUAL_TOLERANCE {
                out.push(CriticalCurvePoint {
                    v: f.v,
                    tau1,
                    tau2,
                    branch: Branch {
                        sign1,
                        m1,
                        sign2,
                        m2,
                    },
                    residual: re.abs().max(im.abs()),
                });
            }
        }
    }

    /// Uniform samples over the window, plus the ends of the valid interval
    /// when they fall inside it.
    fn sample_points(&self, search: &CurveSearch) -> Vec<f64> {
        let n = search.samples;
        let mut vs: Vec<f64> = if n == 1 {
            vec![search.v_min]
        } else {
            let step = (search.v_max - search.v_min) / (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i + 1 == n {
                        search.v_max
                    } else {
                        search.v_min + i as f64 * step
                    }
                })
                .collect()
        };
        let (lo, hi) = self.valid_interval();
        for edge in [lo, hi] {
            if edge >= search.v_min && edge <= search.v_max {
                vs.push(edge);
            }
        }
        vs.sort_by(f64::total_cmp);
        vs.dedup();
        vs
    }
}

/// Cosine arguments `((v^{2α} + a² − b²)/(2a v^α), (v^{2α} − a² + b²)/(2b v^α))`,
/// unclamped.
pub fn cosine_arguments(
    alpha: FractionalOrder,
    coef: LinearCoefficients,
    v: f64,
) -> Result<(f64, f64)> {
    coef.require_two_delays()?;
    let w = v.powf(alpha.value());
    let arg = |p: f64, q: f64| (w * w + (p * p - q * q)) / (2.0 * p * w);
    Ok((arg(coef.a, coef.b), arg(coef.b, coef.a)))
}

/// `(τ1, τ2)` of one branch at frequency `v`, before the sign and residual
/// filters; `None` where either cosine argument leaves [−1, 1].
pub fn curve_delays(
    alpha: FractionalOrder,
    coef: LinearCoefficients,
    v: f64,
    branch: Branch,
) -> Result<Option<(f64, f64)>> {
    let curves = Curves::new(alpha, coef, branch.m1.max(branch.m2))?;
    Ok(curves.at(v).map(|f| {
        (
            curves.tau(&f, f.acos1, branch.sign1, branch.m1),
            curves.tau(&f, f.acos2, branch.sign2, branch.m2),
        )
    }))
}

fn curve_order(p: &CriticalCurvePoint, q: &CriticalCurvePoint) -> Ordering {
    (p.branch.m1, p.branch.sign1)
        .cmp(&(q.branch.m1, q.branch.sign1))
        .then(p.v.total_cmp(&q.v))
        .then((p.branch.sign2, p.branch.m2).cmp(&(q.branch.sign2, q.branch.m2)))
}

/// Sample the critical curves
///
/// ```text
/// τ1 = (±arccos[(v^{2α} + a² − b²)/(2a v^α)] + 2πm1 − απ/2) / v
/// τ2 = (±arccos[(v^{2α} − a² + b²)/(2b v^α)] + 2πm2 − απ/2) / v
/// ```
///
/// over the window, for `m1, m2 ≤ max_branch` and both signs. The two
/// formulas come from squaring the real and imaginary parts of
/// `(iv)^α = a e^{−ivτ1} + b e^{−ivτ2}`, which admits sign combinations that do
/// not solve the original pair; each candidate is substituted back and kept
/// only if both residuals are at most 1e-9 and both delays are non-negative.
///
/// Points are ordered by `(m1, sign1, v)`.
pub fn critical_curve(
    alpha: FractionalOrder,
    coef: LinearCoefficients,
    search: &CurveSearch,
) -> Result<Vec<CriticalCurvePoint>> {
    search.validate()?;
    let curves = Curves::new(alpha, coef, search.max_branch)?;
    let mut out = Vec::new();
    for v in curves.sample_points(search) {
        let Some(f) = curves.at(v) else { continue };
        for (sign1, m1) in curves.branches() {
            let tau1 = curves.tau(&f, f.acos1, sign1, m1);
            if tau1 >= 0.0 {
                curves.complete(&f, sign1, m1, tau1, &mut out);
            }
        }
    }
    out.sort_by(curve_order);
    Ok(out)
}

/// All validated curve points with `τ1 = tau1_query`.
///
/// For each `(sign1, m1)` the function `v ↦ τ1(v) − tau1_query` is scanned
/// over the valid part of the window and every sign change is bisected; each
/// root is then completed with every `(sign2, m2)` that passes the residual
/// check. Ordered by `τ2`.
pub fn critical_crossings(
    alpha: FractionalOrder,
    coef: LinearCoefficients,
    tau1_query: f64,
    search: &CurveSearch,
) -> Result<Vec<CriticalCurvePoint>> {
    search.validate()?;
    if !(tau1_query >= 0.0) || !tau1_query.is_finite() {
        return Err(Error::invalid(
            "tau1",
            format!("must be finite and >= 0, got {tau1_query}"),
        ));
    }
    let curves = Curves::new(alpha, coef, search.max_branch)?;
    let valid: Vec<Frequency> = curves
        .sample_points(search)
        .into_iter()
        .filter_map(|v| curves.at(v))
        .collect();

    let mut out = Vec::new();
    for (sign1, m1) in curves.branches() {
        let offset = |f: &Frequency| curves.tau(f, f.acos1, sign1, m1) - tau1_query;
        let mut roots = Vec::new();
        for (i, f) in valid.iter().enumerate() {
            let d = offset(f);
            if d == 0.0 {
                roots.push(f.v);
                continue;
            }
            let Some(next) = valid.get(i + 1) else { break };
            let d_next = offset(next);
            if d_next != 0.0 && (d < 0.0) != (d_next < 0.0) {
                if let Some(v) = bisect_frequency(&curves, &offset, f.v, next.v, d) {
                    roots.push(v);
                }
            }
        }
        for v in roots {
            let Some(f) = curves.at(v) else { continue };
            let tau1 = curves.tau(&f, f.acos1, sign1, m1);
            curves.complete(&f, sign1, m1, tau1, &mut out);
        }
    }
    out.sort_by(|p, q| p.tau2.total_cmp(&q.tau2).then(curve_order(p, q)));
    Ok(out)
}

fn bisect_frequency(
    curves: &Curves,
    offset: &impl Fn(&Frequency) -> f64,
    mut lo: f64,
    mut hi: f64,
    mut d_lo: f64,
) -> Option<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        // The valid interval is connected, so interior points stay valid.
        let d = offset(&curves.at(mid)?);
        if d == 0.0 {
            return Some(mid);
        }
        if (d < 0.0) == (d_lo < 0.0) {
            lo = mid;
            d_lo = d;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Smallest `τ2` on any validated branch at `τ1 = tau1_query`, or `None` when
/// no branch reaches that `τ1` inside the window.
pub fn critical_tau2_for_tau1(
    alpha: FractionalOrder,
    coef: LinearCoefficients,
    tau1_query: f64,
    search: &CurveSearch,
) -> Result<Option<f64>> {
    Ok(critical_crossings(alpha, coef, tau1_query, search)?
        .first()
        .map(|p| p.tau2))
}

/// Verdict for one delay pair together with the boundary it was compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub verdict: StabilityVerdict,
    /// Critical `τ2` above the queried `τ1`, when one was found.
    pub critical_tau2: Option<f64>,
}

/// Locate `(τ1, τ2)` relative to the critical curves.
///
/// The region bounded by the `τ1` axis and the lowest critical curve is
/// stable when the delay-free system is. Membership is decided along the
/// vertical line through `τ1`: the boundary height is
/// [`critical_tau2_for_tau1`], and points within `tolerance` of it are
/// [`StabilityVerdict::OnBoundary`].
///
/// If no branch reaches `τ1` inside the window, the point is stable only when
/// it lies below every sampled curve point.
///
/// When `a + b > 0`, `λ^α = a e^{−λτ1} + b e^{−λτ2}` has a positive real root
/// for every delay pair, so the verdict is `Unstable` without a curve search.
pub fn classify(
    alpha: FractionalOrder,
    coef: LinearCoefficients,
    delays: DelayPair,
    tolerance: f64,
    search: &CurveSearch,
) -> Result<Classification> {
    let at_zero = stable_at_zero_delay(coef);
    if delays.is_zero() {
        return Ok(Classification {
            verdict: at_zero,
            critical_tau2: None,
        });
    }
    coef.require_two_delays()?;
    match at_zero {
        StabilityVerdict::UnstableAtZeroDelays => {
            return Ok(Classification {
                verdict: StabilityVerdict::Unstable,
                critical_tau2: None,
            })
        }
        StabilityVerdict::OnBoundary => {
            return Ok(Classification {
                verdict: StabilityVerdict::OnBoundary,
                critical_tau2: None,
            })
        }
        _ => {}
    }

    let tau2 = delays.tau2();
    let compare = |boundary: f64| {
        if (tau2 - boundary).abs() <= tolerance {
            StabilityVerdict::OnBoundary
        } else if tau2 < boundary {
            StabilityVerdict::Stable
        } else {
            StabilityVerdict::Unstable
        }
    };

    match critical_tau2_for_tau1(alpha, coef, delays.tau1(), search)? {
        Some(c) => Ok(Classification {
            verdict: compare(c),
            critical_tau2: Some(c),
        }),
        None => {
            let lowest = critical_curve(alpha, coef, search)?
                .iter()
                .map(|p| p.tau2)
                .fold(f64::INFINITY, f64::min);
            Ok(Classification {
                verdict: compare(lowest),
                critical_tau2: None,
            })
        }
    }
}
