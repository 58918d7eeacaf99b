//! Closed-form double transforms of the stopped cost and numerical checks
//! of the uniform Tauberian hypotheses they satisfy.
//!
//! The double transform couples the spatial variable `s` with the Laplace
//! pair `λ` of the threshold:
//!
//! ```text
//! Ĝ(λ, s) = (1/sλ) · (1 - p̂_Y(s)) / (1 - p̂(λ, s)),
//! ```
//!
//! specialized per coupling. The asymptotic regime of interest is the
//! corner λ, s → 0 along a coupled scaling `s ≤ θ s_λ`, which is exactly
//! the regime of catastrophic cancellation in `1 - p̂`; everything here is
//! therefore built from [`TailLaw::one_minus_laplace`] directly rather than
//! from subtractions of transforms.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::process::{CouplingKind, CouplingModel};
use crate::sampling::TailLaw;
use crate::special;

#[derive(Debug, Clone, PartialEq)]
pub enum TransformError {
    /// Both λ and s so small that the denominator underflows.
    DenominatorUnderflow { lambda: f64, s: f64 },
    Unsupported(&'static str),
    Domain(&'static str),
    /// Normalizer or transform overflowed at this grid point.
    NonFinite { lambda: f64, s: f64 },
    EmptyWindow,
}

impl core::fmt::Display for TransformError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TransformError::DenominatorUnderflow { lambda, s } => {
                write!(f, "transform denominator underflow at lambda={lambda}, s={s}")
            }
            TransformError::Unsupported(m) => write!(f, "unsupported model: {m}"),
            TransformError::Domain(m) => write!(f, "domain error: {m}"),
            TransformError::NonFinite { lambda, s } => {
                write!(f, "non-finite value at lambda={lambda}, s={s}")
            }
            TransformError::EmptyWindow => write!(f, "empty transform window (s_lo >= s_hi)"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for TransformError {}

/// Double transform of the stopped cost, `∬ e^{-λt - sx} P(C_{τ(t)} > x)`.
/// Positive, bounded by `1/(sλ)`, decreasing in both arguments.
pub fn double_transform(
    model: &CouplingModel,
    lambda: f64,
    s: f64,
) -> Result<f64, TransformError> {
    if !(lambda > 0.0) || !(s > 0.0) {
        return Err(TransformError::Domain("lambda and s must be positive"));
    }
    let (num, den) = match model.kind() {
        CouplingKind::Independent { x_law, y_law } => {
            let mx = x_law.one_minus_laplace(lambda);
            let my = y_law.one_minus_laplace(s);
            // 1 - p̂_X(λ) p̂_Y(s) = mx + my - mx·my
            (my, mx + my - mx * my)
        }
        CouplingKind::Identical { x_law } => {
            (x_law.one_minus_laplace(s), x_law.one_minus_laplace(s + lambda))
        }
        CouplingKind::Additive { x_law, w_law } => {
            let mw = w_law.one_minus_laplace(s);
            let mxs = x_law.one_minus_laplace(s);
            let mxl = x_law.one_minus_laplace(s + lambda);
            (mw + mxs - mw * mxs, mw + mxl - mw * mxl)
        }
        CouplingKind::AbsValue { .. } => {
            return Err(TransformError::Unsupported(
                "absolute-value coupling has no stopped-cost double transform",
            ))
        }
    };
    let scale = s * lambda * den;
    if !(scale > 1e-300) {
        return Err(TransformError::DenominatorUnderflow { lambda, s });
    }
    Ok(num / scale)
}

/// Double transform of the counting-process cost `C_{N(t)}` (the stopped
/// cost minus the crossing increment), for independent couplings. Computed
/// through the generating-function route
/// `((1 - p̂_X(λ))/λ) · Ĝ_series(p̂_X(λ), s)`, which is an independent
/// algebraic path from `p̂_X(λ) · Ĝ(λ, s)`.
pub fn counting_transform(
    model: &CouplingModel,
    lambda: f64,
    s: f64,
) -> Result<f64, TransformError> {
    let (x_law, y_law) = match model.kind() {
        CouplingKind::Independent { x_law, y_law } => (x_law, y_law),
        _ => {
            return Err(TransformError::Unsupported(
                "counting transform requires the independent coupling",
            ))
        }
    };
    if !(lambda > 0.0) || !(s > 0.0) {
        return Err(TransformError::Domain("lambda and s must be positive"));
    }
    let mx = x_law.one_minus_laplace(lambda);
    Ok(mx / lambda * generating_iid_sums(1.0 - mx, s, y_law))
}

/// Generating transform of plain i.i.d. partial sums:
/// `Σ_n z^n (1 - p̂_Y(s)^n)/s = z (1-p̂_Y) / (s (1-z) (1 - z p̂_Y))`.
pub fn generating_iid_sums(z: f64, s: f64, y_law: &TailLaw) -> f64 {
    debug_assert!((0.0..1.0).contains(&z) && s > 0.0);
    let my = y_law.one_minus_laplace(s);
    let omz = 1.0 - z;
    z * my / (s * omz * (omz + z * my))
}

/// Generating transform of the conditioned-walk joint tail,
/// `(1/s) [ (1-z)^{-1/2} - (1 - z p̂_Y(s))^{-1/2} ]`,
/// where Y = |X| is the cost law of the walk.
pub fn generating_transform_conditioned(z: f64, s: f64, y_law: &TailLaw) -> f64 {
    debug_assert!((0.0..1.0).contains(&z) && s > 0.0);
    let my = y_law.one_minus_laplace(s);
    let omz = 1.0 - z;
    (1.0 / omz.sqrt() - 1.0 / (omz + z * my).sqrt()) / s
}

/// Empirical Laplace transform of a sample: `(mean of e^{-s·x}, standard
/// error of that mean)`.
pub fn empirical_laplace(samples: &[f64], s: f64) -> (f64, f64) {
    assert!(!samples.is_empty());
    if s == 0.0 {
        return (1.0, 0.0);
    }
    let n = samples.len() as f64;
    let mut sum = 0.0;
    for &x in samples {
        sum += (-s * x).exp();
    }
    let mean = sum / n;
    // two-pass variance: exact zero for constant samples
    let mut ss = 0.0;
    for &x in samples {
        let d = (-s * x).exp() - mean;
        ss += d * d;
    }
    let var = ss / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}

/// Parameters of a uniform Tauberian hypothesis check: the normalizer is
/// `L · λ^{-γ} · s^{-α} · ℓ` and the s-window at each λ is
/// `(0, θ λ^{s_exponent}]`, sampled log-uniformly over six decades.
#[derive(Debug, Clone, Copy)]
pub struct HypothesisParams {
    pub alpha: f64,
    pub gamma: f64,
    /// Constant playing the slowly varying ℓ(1/s).
    pub ell_const: f64,
    /// Constant playing L(1/λ).
    pub l_const: f64,
    /// Scaling rule s_λ = λ^{s_exponent}.
    pub s_exponent: f64,
    /// Window multiplier θ; the hypothesis holds for every θ > 0.
    pub theta: f64,
}

impl HypothesisParams {
    pub fn s_lambda(&self, lambda: f64) -> f64 {
        self.theta * lambda.powf(self.s_exponent)
    }
}

/// One λ of a hypothesis check: the sup over the s-window of the absolute
/// deviation of transform/normalizer from one, and where it was attained.
#[derive(Debug, Clone, Copy)]
pub struct HypothesisRow {
    pub lambda: f64,
    pub s_points: usize,
    pub sup_deviation: f64,
    pub argmax_s: f64,
}

/// Evaluate the normalized deviation over a decreasing λ grid.
pub fn check_hypothesis<F>(
    transform: F,
    params: &HypothesisParams,
    lambda_grid: &[f64],
    s_points: usize,
) -> Result<Vec<HypothesisRow>, TransformError>
where
    F: Fn(f64, f64) -> Result<f64, TransformError>,
{
    if lambda_grid.is_empty() || s_points < 2 {
        return Err(TransformError::Domain("need a lambda grid and at least two s points"));
    }
    if lambda_grid.windows(2).any(|w| w[0] <= w[1]) || lambda_grid.iter().any(|&l| l <= 0.0) {
        return Err(TransformError::Domain("lambda grid must be positive and strictly decreasing"));
    }
    let mut rows = Vec::with_capacity(lambda_grid.len());
    for &lambda in lambda_grid {
        let s_hi = params.s_lambda(lambda);
        let s_lo = s_hi * 1e-6;
        let log_lo = s_lo.ln();
        let log_hi = s_hi.ln();
        let mut sup = 0.0;
        let mut argmax = s_lo;
        for i in 0..s_points {
            let frac = i as f64 / (s_points - 1) as f64;
            let s = (log_lo + frac * (log_hi - log_lo)).exp();
            let normalizer =
                params.l_const * lambda.powf(-params.gamma) * s.powf(-params.alpha) * params.ell_const;
            if !normalizer.is_finite() || normalizer <= 0.0 {
                return Err(TransformError::NonFinite { lambda, s });
            }
            let value = transform(lambda, s)?;
            let dev = (value / normalizer - 1.0).abs();
            if !dev.is_finite() {
                return Err(TransformError::NonFinite { lambda, s });
            }
            if dev > sup {
                sup = dev;
                argmax = s;
            }
        }
        rows.push(HypothesisRow { lambda, s_points, sup_deviation: sup, argmax_s: argmax });
    }
    Ok(rows)
}

/// PASS iff the sup-deviation is strictly decreasing over the last three
/// λ values and the final one is below `tolerance`. A limit statement needs
/// a finite certificate; this is the convention used throughout.
pub fn hypothesis_verdict(rows: &[HypothesisRow], tolerance: f64) -> bool {
    if rows.len() < 3 {
        return false;
    }
    let tail = &rows[rows.len() - 3..];
    tail.windows(2).all(|w| w[1].sup_deviation < w[0].sup_deviation)
        && tail[2].sup_deviation < tolerance
}

/// Ready-made hypothesis targets with their canonical `(α, γ, ℓ, L)`.
#[derive(Debug, Clone)]
pub enum HypothesisTarget {
    /// Leapover of the identical coupling with Mittag-Leffler increments:
    /// α = 1-β, γ = 1+β.
    LeapoverMittagLeffler { beta: f64 },
    /// Stopped cost with independent control: α = 1-β, γ = 1+γ_X.
    RandomSum { x_law: TailLaw, y_law: TailLaw, gamma_x: f64, c_x: f64 },
    /// I.i.d. sums through the generating function at z = 1-λ (degenerate
    /// unit control): α = 1-β, γ = 2.
    IidSums { y_law: TailLaw },
    /// Conditioned-walk generating transform at z = 1-λ: α = 1-β, γ = 3/2.
    Conditioned { x_law: TailLaw },
}

impl HypothesisTarget {
    /// Canonical parameters, with the scaling exponent and θ supplied by
    /// the experiment.
    pub fn params(&self, s_exponent: f64, theta: f64) -> HypothesisParams {
        match self {
            HypothesisTarget::LeapoverMittagLeffler { beta } => HypothesisParams {
                alpha: 1.0 - beta,
                gamma: 1.0 + beta,
                ell_const: 1.0,
                l_const: 1.0,
                s_exponent,
                theta,
            },
            HypothesisTarget::RandomSum { y_law, gamma_x, c_x, .. } => {
                let ts = y_law.tail_scale().expect("heavy-tailed cost law");
                HypothesisParams {
                    alpha: 1.0 - ts.beta,
                    gamma: 1.0 + gamma_x,
                    ell_const: ts.ell,
                    l_const: 1.0 / c_x,
                    s_exponent,
                    theta,
                }
            }
            HypothesisTarget::IidSums { y_law } => {
                let ts = y_law.tail_scale().expect("heavy-tailed cost law");
                HypothesisParams {
                    alpha: 1.0 - ts.beta,
                    gamma: 2.0,
                    ell_const: ts.ell,
                    l_const: 1.0,
                    s_exponent,
                    theta,
                }
            }
            HypothesisTarget::Conditioned { x_law } => {
                let ts = x_law.tail_scale().expect("heavy-tailed symmetric law");
                // one-sided scale of the symmetric law is already ℓ/2
                HypothesisParams {
                    alpha: 1.0 - ts.beta,
                    gamma: 1.5,
                    ell_const: ts.ell,
                    l_const: 1.0,
                    s_exponent,
                    theta,
                }
            }
        }
    }

    /// The transform under test; discrete families enter at z = 1 - λ.
    pub fn evaluate(&self, lambda: f64, s: f64) -> Result<f64, TransformError> {
        match self {
            HypothesisTarget::LeapoverMittagLeffler { beta } => {
                let ml = TailLaw::mittag_leffler(*beta)
                    .map_err(|_| TransformError::Domain("beta in (0,1)"))?;
                let model = CouplingModel::identical(ml)
                    .map_err(|_| TransformError::Domain("identical model"))?;
                double_transform(&model, lambda, s)
            }
            HypothesisTarget::RandomSum { x_law, y_law, .. } => {
                let model = CouplingModel::independent(x_law.clone(), y_law.clone())
                    .map_err(|_| TransformError::Domain("independent model"))?;
                double_transform(&model, lambda, s)
            }
            HypothesisTarget::IidSums { y_law } => {
                if !(lambda < 1.0) {
                    return Err(TransformError::Domain("lambda below one for z = 1 - lambda"));
                }
                Ok(generating_iid_sums(1.0 - lambda, s, y_law))
            }
            HypothesisTarget::Conditioned { x_law } => {
                if !(lambda < 1.0) {
                    return Err(TransformError::Domain("lambda below one for z = 1 - lambda"));
                }
                Ok(generating_transform_conditioned(1.0 - lambda, s, &x_law.abs_law()))
            }
        }
    }
}

/// One t of the two-sided shrinking-window check for the truncated-Pareto
/// family: the sup over `s ∈ [θ t^{a*}, θ t^{a}]` of the deviation of
/// `c_t Ĝ_t(s) / (Γ(1-β) s^{β-1})` from one.
#[derive(Debug, Clone, Copy)]
pub struct WindowRow {
    pub t: f64,
    pub s_lo: f64,
    pub s_hi: f64,
    pub sup_deviation: f64,
    pub argmax_s: f64,
}

/// Two-sided window check over a growing truncation grid. The default
/// exponents are `s*_t = t^{-1/2}` and `s_t = t^{-1/4}`, a window that
/// shrinks to zero while staying far above the analyticity scale 1/t.
pub fn check_window_hypothesis(
    beta: f64,
    t_grid: &[f64],
    s_star_exponent: f64,
    s_exponent: f64,
    theta: f64,
    s_points: usize,
) -> Result<Vec<WindowRow>, TransformError> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(TransformError::Domain("beta in (0,1)"));
    }
    if t_grid.is_empty() || s_points < 2 {
        return Err(TransformError::Domain("need a t grid and at least two s points"));
    }
    let norm_const = special::gamma(1.0 - beta);
    let mut rows = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        if !(t > 1.0) {
            return Err(TransformError::Domain("truncation must exceed one"));
        }
        let s_lo = theta * t.powf(s_star_exponent);
        let s_hi = theta * t.powf(s_exponent);
        if s_lo >= s_hi {
            return Err(TransformError::EmptyWindow);
        }
        let law = TailLaw::truncated_pareto(beta, t)
            .map_err(|_| TransformError::Domain("invalid truncated family member"))?;
        let c_t = 1.0 - t.powf(-beta);
        let (log_lo, log_hi) = (s_lo.ln(), s_hi.ln());
        let mut sup = 0.0;
        let mut argmax = s_lo;
        for i in 0..s_points {
            let frac = i as f64 / (s_points - 1) as f64;
            let s = (log_lo + frac * (log_hi - log_lo)).exp();
            // c_t Ĝ_t(s) / (Γ(1-β) s^{β-1}), Ĝ_t(s) = (1 - p̂_t(s))/s
            let value = c_t * law.one_minus_laplace(s) / (norm_const * s.powf(beta));
            let dev = (value - 1.0).abs();
            if !dev.is_finite() {
                return Err(TransformError::NonFinite { lambda: t, s });
            }
            if dev > sup {
                sup = dev;
                argmax = s;
            }
        }
        rows.push(WindowRow { t, s_lo, s_hi, sup_deviation: sup, argmax_s: argmax });
    }
    Ok(rows)
}

/// PASS iff the window deviation decreases along the t grid down to below
/// `tolerance` at the largest t.
pub fn window_verdict(rows: &[WindowRow], tolerance: f64) -> bool {
    rows.windows(2).all(|w| w[1].sup_deviation < w[0].sup_deviation)
        && rows.last().map(|r| r.sup_deviation < tolerance).unwrap_or(false)
}
