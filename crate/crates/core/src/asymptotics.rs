//! Precise large-deviation prediction formulas.
//!
//! Each model family gets a constructor returning an [`LDPrediction`]: a
//! pure power law in the spatial variable with an explicit gamma-factor
//! prefactor, bound to a fixed time parameter `t` (or step count `n`), plus
//! a machine-checkable validity descriptor for the large-deviation region.
//!
//! Slowly varying factors are instantiated as constants carried by
//! [`crate::sampling::TailScale`], so every formula here collapses to
//! `prefactor · x^{x_exponent}`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::special::gamma;

/// Which asymptotic family a prediction instance belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictionKind {
    /// Tail of a centered or positive i.i.d. sum of n heavy-tailed terms.
    IidSum,
    /// Cost stopped at the first passage of an independent control walk.
    RandomSum,
    /// Overshoot of a heavy-tailed walk over a level t, in the t → ∞ regime.
    Leapover,
    /// Overshoot at fixed t for Mittag-Leffler increments, x → ∞ regime.
    LeapoverFixedT,
    /// Stopped cost with a drift control plus heavy independent component.
    Gut,
    /// Joint tail of path length and positivity of a conditioned walk.
    Conditioned,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictError(pub &'static str);

impl core::fmt::Display for PredictError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "invalid prediction parameters: {}", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PredictError {}

/// One asymptotic tail formula, bound to a time parameter.
///
/// `evaluate(x) = prefactor · x^{x_exponent}` approximates the tail
/// probability; `validity_ratio(x)` is the quantity that must tend to zero
/// for the approximation to hold (for example `t/x` for the leapover).
#[derive(Debug, Clone, PartialEq)]
pub struct LDPrediction {
    pub kind: PredictionKind,
    /// The bound time parameter t, or the step count n.
    pub t_or_n: f64,
    pub prefactor: f64,
    /// Exponent of the time parameter inside the prefactor (documentary).
    pub t_exponent: f64,
    /// Spatial exponent, negative.
    pub x_exponent: f64,
    beta: f64,
    gamma_x: f64,
}

impl LDPrediction {
    pub fn evaluate(&self, x: f64) -> f64 {
        self.prefactor * x.powf(self.x_exponent)
    }

    /// The large-deviation gauge for this family at (t, x); the prediction
    /// is trustworthy when this is small.
    pub fn validity_ratio(&self, x: f64) -> f64 {
        let t = self.t_or_n;
        match self.kind {
            PredictionKind::IidSum | PredictionKind::Conditioned => t * x.powf(-self.beta),
            PredictionKind::RandomSum => t.powf(self.gamma_x) * x.powf(-self.beta),
            PredictionKind::Leapover | PredictionKind::LeapoverFixedT => t / x,
            PredictionKind::Gut => t / x.powf(self.beta),
        }
    }

    pub fn is_within_validity(&self, x: f64, gate: f64) -> bool {
        self.validity_ratio(x) < gate
    }

    /// The x at which `validity_ratio` equals `target`: the boundary of the
    /// large-deviation region at that resolution.
    pub fn ld_boundary(&self, target: f64) -> f64 {
        assert!(target > 0.0 && target < 1.0);
        let t = self.t_or_n;
        match self.kind {
            PredictionKind::IidSum | PredictionKind::Conditioned => (t / target).powf(1.0 / self.beta),
            PredictionKind::RandomSum => (t.powf(self.gamma_x) / target).powf(1.0 / self.beta),
            PredictionKind::Leapover | PredictionKind::LeapoverFixedT => t / target,
            PredictionKind::Gut => (t / target).powf(1.0 / self.beta),
        }
    }
}

fn check(cond: bool, msg: &'static str) -> Result<(), PredictError> {
    if cond {
        Ok(())
    } else {
        Err(PredictError(msg))
    }
}

/// Big-jump tail of an i.i.d. sum: `n ℓ x^{-β} / Γ(1-β)`, which equals
/// `n P(Y > x)` asymptotically. For β in (1, 2) the sum must be centered.
pub fn predict_iid(beta: f64, ell: f64, n: u64, centered: bool) -> Result<LDPrediction, PredictError> {
    check(beta > 0.0 && beta < 2.0 && beta != 1.0, "beta in (0,2) \\ {1}")?;
    check(n >= 1, "n >= 1")?;
    check(
        centered == (beta > 1.0),
        "center exactly when the mean is finite (beta > 1)",
    )?;
    Ok(LDPrediction {
        kind: PredictionKind::IidSum,
        t_or_n: n as f64,
        prefactor: n as f64 * ell / gamma(1.0 - beta),
        t_exponent: 1.0,
        x_exponent: -beta,
        beta,
        gamma_x: 1.0,
    })
}

/// Stopped cost with independent control: `t^γ ℓ_Y x^{-β} / (c_X Γ(γ+1) Γ(1-β))`.
///
/// γ and c_X describe the control transform, `1 - E[e^{-λX}] ~ c_X λ^γ`;
/// ℓ_Y is the cost tail scale. The constant is fixed by the degenerate
/// control case: for X ≡ 1 (γ = 1, c_X = 1) the formula must coincide with
/// [`predict_iid`] at n = t, and it does, since Γ(2) = 1. Equivalently it is
/// `E[τ(t)] P(Y > x)` with the renewal-theorem mean `t^γ / (c_X Γ(γ+1)) ·
/// Γ(1-β)/Γ(1-β)` spelled out.
pub fn predict_random_sum(
    beta: f64,
    ell_y: f64,
    gamma_x: f64,
    c_x: f64,
    t: f64,
) -> Result<LDPrediction, PredictError> {
    check(beta > 0.0 && beta < 1.0, "beta in (0,1)")?;
    check(gamma_x > 0.0 && gamma_x <= 1.0, "gamma in (0,1]")?;
    check(c_x > 0.0, "c_x > 0")?;
    check(t >= 0.0, "t >= 0")?;
    Ok(LDPrediction {
        kind: PredictionKind::RandomSum,
        t_or_n: t,
        prefactor: t.powf(gamma_x) * ell_y
            / (c_x * gamma(gamma_x + 1.0) * gamma(1.0 - beta)),
        t_exponent: gamma_x,
        x_exponent: -beta,
        beta,
        gamma_x,
    })
}

/// Leapover tail in the t → ∞ regime: `t^β x^{-β} / (Γ(1-β) Γ(1+β))`.
/// The slowly varying factors of threshold and overshoot cancel for a
/// constant ℓ, so no tail scale enters.
pub fn predict_leapover(beta: f64, t: f64) -> Result<LDPrediction, PredictError> {
    check(beta > 0.0 && beta < 1.0, "beta in (0,1)")?;
    check(t >= 0.0, "t >= 0")?;
    Ok(LDPrediction {
        kind: PredictionKind::Leapover,
        t_or_n: t,
        prefactor: t.powf(beta) / (gamma(1.0 - beta) * gamma(1.0 + beta)),
        t_exponent: beta,
        x_exponent: -beta,
        beta,
        gamma_x: 1.0,
    })
}

/// Exact fixed-t leapover asymptote for Mittag-Leffler increments:
/// `(t^β + Γ(1+β)) x^{-β} / (Γ(1+β) Γ(1-β))` as x → ∞.
pub fn predict_leapover_fixed_t(beta: f64, t: f64) -> Result<LDPrediction, PredictError> {
    check(beta > 0.0 && beta < 1.0, "beta in (0,1)")?;
    check(t >= 0.0, "t >= 0")?;
    Ok(LDPrediction {
        kind: PredictionKind::LeapoverFixedT,
        t_or_n: t,
        prefactor: (t.powf(beta) + gamma(1.0 + beta)) / (gamma(1.0 + beta) * gamma(1.0 - beta)),
        t_exponent: beta,
        x_exponent: -beta,
        beta,
        gamma_x: 1.0,
    })
}

/// Stopped cost for a finite-mean control (mean μ) plus an independent
/// heavy cost component with tail scale ℓ_W: `t ℓ_W x^{-β} / (μ Γ(1-β))`,
/// i.e. `(t/μ) P(W > x)` to leading order.
pub fn predict_gut(beta: f64, ell_w: f64, mu: f64, t: f64) -> Result<LDPrediction, PredictError> {
    check(beta > 0.0 && beta < 1.0, "beta in (0,1)")?;
    check(mu > 0.0, "mu > 0")?;
    check(t >= 0.0, "t >= 0")?;
    Ok(LDPrediction {
        kind: PredictionKind::Gut,
        t_or_n: t,
        prefactor: t * ell_w / (mu * gamma(1.0 - beta)),
        t_exponent: 1.0,
        x_exponent: -beta,
        beta,
        gamma_x: 1.0,
    })
}

/// Joint tail of the conditioned walk: `2n P(T⁻ > n) · P(X > x)` with the
/// exact weak-descending-ladder survival probability, removing the O(1/n)
/// bias of the `1/√(πn)` asymptote at desk-scale n.
pub fn predict_conditioned(beta: f64, xm: f64, n: u64) -> Result<LDPrediction, PredictError> {
    check(beta > 0.0 && beta < 1.0, "beta in (0,1)")?;
    check(xm > 0.0, "xm > 0")?;
    check(n >= 1, "n >= 1")?;
    // one-sided survival of the symmetric law: (x/xm)^{-β} / 2
    Ok(LDPrediction {
        kind: PredictionKind::Conditioned,
        t_or_n: n as f64,
        prefactor: n as f64 * ladder_survival_exact(n) * xm.powf(beta),
        t_exponent: 0.5,
        x_exponent: -beta,
        beta,
        gamma_x: 1.0,
    })
}

/// P(T⁻ > n) for a symmetric continuous walk: `(2n)! / (2^n n!)²`, by the
/// Sparre Andersen identity. Evaluated with the stable product recurrence
/// `p_n = p_{n-1} (2n-1) / (2n)`.
pub fn ladder_survival_exact(n: u64) -> f64 {
    let mut p = 1.0;
    for k in 1..=n {
        p *= (2 * k - 1) as f64 / (2 * k) as f64;
    }
    p
}
