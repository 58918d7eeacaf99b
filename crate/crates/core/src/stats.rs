//! Tail statistics: Wilson intervals, ratio-convergence reports, and the
//! Hill tail-index diagnostic.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::asymptotics::LDPrediction;
use crate::process::TailEstimate;
use crate::special::inverse_normal_cdf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsError(pub &'static str);

impl core::fmt::Display for StatsError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for StatsError {}

/// Wilson score interval for a binomial proportion. Never escapes [0, 1]
/// and stays informative at zero successes, unlike the Wald interval.
pub fn wilson_ci(successes: u64, trials: u64, confidence: f64) -> (f64, f64) {
    assert!(trials >= 1 && successes <= trials);
    assert!(confidence > 0.0 && confidence < 1.0);
    let z = inverse_normal_cdf(0.5 + 0.5 * confidence);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // clamp to [0,1] and absorb last-ulp rounding so p is always covered
    ((center - half).max(0.0).min(p), (center + half).min(1.0).max(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The prediction is zero at this row; no ratio is defined.
    NotApplicable,
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
            Verdict::NotApplicable => write!(f, "N/A"),
        }
    }
}

/// One threshold of a Monte-Carlo-versus-prediction comparison.
#[derive(Debug, Clone)]
pub struct RatioRow {
    pub t_or_n: f64,
    pub x: f64,
    pub successes: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub predicted: f64,
    pub ratio: f64,
    pub ratio_ci: (f64, f64),
    pub validity_ratio: f64,
    pub verdict: Verdict,
}

/// Ratio-convergence report: estimate/prediction per threshold with a
/// PASS/FAIL verdict per row.
#[derive(Debug, Clone)]
pub struct RatioReport {
    pub rows: Vec<RatioRow>,
    pub tolerance: f64,
    pub validity_gate: f64,
}

impl RatioReport {
    /// True when every applicable row passes.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.verdict != Verdict::Fail)
    }
}

/// Compare tail estimates against a prediction bound to the same t (or n).
///
/// A row passes when the ratio confidence interval, widened by `tolerance`,
/// contains one AND the validity ratio is below `validity_gate`. The
/// prediction carries no sampling error, so the ratio interval is the
/// estimate interval divided by the predicted value.
pub fn ratio_report(
    estimates: &[TailEstimate],
    prediction: &LDPrediction,
    tolerance: f64,
    validity_gate: f64,
) -> RatioReport {
    let rows = estimates
        .iter()
        .map(|e| {
            let predicted = prediction.evaluate(e.x);
            let validity = prediction.validity_ratio(e.x);
            if predicted <= 0.0 {
                return RatioRow {
                    t_or_n: prediction.t_or_n,
                    x: e.x,
                    successes: e.successes,
                    trials: e.trials,
                    p_hat: e.p_hat,
                    ci_low: e.ci_low,
                    ci_high: e.ci_high,
                    predicted,
                    ratio: f64::NAN,
                    ratio_ci: (f64::NAN, f64::NAN),
                    validity_ratio: validity,
                    verdict: Verdict::NotApplicable,
                };
            }
            let ratio_ci = (e.ci_low / predicted, e.ci_high / predicted);
            let within = ratio_ci.0 <= 1.0 + tolerance && ratio_ci.1 >= 1.0 - tolerance;
            let verdict = if within && validity < validity_gate {
                Verdict::Pass
            } else {
                Verdict::Fail
            };
            RatioRow {
                t_or_n: prediction.t_or_n,
                x: e.x,
                successes: e.successes,
                trials: e.trials,
                p_hat: e.p_hat,
                ci_low: e.ci_low,
                ci_high: e.ci_high,
                predicted,
                ratio: e.p_hat / predicted,
                ratio_ci,
                validity_ratio: validity,
                verdict,
            }
        })
        .collect();
    RatioReport { rows, tolerance, validity_gate }
}

/// Hill estimator of the tail index from the top-k order statistics:
/// the reciprocal of the mean log-spacing `ln(x_(i) / x_(k+1))`.
pub fn hill_estimator(samples: &[f64], k: usize) -> Result<f64, StatsError> {
    if k < 2 {
        return Err(StatsError("hill estimator needs k >= 2"));
    }
    if k + 1 > samples.len() {
        return Err(StatsError("k must be smaller than the sample count"));
    }
    let mut v: Vec<f64> = samples.to_vec();
    if v.iter().any(|x| !(*x > 0.0)) {
        return Err(StatsError("hill estimator requires positive samples"));
    }
    // descending partial sort: the top k+1 entries
    v.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    let x_k1 = v[k];
    let mut sum = 0.0;
    for xi in &v[..k] {
        sum += (*xi / x_k1).ln();
    }
    if sum <= 0.0 {
        return Err(StatsError("degenerate spacings (ties at the top)"));
    }
    Ok(k as f64 / sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::predict_leapover;
    use crate::rng::RngStream;
    use crate::sampling::TailLaw;

    #[test]
    fn wilson_pinned_values() {
        let (lo, hi) = wilson_ci(0, 10, 0.95);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.277_537).abs() < 1e-5);
        let (lo, hi) = wilson_ci(10, 10, 0.95);
        assert!((lo - 0.722_463).abs() < 1e-5);
        assert_eq!(hi, 1.0);
        let (lo, hi) = wilson_ci(5, 10, 0.95);
        assert!(((lo + hi) / 2.0 - 0.5).abs() < 1e-12, "symmetric case centers at 1/2");
    }

    #[test]
    fn wilson_coverage_monte_carlo() {
        // empirical coverage of the 95% interval over 10^4 binomial draws
        let n = 1000u64;
        let reps = 10_000;
        for (si, &p) in [0.01, 0.1, 0.5].iter().enumerate() {
            let mut rng = RngStream::new(31, si as u64);
            let mut covered = 0;
            for _ in 0..reps {
                let mut k = 0u64;
                for _ in 0..n {
                    if rng.uniform_co() < p {
                        k += 1;
                    }
                }
                let (lo, hi) = wilson_ci(k, n, 0.95);
                if lo <= p && p <= hi {
                    covered += 1;
                }
            }
            let cov = covered as f64 / reps as f64;
            assert!((0.93..=0.97).contains(&cov), "p={} coverage={}", p, cov);
        }
    }

    #[test]
    fn ratio_report_verdicts_and_gating() {
        let pred = predict_leapover(0.5, 1e3).unwrap();
        let est = |x: f64, s: u64, n: u64| {
            let (lo, hi) = wilson_ci(s, n, 0.95);
            TailEstimate { x, successes: s, trials: n, p_hat: s as f64 / n as f64, ci_low: lo, ci_high: hi }
        };
        // ~the predicted probability at x = 1e6 is 0.0201
        let good = est(1e6, 2013, 100_000);
        let bad = est(1e6, 4500, 100_000);
        let gated = est(1.5e3, 99_000, 100_000); // x barely above t: validity gate trips
        let report = ratio_report(&[good, bad, gated], &pred, 0.05, 0.1);
        assert_eq!(report.rows[0].verdict, Verdict::Pass);
        assert_eq!(report.rows[1].verdict, Verdict::Fail);
        assert_eq!(report.rows[2].verdict, Verdict::Fail);
        assert!(!report.all_pass());
        // rows keep their interval around the ratio
        let r = &report.rows[0];
        assert!(r.ratio_ci.0 <= r.ratio && r.ratio <= r.ratio_ci.1);

        // shrinking the gate never converts FAIL into PASS
        let tight = ratio_report(
            &report.rows.iter().map(|r| TailEstimate {
                x: r.x,
                successes: r.successes,
                trials: r.trials,
                p_hat: r.p_hat,
                ci_low: r.ci_low,
                ci_high: r.ci_high,
            }).collect::<alloc::vec::Vec<_>>(),
            &pred,
            0.05,
            0.01,
        );
        for (a, b) in report.rows.iter().zip(tight.rows.iter()) {
            if a.verdict == Verdict::Fail {
                assert_eq!(b.verdict, Verdict::Fail);
            }
        }
    }

    #[test]
    fn ratio_report_zero_prediction_is_na() {
        let pred = predict_leapover(0.5, 0.0).unwrap();
        let e = TailEstimate { x: 10.0, successes: 0, trials: 10, p_hat: 0.0, ci_low: 0.0, ci_high: 0.28 };
        let report = ratio_report(&[e], &pred, 0.05, 0.1);
        assert_eq!(report.rows[0].verdict, Verdict::NotApplicable);
        assert!(report.all_pass());
    }

    #[test]
    fn hill_on_exact_pareto() {
        let law = TailLaw::pareto(0.5, 1.0).unwrap();
        let mut rng = RngStream::new(8, 0);
        let samples: alloc::vec::Vec<f64> = (0..1_000_000).map(|_| law.sample(&mut rng)).collect();
        let k = 10_000;
        let est = hill_estimator(&samples, k).unwrap();
        // 3σ ≈ 3β/√k
        assert!((est - 0.5).abs() < 0.015, "hill={}", est);
    }

    #[test]
    fn hill_on_mittag_leffler_tail() {
        let law = TailLaw::mittag_leffler(0.5).unwrap();
        let mut rng = RngStream::new(8, 1);
        let samples: alloc::vec::Vec<f64> = (0..1_000_000).map(|_| law.sample(&mut rng)).collect();
        let est = hill_estimator(&samples, 1000).unwrap();
        assert!((est - 0.5).abs() < 0.05, "hill={}", est);
    }

    #[test]
    fn hill_scale_invariance_exact() {
        let law = TailLaw::pareto(0.5, 1.0).unwrap();
        let mut rng = RngStream::new(8, 2);
        let samples: alloc::vec::Vec<f64> = (0..10_000).map(|_| law.sample(&mut rng)).collect();
        let base = hill_estimator(&samples, 500).unwrap();
        // powers of two scale exactly in binary floating point
        let scaled: alloc::vec::Vec<f64> = samples.iter().map(|x| x * 1024.0).collect();
        assert_eq!(base.to_bits(), hill_estimator(&scaled, 500).unwrap().to_bits());
    }

    #[test]
    fn hill_rejections() {
        assert!(hill_estimator(&[1.0, 2.0, 3.0], 1).is_err());
        assert!(hill_estimator(&[1.0, 2.0], 2).is_err());
        assert!(hill_estimator(&[1.0, -2.0, 3.0, 4.0], 2).is_err());
        // deterministic samples: zero spacings
        assert!(hill_estimator(&[2.0; 16], 4).is_err());
    }
}
