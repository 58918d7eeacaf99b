//! Simulators for the coupled control/cost walk.
//!
//! The walk accumulates i.i.d. pairs `(X_k, Y_k)`: the control `S_n = ΣX_k`
//! drives stopping or conditioning, the cost `C_n = ΣY_k` is the observable.
//! Four couplings are supported: independent costs, identical costs
//! (`Y = X`), additive costs (`Y = X + W`), and absolute-value costs
//! (`Y = |X|` for a symmetric control, used by walks conditioned to stay
//! positive).
//!
//! # Determinism contract
//!
//! Estimators partition the trial index space into fixed blocks of
//! `block_size`; block `b` always consumes the stream `(seed, b)`. Counts
//! merge by addition, so results are bit-identical for any worker count and
//! any execution order. The `*_block` functions are the per-block kernels a
//! parallel driver schedules; the sequential drivers here iterate the same
//! blocks in order.

use alloc::vec;
use alloc::vec::Vec;

use crate::rng::RngStream;
use crate::sampling::TailLaw;
use crate::stats::wilson_ci;

/// Joint law of one control/cost increment pair.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingModel {
    kind: CouplingKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CouplingKind {
    /// p(x, y) = p_X(x) p_Y(y).
    Independent { x_law: TailLaw, y_law: TailLaw },
    /// Y_k = X_k.
    Identical { x_law: TailLaw },
    /// Y_k = X_k + W_k with W independent of X.
    Additive { x_law: TailLaw, w_law: TailLaw },
    /// Y_k = |X_k| for a symmetric control law.
    AbsValue { x_law: TailLaw },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProcessError {
    /// A single trial exceeded the configured step cap; the model is
    /// mis-specified for a first-passage experiment.
    StepCapExceeded { cap: u64 },
    InvalidModel(&'static str),
    InvalidGrid(&'static str),
    CenterRequiresFiniteMean,
    ZeroTrials,
}

impl core::fmt::Display for ProcessError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ProcessError::StepCapExceeded { cap } => {
                write!(f, "first-passage walk exceeded the step cap of {cap}")
            }
            ProcessError::InvalidModel(m) => write!(f, "invalid coupling model: {m}"),
            ProcessError::InvalidGrid(m) => write!(f, "invalid threshold grid: {m}"),
            ProcessError::CenterRequiresFiniteMean => {
                write!(f, "centering requires a law with a finite mean")
            }
            ProcessError::ZeroTrials => write!(f, "at least one trial is required"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ProcessError {}

impl CouplingModel {
    pub fn independent(x_law: TailLaw, y_law: TailLaw) -> Result<Self, ProcessError> {
        if !x_law.is_nonnegative() || !y_law.is_nonnegative() {
            return Err(ProcessError::InvalidModel(
                "independent coupling requires nonnegative laws",
            ));
        }
        Ok(CouplingModel { kind: CouplingKind::Independent { x_law, y_law } })
    }

    pub fn identical(x_law: TailLaw) -> Result<Self, ProcessError> {
        if !x_law.is_nonnegative() {
            return Err(ProcessError::InvalidModel("identical coupling requires a nonnegative law"));
        }
        Ok(CouplingModel { kind: CouplingKind::Identical { x_law } })
    }

    pub fn additive(x_law: TailLaw, w_law: TailLaw) -> Result<Self, ProcessError> {
        if !x_law.is_nonnegative() || !w_law.is_nonnegative() {
            return Err(ProcessError::InvalidModel("additive coupling requires nonnegative laws"));
        }
        Ok(CouplingModel { kind: CouplingKind::Additive { x_law, w_law } })
    }

    pub fn abs_value(x_law: TailLaw) -> Result<Self, ProcessError> {
        if !x_law.is_symmetric() {
            return Err(ProcessError::InvalidModel("abs-value coupling requires a symmetric law"));
        }
        Ok(CouplingModel { kind: CouplingKind::AbsValue { x_law } })
    }

    pub fn kind(&self) -> &CouplingKind {
        &self.kind
    }

    pub fn control_law(&self) -> &TailLaw {
        match &self.kind {
            CouplingKind::Independent { x_law, .. }
            | CouplingKind::Identical { x_law }
            | CouplingKind::Additive { x_law, .. }
            | CouplingKind::AbsValue { x_law } => x_law,
        }
    }

    /// Positive control increments guarantee an a.s. finite passage time.
    pub fn supports_first_passage(&self) -> bool {
        !matches!(self.kind, CouplingKind::AbsValue { .. })
    }

    /// Draw one increment pair (x, y).
    #[inline]
    pub fn draw(&self, rng: &mut RngStream) -> (f64, f64) {
        match &self.kind {
            CouplingKind::Independent { x_law, y_law } => (x_law.sample(rng), y_law.sample(rng)),
            CouplingKind::Identical { x_law } => {
                let x = x_law.sample(rng);
                (x, x)
            }
            CouplingKind::Additive { x_law, w_law } => {
                let x = x_law.sample(rng);
                (x, x + w_law.sample(rng))
            }
            CouplingKind::AbsValue { x_law } => {
                let x = x_law.sample(rng);
                (x, if x < 0.0 { -x } else { x })
            }
        }
    }
}

/// Outcome of one first-passage trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppedSample {
    /// Number of steps taken (the passage index), ≥ 1.
    pub tau: u64,
    /// Control value at passage, > threshold.
    pub control_final: f64,
    /// Cost accumulated over all tau steps, including the crossing step.
    pub cost: f64,
    /// Overshoot of the control above the threshold.
    pub leapover: f64,
}

/// Run the walk until the control exceeds `t`.
pub fn simulate_first_passage(
    model: &CouplingModel,
    t: f64,
    rng: &mut RngStream,
    step_cap: u64,
) -> Result<StoppedSample, ProcessError> {
    if !model.supports_first_passage() {
        return Err(ProcessError::InvalidModel(
            "first passage requires nonnegative control increments",
        ));
    }
    let mut s = 0.0;
    let mut c = 0.0;
    let mut steps: u64 = 0;
    loop {
        let (x, y) = model.draw(rng);
        s += x;
        c += y;
        steps += 1;
        if s > t {
            debug_assert!(s - x <= t, "previous control value must not exceed the threshold");
            return Ok(StoppedSample { tau: steps, control_final: s, cost: c, leapover: s - t });
        }
        if steps >= step_cap {
            return Err(ProcessError::StepCapExceeded { cap: step_cap });
        }
    }
}

/// Which functional of the stopped walk is thresholded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StoppedObservable {
    /// The stopped cost itself.
    Cost,
    /// The control overshoot above the threshold.
    Leapover,
}

/// Monte Carlo estimate of one tail probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub x: f64,
    pub successes: u64,
    pub trials: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Driver options shared by all estimators.
#[derive(Debug, Clone, Copy)]
pub struct MonteCarloOpts {
    pub trials: u64,
    pub seed: u64,
    pub block_size: u64,
    pub confidence: f64,
    pub step_cap: u64,
}

impl MonteCarloOpts {
    pub fn new(trials: u64, seed: u64) -> Self {
        MonteCarloOpts {
            trials,
            seed,
            block_size: 1 << 16,
            confidence: 0.95,
            step_cap: 1_000_000_000,
        }
    }

    pub fn block_size(mut self, block_size: u64) -> Self {
        self.block_size = block_size.max(1);
        self
    }

    pub fn confidence(mut self, confidence: f64) -> Self {
        self.confidence = confidence;
        self
    }

    pub fn step_cap(mut self, step_cap: u64) -> Self {
        self.step_cap = step_cap.max(1);
        self
    }

    /// Fixed block layout for `trials`: number of blocks, last one ragged.
    pub fn blocks(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let bs = self.block_size;
        let n = self.trials;
        let nblocks = n.div_ceil(bs);
        (0..nblocks).map(move |b| (b, bs.min(n - b * bs)))
    }
}

fn validate_grid(x_grid: &[f64]) -> Result<(), ProcessError> {
    if x_grid.is_empty() {
        return Err(ProcessError::InvalidGrid("empty threshold grid"));
    }
    if x_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ProcessError::InvalidGrid("thresholds must be strictly ascending"));
    }
    Ok(())
}

/// Nested exceedance counter: one pass per trial, counts shared across the
/// whole grid, so the per-threshold estimates are perfectly positively
/// coupled and monotone by construction.
struct ExceedanceCounter<'g> {
    x_grid: &'g [f64],
    histogram: Vec<u64>,
}

impl<'g> ExceedanceCounter<'g> {
    fn new(x_grid: &'g [f64]) -> Self {
        ExceedanceCounter { x_grid, histogram: vec![0; x_grid.len() + 1] }
    }

    #[inline]
    fn record(&mut self, value: f64) {
        let k = self.x_grid.partition_point(|&g| g < value);
        self.histogram[k] += 1;
    }

    /// Exceedance counts per threshold (suffix sums of the histogram).
    fn counts(&self) -> Vec<u64> {
        let mut acc = 0u64;
        let mut out = vec![0u64; self.x_grid.len()];
        for i in (0..self.x_grid.len()).rev() {
            acc += self.histogram[i + 1];
            out[i] = acc;
        }
        out
    }
}

fn estimates_from_counts(
    x_grid: &[f64],
    counts: &[u64],
    trials: u64,
    confidence: f64,
) -> Vec<TailEstimate> {
    x_grid
        .iter()
        .zip(counts)
        .map(|(&x, &successes)| {
            let (ci_low, ci_high) = wilson_ci(successes, trials, confidence);
            TailEstimate {
                x,
                successes,
                trials,
                p_hat: successes as f64 / trials as f64,
                ci_low,
                ci_high,
            }
        })
        .collect()
}

/// Per-block kernel for the stopped-walk tail: exceedance counts of the
/// chosen observable over `x_grid` for `trials` first-passage walks.
pub fn stopped_tail_block(
    model: &CouplingModel,
    t: f64,
    observable: StoppedObservable,
    x_grid: &[f64],
    trials: u64,
    rng: &mut RngStream,
    step_cap: u64,
) -> Result<Vec<u64>, ProcessError> {
    let mut counter = ExceedanceCounter::new(x_grid);
    for _ in 0..trials {
        let sample = simulate_first_passage(model, t, rng, step_cap)?;
        let value = match observable {
            StoppedObservable::Cost => sample.cost,
            StoppedObservable::Leapover => sample.leapover,
        };
        counter.record(value);
    }
    Ok(counter.counts())
}

/// P(observable > x) for the stopped walk, per threshold.
pub fn estimate_stopped_tail(
    model: &CouplingModel,
    t: f64,
    observable: StoppedObservable,
    x_grid: &[f64],
    opts: &MonteCarloOpts,
) -> Result<Vec<TailEstimate>, ProcessError> {
    validate_grid(x_grid)?;
    if opts.trials == 0 {
        return Err(ProcessError::ZeroTrials);
    }
    let mut counts = vec![0u64; x_grid.len()];
    for (b, trials) in opts.blocks() {
        let mut rng = RngStream::new(opts.seed, b);
        let block = stopped_tail_block(model, t, observable, x_grid, trials, &mut rng, opts.step_cap)?;
        for (acc, c) in counts.iter_mut().zip(block) {
            *acc += c;
        }
    }
    Ok(estimates_from_counts(x_grid, &counts, opts.trials, opts.confidence))
}

/// Per-block kernel for the counting-process cost `C_{N(t)}`: the stopped
/// cost with the crossing increment removed. Independent coupling only,
/// where that final increment is independent of the count.
pub fn counting_tail_block(
    model: &CouplingModel,
    t: f64,
    x_grid: &[f64],
    trials: u64,
    rng: &mut RngStream,
    step_cap: u64,
) -> Result<Vec<u64>, ProcessError> {
    if !matches!(model.kind(), CouplingKind::Independent { .. }) {
        return Err(ProcessError::InvalidModel("counting cost requires the independent coupling"));
    }
    let mut counter = ExceedanceCounter::new(x_grid);
    for _ in 0..trials {
        let mut s = 0.0;
        let mut c = 0.0;
        let mut steps = 0u64;
        let last_y = loop {
            let (x, y) = model.draw(rng);
            s += x;
            c += y;
            steps += 1;
            if s > t {
                break y;
            }
            if steps >= step_cap {
                return Err(ProcessError::StepCapExceeded { cap: step_cap });
            }
        };
        counter.record(c - last_y);
    }
    Ok(counter.counts())
}

/// P(C_{N(t)} > x): the cost accumulated strictly before the passage step.
pub fn estimate_counting_cost_tail(
    model: &CouplingModel,
    t: f64,
    x_grid: &[f64],
    opts: &MonteCarloOpts,
) -> Result<Vec<TailEstimate>, ProcessError> {
    validate_grid(x_grid)?;
    if opts.trials == 0 {
        return Err(ProcessError::ZeroTrials);
    }
    let mut counts = vec![0u64; x_grid.len()];
    for (b, trials) in opts.blocks() {
        let mut rng = RngStream::new(opts.seed, b);
        let block = counting_tail_block(model, t, x_grid, trials, &mut rng, opts.step_cap)?;
        for (acc, c) in counts.iter_mut().zip(block) {
            *acc += c;
        }
    }
    Ok(estimates_from_counts(x_grid, &counts, opts.trials, opts.confidence))
}

/// Per-block kernel for plain i.i.d. sums of `n` terms, shifted by
/// `center_shift` per term (zero for uncentered sums).
pub fn iid_sum_tail_block(
    y_law: &TailLaw,
    n: u64,
    center_shift: f64,
    x_grid: &[f64],
    trials: u64,
    rng: &mut RngStream,
) -> Vec<u64> {
    let mut counter = ExceedanceCounter::new(x_grid);
    for _ in 0..trials {
        let mut sum = 0.0;
        for _ in 0..n {
            sum += y_law.sample(rng) - center_shift;
        }
        counter.record(sum);
    }
    counter.counts()
}

/// P(Σ_{k ≤ n} Ỹ_k > x) with Ỹ = Y - E[Y] when `centered`.
pub fn estimate_iid_sum_tail(
    y_law: &TailLaw,
    n: u64,
    centered: bool,
    x_grid: &[f64],
    opts: &MonteCarloOpts,
) -> Result<Vec<TailEstimate>, ProcessError> {
    validate_grid(x_grid)?;
    if opts.trials == 0 {
        return Err(ProcessError::ZeroTrials);
    }
    let shift = if centered {
        y_law.mean().ok_or(ProcessError::CenterRequiresFiniteMean)?
    } else {
        0.0
    };
    let mut counts = vec![0u64; x_grid.len()];
    for (b, trials) in opts.blocks() {
        let mut rng = RngStream::new(opts.seed, b);
        let block = iid_sum_tail_block(y_law, n, shift, x_grid, trials, &mut rng);
        for (acc, c) in counts.iter_mut().zip(block) {
            *acc += c;
        }
    }
    Ok(estimates_from_counts(x_grid, &counts, opts.trials, opts.confidence))
}

/// Joint tail of the conditioned walk, plus the survivor count.
#[derive(Debug, Clone)]
pub struct ConditionedTail {
    /// Paths with S_j > 0 for all j ≤ n, regardless of cost.
    pub survivors: u64,
    pub walks: u64,
    /// Estimates of the unconditional joint probability
    /// P(C_n > x, walk stays positive), normalized by `walks`.
    pub estimates: Vec<TailEstimate>,
}

/// Per-block kernel for the conditioned walk, generic over the symmetric
/// increment sampler so tests can plug in lattice laws for enumeration
/// cross-checks. Positivity is enforced strictly (`S_j > 0`); a path dies
/// at its first weak descent `S_j ≤ 0` and is abandoned immediately.
pub fn conditioned_tail_block<F: FnMut(&mut RngStream) -> f64>(
    sample_x: &mut F,
    n: u64,
    x_grid: &[f64],
    walks: u64,
    rng: &mut RngStream,
) -> (u64, Vec<u64>) {
    let mut counter = ExceedanceCounter::new(x_grid);
    let mut survivors = 0u64;
    for _ in 0..walks {
        let mut s = 0.0;
        let mut cost = 0.0;
        let mut alive = true;
        for _ in 0..n {
            let x = sample_x(rng);
            s += x;
            if s <= 0.0 {
                alive = false;
                break;
            }
            cost += if x < 0.0 { -x } else { x };
        }
        if alive {
            survivors += 1;
            counter.record(cost);
        }
    }
    (survivors, counter.counts())
}

/// Joint probability P(C_n > x, T⁻ > n) for a symmetric heavy-tailed walk,
/// by naive rejection. For an absolutely continuous symmetric law the
/// survival rate is the exact ladder probability `(2n)!/(2^n n!)²`, about
/// `1/√(πn)`, so rejection stays affordable at desk-scale n.
pub fn estimate_conditioned_tail(
    x_law: &TailLaw,
    n: u64,
    x_grid: &[f64],
    opts: &MonteCarloOpts,
) -> Result<ConditionedTail, ProcessError> {
    if !x_law.is_symmetric() {
        return Err(ProcessError::InvalidModel("conditioned walk requires a symmetric law"));
    }
    validate_grid(x_grid)?;
    if opts.trials == 0 {
        return Err(ProcessError::ZeroTrials);
    }
    let mut counts = vec![0u64; x_grid.len()];
    let mut survivors = 0u64;
    for (b, walks) in opts.blocks() {
        let mut rng = RngStream::new(opts.seed, b);
        let (s, block) =
            conditioned_tail_block(&mut |r| x_law.sample(r), n, x_grid, walks, &mut rng);
        survivors += s;
        for (acc, c) in counts.iter_mut().zip(block) {
            *acc += c;
        }
    }
    Ok(ConditionedTail {
        survivors,
        walks: opts.trials,
        estimates: estimates_from_counts(x_grid, &counts, opts.trials, opts.confidence),
    })
}
