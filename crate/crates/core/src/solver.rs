//! Sequential minimal optimization on the dual problem.
//!
//! Every iteration picks an ordered pair `B = (i, j)` and moves along
//! `v_B = e_i - e_j`, which keeps `sum(alpha) = 0`. The step solves
//!
//! ```text
//! maximize  l*mu - 1/2 q*mu^2   subject to   lo <= mu <= hi
//! ```
//!
//! with `l = G_i - G_j`, `q = K_ii - 2 K_ij + K_jj`, i.e. the Newton step
//! `l / q` clipped to the box. Indices are compared against the stored bounds
//! exactly; steps that end on a bound snap the coordinate to the bound value.

use std::collections::VecDeque;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::cache::{CacheStats, KernelCache};
use crate::error::{Error, Result};
use crate::problem::TrainingProblem;

/// Number of past steps kept in the history; enough for 20 planning candidates
/// plus the step that planned.
pub const HISTORY_LIMIT: usize = 21;

/// Ordered pair `(i, j)` with `i != j`; the direction is `e_i - e_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WorkingSet {
    i: usize,
    j: usize,
}

impl WorkingSet {
    pub fn new(i: usize, j: usize) -> Option<Self> {
        (i != j).then_some(Self { i, j })
    }

    #[inline]
    pub fn i(self) -> usize {
        self.i
    }

    #[inline]
    pub fn j(self) -> usize {
        self.j
    }

    pub fn reversed(self) -> Self {
        Self {
            i: self.j,
            j: self.i,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// Unclipped Newton step.
    FreeSmo,
    /// Newton step clipped at the box.
    ClippedSmo,
    /// Planning-ahead step.
    Planning,
}

/// Nonnegative gain, possibly `+inf` when the direction lies in the null
/// space of `K` but the directional derivative does not vanish.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct GainValue(f64);

impl GainValue {
    pub const ZERO: GainValue = GainValue(0.0);
    pub const INFINITE: GainValue = GainValue(f64::INFINITY);

    /// Upper bound `1/2 l^2 / q` on the gain along a direction.
    pub fn bound(l: f64, q: f64) -> Self {
        if q > 0.0 {
            GainValue(0.5 * l * l / q)
        } else if l == 0.0 {
            GainValue::ZERO
        } else {
            GainValue::INFINITE
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }
}

/// Newton step `l / q`; `+-inf` along a null direction, `0` if stationary.
#[inline]
pub fn newton_value(l: f64, q: f64) -> f64 {
    if q > 0.0 {
        l / q
    } else if l > 0.0 {
        f64::INFINITY
    } else if l < 0.0 {
        f64::NEG_INFINITY
    } else {
        0.0
    }
}

/// The one-dimensional sub-problem along a working set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepPlan {
    pub working_set: WorkingSet,
    /// Directional derivative `v_B' grad f`.
    pub l: f64,
    /// Curvature `v_B' K v_B`, clamped at zero.
    pub q: f64,
    /// Unconstrained Newton step, may be infinite.
    pub newton: f64,
    pub lower: f64,
    pub upper: f64,
    /// Newton step clipped to `[lower, upper]`.
    pub mu: f64,
}

impl StepPlan {
    pub fn is_free(&self) -> bool {
        self.mu == self.newton
    }

    /// Exact gain `l*mu - 1/2 q*mu^2` of the clipped step.
    pub fn gain(&self) -> GainValue {
        GainValue((self.l * self.mu - 0.5 * self.q * self.mu * self.mu).max(0.0))
    }

    pub fn bound(&self) -> GainValue {
        GainValue::bound(self.l, self.q)
    }

    /// Gain of an arbitrary step `mu` along the same direction (may be negative).
    pub fn gain_at(&self, mu: f64) -> f64 {
        self.l * mu - 0.5 * self.q * mu * mu
    }

    pub fn clip(&self, mu: f64) -> f64 {
        mu.min(self.upper).max(self.lower)
    }
}

/// What happened in one iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepRecord {
    pub working_set: WorkingSet,
    pub kind: StepKind,
    pub mu: f64,
    /// Newton step of this working set at the point the step started from.
    pub newton: f64,
    pub q: f64,
}

impl StepRecord {
    /// `mu / mu*`, defined as 0 when the Newton step is infinite or zero.
    pub fn newton_ratio(&self) -> f64 {
        if self.newton.is_finite() && self.newton != 0.0 {
            self.mu / self.newton
        } else {
            0.0
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverState {
    alpha: Vec<f64>,
    gradient: Vec<f64>,
    iteration: u64,
    // most recent first
    history: VecDeque<StepRecord>,
}

impl SolverState {
    /// `alpha = 0`, so the gradient is `y` and needs no kernel evaluations.
    pub fn new(problem: &TrainingProblem) -> Self {
        Self {
            alpha: vec![0.0; problem.len()],
            gradient: problem.y().to_vec(),
            iteration: 0,
            history: VecDeque::with_capacity(HISTORY_LIMIT),
        }
    }

    /// State at a feasible `alpha` with the gradient computed from scratch.
    /// Used for driving individual operations from tests and tools.
    pub fn from_alpha(problem: &TrainingProblem, alpha: Vec<f64>) -> Result<Self> {
        problem.check_feasible(&alpha)?;
        let mut gradient = problem.y().to_vec();
        let mut row = vec![0.0; problem.len()];
        for (i, &a) in alpha.iter().enumerate() {
            if a != 0.0 {
                problem.compute_row(i, &mut row);
                for (g, k) in gradient.iter_mut().zip(&row) {
                    *g -= a * k;
                }
            }
        }
        Ok(Self {
            alpha,
            gradient,
            iteration: 0,
            history: VecDeque::with_capacity(HISTORY_LIMIT),
        })
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn gradient(&self) -> &[f64] {
        &self.gradient
    }

    #[doc(hidden)]
    pub fn gradient_mut(&mut self) -> &mut [f64] {
        &mut self.gradient
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    /// `recent(0)` is the previous step, `recent(1)` the one before, ...
    pub fn recent(&self, back: usize) -> Option<&StepRecord> {
        self.history.get(back)
    }

    pub fn last_step(&self) -> Option<&StepRecord> {
        self.history.front()
    }

    /// Planning indicator: true right after a planning step.
    pub fn planned(&self) -> bool {
        self.last_step()
            .is_some_and(|r| r.kind == StepKind::Planning)
    }

    /// Appends a step to the history without touching `alpha`.
    pub fn push_history(&mut self, record: StepRecord) {
        if self.history.len() == HISTORY_LIMIT {
            self.history.pop_back();
        }
        self.history.push_front(record);
    }
}

/// Result of one pass over the variables: the maximal gradient over `I_up`
/// (with its smallest index) and the minimal gradient over `I_down`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Scan {
    pub i: Option<usize>,
    pub max_up: f64,
    pub min_down: f64,
}

impl Scan {
    /// `-inf` whenever one of the index sets is empty.
    pub fn gap(&self) -> f64 {
        self.max_up - self.min_down
    }
}

/// Ranking used when choosing the second index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Criterion {
    Bound,
    Exact,
}

/// Outcome of one iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepOutcome {
    pub working_set: WorkingSet,
    pub kind: StepKind,
    pub mu: f64,
    pub newton: f64,
    /// Objective increase measured from the actual coordinate changes.
    pub gain: f64,
    /// Newton gain bound of the working set at the starting point.
    pub bound: GainValue,
}

/// A solver run: problem, private row cache and iterate.
pub struct Solver<'p> {
    pub(crate) problem: &'p TrainingProblem,
    pub(crate) cache: KernelCache,
    pub(crate) state: SolverState,
}

impl<'p> Solver<'p> {
    pub fn new(problem: &'p TrainingProblem, cache: KernelCache) -> Self {
        Self {
            problem,
            cache,
            state: SolverState::new(problem),
        }
    }

    pub fn with_state(
        problem: &'p TrainingProblem,
        cache: KernelCache,
        state: SolverState,
    ) -> Self {
        assert_eq!(state.alpha.len(), problem.len());
        Self {
            problem,
            cache,
            state,
        }
    }

    pub fn problem(&self) -> &'p TrainingProblem {
        self.problem
    }

    pub fn state(&self) -> &SolverState {
        &self.state
    }

    pub fn state_mut(&mut self) -> &mut SolverState {
        &mut self.state
    }

    pub fn cache(&self) -> &KernelCache {
        &self.cache
    }

    pub fn into_state(self) -> SolverState {
        self.state
    }

    pub(crate) fn row(&mut self, i: usize) -> Arc<[f64]> {
        self.cache.row(self.problem, i)
    }

    /// `(I_up, I_down)` with exact comparisons against the bounds.
    pub fn index_sets(&self) -> (Vec<usize>, Vec<usize>) {
        let (lo, up) = (self.problem.lower(), self.problem.upper());
        let alpha = &self.state.alpha;
        let i_up = (0..alpha.len()).filter(|&k| alpha[k] < up[k]).collect();
        let i_down = (0..alpha.len()).filter(|&k| alpha[k] > lo[k]).collect();
        (i_up, i_down)
    }

    pub(crate) fn scan(&self) -> Scan {
        let (lo, up) = (self.problem.lower(), self.problem.upper());
        let (alpha, grad) = (&self.state.alpha, &self.state.gradient);
        // gradients are finite, so the first index in I_up always beats -inf
        let mut i = usize::MAX;
        let mut max_up = f64::NEG_INFINITY;
        let mut min_down = f64::INFINITY;
        for (k, (((&a, &g), &lo_k), &up_k)) in alpha.iter().zip(grad).zip(lo).zip(up).enumerate() {
            if a < up_k && g > max_up {
                i = k;
                max_up = g;
            }
            if a > lo_k && g < min_down {
                min_down = g;
            }
        }
        Scan {
            i: (i != usize::MAX).then_some(i),
            max_up,
            min_down,
        }
    }

    /// `max{G_i : i in I_up} - min{G_j : j in I_down}`, or `-inf` if either set is empty.
    pub fn kkt_gap(&self) -> f64 {
        self.scan().gap()
    }

    pub fn is_feasible_direction(&self, set: WorkingSet) -> bool {
        let (lo, up) = (self.problem.lower(), self.problem.upper());
        let alpha = &self.state.alpha;
        alpha[set.i] < up[set.i] && alpha[set.j] > lo[set.j]
    }

    /// Directional derivative and curvature along `set`.
    pub(crate) fn direction(&mut self, set: WorkingSet) -> (f64, f64) {
        let row_i = self.row(set.i);
        let d = self.problem.diagonal();
        let g = &self.state.gradient;
        let l = g[set.i] - g[set.j];
        let q = (d[set.i] + d[set.j] - 2.0 * row_i[set.j]).max(0.0);
        (l, q)
    }

    /// Newton gain bound `1/2 l^2 / q` of `set` at the current point.
    pub fn gain_bound(&mut self, set: WorkingSet) -> GainValue {
        let (l, q) = self.direction(set);
        GainValue::bound(l, q)
    }

    /// Builds the clipped Newton step for a feasible working set.
    pub fn newton_step(&mut self, set: WorkingSet) -> Result<StepPlan> {
        if !self.is_feasible_direction(set) {
            return Err(Error::InfeasibleWorkingSet(set));
        }
        let (l, q) = self.direction(set);
        Ok(self.plan_from(set, l, q))
    }

    pub(crate) fn plan_from(&self, set: WorkingSet, l: f64, q: f64) -> StepPlan {
        let (lo, up) = (self.problem.lower(), self.problem.upper());
        let alpha = &self.state.alpha;
        let (i, j) = (set.i, set.j);
        let lower = f64::max(lo[i] - alpha[i], alpha[j] - up[j]);
        let upper = f64::min(up[i] - alpha[i], alpha[j] - lo[j]);
        let newton = newton_value(l, q);
        StepPlan {
            working_set: set,
            l,
            q,
            newton,
            lower,
            upper,
            mu: newton.min(upper).max(lower),
        }
    }

    /// Exact gain of the clipped SMO step on `set`.
    pub fn exact_gain(&mut self, set: WorkingSet) -> Result<GainValue> {
        Ok(self.newton_step(set)?.gain())
    }

    /// Second-order selection: `i` maximizes the gradient over `I_up`, `j`
    /// maximizes the gain bound of `(i, j)` over ascent directions in
    /// `I_down`. Ties go to the smallest index. `None` means no ascent pair
    /// exists, i.e. the point is optimal.
    pub fn select_working_set_standard(&mut self) -> Option<WorkingSet> {
        let scan = self.scan();
        self.select_partner(scan.i?, Criterion::Bound)
            .map(|(set, _)| set)
    }

    /// Best partner `j` for a fixed first index. Only `j` with `G_j < G_i`
    /// are eligible, so the chosen direction is an ascent direction.
    pub(crate) fn select_partner(
        &mut self,
        i: usize,
        criterion: Criterion,
    ) -> Option<(WorkingSet, GainValue)> {
        let row_i = self.row(i);
        let problem = self.problem;
        let (lo, up, d) = (problem.lower(), problem.upper(), problem.diagonal());
        let (alpha, grad) = (&self.state.alpha, &self.state.gradient);
        let (g_i, d_i) = (grad[i], d[i]);
        let room_i = up[i] - alpha[i];
        // twice the gain bound or exact gain; the factor is applied once at the end
        let value = |l: f64, q: f64, room_n: f64| match criterion {
            Criterion::Bound => {
                if q > 0.0 {
                    l * l / q
                } else {
                    f64::INFINITY
                }
            }
            Criterion::Exact => {
                let mu = newton_value(l, q).min(f64::min(room_i, room_n));
                2.0 * l * mu - q * mu * mu
            }
        };
        let mut best: Option<(usize, f64)> = None;
        let mut best_value = f64::NEG_INFINITY;
        let candidates = alpha
            .iter()
            .zip(lo)
            .zip(grad)
            .zip(d)
            .zip(row_i.iter())
            .enumerate();
        for (n, ((((&a_n, &lo_n), &g_n), &d_n), &k_in)) in candidates {
            let l = g_i - g_n;
            if l <= 0.0 || a_n <= lo_n || n == i {
                continue;
            }
            let q = (d_i + d_n - 2.0 * k_in).max(0.0);
            let v = value(l, q, a_n - lo_n);
            if best.is_none() || v > best_value {
                best = Some((n, v));
                best_value = v;
            }
        }
        best.map(|(j, v)| (WorkingSet { i, j }, GainValue(0.5 * v)))
    }

    /// Moves `alpha` by `mu * (e_i - e_j)`, updates the gradient and appends
    /// the step to the history. Returns the objective increase computed from
    /// the actual coordinate changes.
    pub fn apply_step(&mut self, set: WorkingSet, mu: f64, kind: StepKind) -> Result<f64> {
        let problem = self.problem;
        let (i, j) = (set.i, set.j);
        let row_i = self.row(i);
        let row_j = self.row(j);
        let (lo, up, d) = (problem.lower(), problem.upper(), problem.diagonal());
        let (a_i, a_j) = (self.state.alpha[i], self.state.alpha[j]);

        // a step clipped by a bound lands on it exactly
        let mut new_i = if mu == up[i] - a_i {
            up[i]
        } else if mu == lo[i] - a_i {
            lo[i]
        } else {
            a_i + mu
        };
        let mut new_j = if mu == a_j - lo[j] {
            lo[j]
        } else if mu == a_j - up[j] {
            up[j]
        } else {
            a_j - mu
        };
        let excess = [lo[i] - new_i, new_i - up[i], lo[j] - new_j, new_j - up[j]]
            .into_iter()
            .fold(0.0, f64::max);
        if !(excess <= 1e-12 * problem.c().max(1.0)) {
            return Err(Error::BoxViolation { set, mu, excess });
        }
        new_i = new_i.clamp(lo[i], up[i]);
        new_j = new_j.clamp(lo[j], up[j]);

        let grad = &mut self.state.gradient;
        let (g_i, g_j) = (grad[i], grad[j]);
        let l = g_i - g_j;
        let k_ij = row_i[j];
        let q = (d[i] + d[j] - 2.0 * k_ij).max(0.0);
        let (di, dj) = (new_i - a_i, new_j - a_j);
        let gain =
            di * g_i + dj * g_j - 0.5 * (di * di * d[i] + 2.0 * di * dj * k_ij + dj * dj * d[j]);
        if di != 0.0 || dj != 0.0 {
            for ((g, &ki), &kj) in grad.iter_mut().zip(row_i.iter()).zip(row_j.iter()) {
                *g -= di * ki + dj * kj;
            }
        }
        self.state.alpha[i] = new_i;
        self.state.alpha[j] = new_j;
        self.state.iteration += 1;
        self.state.push_history(StepRecord {
            working_set: set,
            kind,
            mu,
            newton: newton_value(l, q),
            q,
        });
        Ok(gain)
    }

    /// One iteration of plain SMO. `None` once the KKT gap is at most `epsilon`.
    pub fn iterate_smo(&mut self, epsilon: f64) -> Result<Option<StepOutcome>> {
        let scan = self.scan();
        if !(scan.gap() > epsilon) {
            return Ok(None);
        }
        let Some((set, _)) = scan
            .i
            .and_then(|i| self.select_partner(i, Criterion::Bound))
        else {
            return Ok(None);
        };
        let plan = self.newton_step(set)?;
        let kind = if plan.is_free() {
            StepKind::FreeSmo
        } else {
            StepKind::ClippedSmo
        };
        let gain = self.apply_step(set, plan.mu, kind)?;
        Ok(Some(StepOutcome {
            working_set: set,
            kind,
            mu: plan.mu,
            newton: plan.newton,
            gain,
            bound: plan.bound(),
        }))
    }

    /// Objective from Gram rows of the nonzero coefficients.
    pub fn objective(&mut self) -> f64 {
        let n = self.problem.len();
        let mut linear = 0.0;
        let mut quadratic = 0.0;
        for i in 0..n {
            let a = self.state.alpha[i];
            if a == 0.0 {
                continue;
            }
            let row = self.row(i);
            let k_alpha: f64 = row.iter().zip(&self.state.alpha).map(|(k, b)| k * b).sum();
            linear += self.problem.y()[i] * a;
            quadratic += a * k_alpha;
        }
        linear - 0.5 * quadratic
    }

    /// `|G - (y - K alpha)|_inf` with the reference gradient rebuilt from Gram rows.
    pub fn gradient_deviation(&mut self) -> f64 {
        let n = self.problem.len();
        let mut fresh = self.problem.y().to_vec();
        for i in 0..n {
            let a = self.state.alpha[i];
            if a != 0.0 {
                let row = self.row(i);
                for (g, k) in fresh.iter_mut().zip(row.iter()) {
                    *g -= a * k;
                }
            }
        }
        fresh
            .iter()
            .zip(&self.state.gradient)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Settings shared by all solver variants.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Stop once the KKT gap is at most this value.
    pub epsilon: f64,
    pub max_iterations: u64,
    pub cache_megabytes: f64,
    /// Check invariants during the run and report them in [`Diagnostics`].
    pub verify: bool,
    /// Keep every step in [`SolveReport::trace`].
    pub record_trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-3,
            max_iterations: 100_000_000,
            cache_megabytes: 64.0,
            verify: false,
            record_trace: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be >= 0, got {}",
                self.epsilon
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "iteration cap must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepCounts {
    pub free_smo: u64,
    pub clipped_smo: u64,
    pub planning: u64,
}

impl StepCounts {
    pub fn total(&self) -> u64 {
        self.free_smo + self.clipped_smo + self.planning
    }

    fn record(&mut self, kind: StepKind) {
        match kind {
            StepKind::FreeSmo => self.free_smo += 1,
            StepKind::ClippedSmo => self.clipped_smo += 1,
            StepKind::Planning => self.planning += 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceStep {
    pub working_set: WorkingSet,
    pub mu: f64,
    pub kind: StepKind,
}

/// Invariant checks collected when [`SolverConfig::verify`] is set.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    pub gradient_checks: u64,
    pub max_gradient_deviation: f64,
    pub feasibility_violations: u64,
    /// Non-planning steps that decreased the objective.
    pub monotonicity_violations: u64,
    /// Planning steps followed by another step.
    pub double_steps_checked: u64,
    /// Double steps gaining less than `(1 - eta^2)` times the Newton gain bound.
    pub double_step_bound_violations: u64,
    pub double_step_decreases: u64,
    /// Smallest `(double gain - bound) / max(1, |f|)` seen.
    pub min_double_step_slack: f64,
}

pub const GRADIENT_CHECK_INTERVAL: u64 = 1000;

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub alpha: Vec<f64>,
    pub iterations: u64,
    pub objective: f64,
    pub kkt_gap: f64,
    pub converged: bool,
    pub steps: StepCounts,
    /// `mu / mu*` of every planning step.
    pub step_ratios: Vec<f64>,
    pub elapsed: Duration,
    pub cache: CacheStats,
    pub diagnostics: Option<Diagnostics>,
    pub trace: Vec<TraceStep>,
}

/// Shared solve loop. `eta` enables the double-step check for planning runs.
pub(crate) fn drive<F>(
    problem: &TrainingProblem,
    config: &SolverConfig,
    eta: Option<f64>,
    mut step: F,
) -> Result<SolveReport>
where
    F: FnMut(&mut Solver<'_>) -> Result<Option<StepOutcome>>,
{
    config.validate()?;
    let start = Instant::now();
    let cache = KernelCache::with_megabytes(problem.len(), config.cache_megabytes);
    let mut solver = Solver::new(problem, cache);
    let mut steps = StepCounts::default();
    let mut step_ratios = Vec::new();
    let mut trace = Vec::new();
    let mut diagnostics = config.verify.then(|| Diagnostics {
        min_double_step_slack: f64::INFINITY,
        ..Diagnostics::default()
    });
    let mut objective_estimate = 0.0;
    let mut pending_planning: Option<StepOutcome> = None;

    let converged = loop {
        if solver.state.iteration >= config.max_iterations {
            break solver.kkt_gap() <= config.epsilon;
        }
        let Some(outcome) = step(&mut solver)? else {
            break true;
        };
        steps.record(outcome.kind);
        objective_estimate += outcome.gain;
        if outcome.kind == StepKind::Planning {
            let ratio = if outcome.mu == outcome.newton {
                1.0
            } else {
                outcome.mu / outcome.newton
            };
            step_ratios.push(ratio);
        }
        if config.record_trace {
            trace.push(TraceStep {
                working_set: outcome.working_set,
                mu: outcome.mu,
                kind: outcome.kind,
            });
        }
        if let Some(diag) = diagnostics.as_mut() {
            let scale = objective_estimate.abs().max(1.0);
            if problem.check_feasible(&solver.state.alpha).is_err() {
                diag.feasibility_violations += 1;
            }
            if outcome.kind != StepKind::Planning && outcome.gain < -1e-12 * scale {
                diag.monotonicity_violations += 1;
            }
            if let Some(planned) = pending_planning.take() {
                let double = planned.gain + outcome.gain;
                let eta = eta.unwrap_or(0.0);
                let bound = (1.0 - eta * eta) * planned.bound.value();
                diag.double_steps_checked += 1;
                if double < bound - 1e-10 * scale {
                    diag.double_step_bound_violations += 1;
                }
                if double < -1e-10 * scale {
                    diag.double_step_decreases += 1;
                }
                diag.min_double_step_slack =
                    diag.min_double_step_slack.min((double - bound) / scale);
            }
            if outcome.kind == StepKind::Planning {
                pending_planning = Some(outcome);
            }
            if solver.state.iteration.is_multiple_of(GRADIENT_CHECK_INTERVAL) {
                let deviation = solver.gradient_deviation();
                diag.gradient_checks += 1;
                diag.max_gradient_deviation = diag.max_gradient_deviation.max(deviation);
            }
        }
    };

    if let Some(diag) = diagnostics.as_mut() {
        let deviation = solver.gradient_deviation();
        diag.gradient_checks += 1;
        diag.max_gradient_deviation = diag.max_gradient_deviation.max(deviation);
    }
    let objective = solver.objective();
    let kkt_gap = solver.kkt_gap();
    let elapsed = start.elapsed();
    let cache = solver.cache.stats();
    let state = solver.into_state();
    Ok(SolveReport {
        alpha: state.alpha,
        iterations: state.iteration,
        objective,
        kkt_gap,
        converged,
        steps,
        step_ratios,
        elapsed,
        cache,
        diagnostics,
        trace,
    })
}

/// Plain SMO from `alpha = 0` with second-order working set selection.
pub fn smo_solve(problem: &TrainingProblem, config: &SolverConfig) -> Result<SolveReport> {
    let epsilon = config.epsilon;
    drive(problem, config, None, |solver| solver.iterate_smo(epsilon))
}
