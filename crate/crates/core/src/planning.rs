//! Planning-ahead SMO.
//!
//! After a free SMO step on `B2`, the solver assumes `B2` will be selected
//! again right after the current working set `B1`. Writing the two steps as
//! `mu1 * v_B1` followed by the greedy Newton step on `B2`, the combined gain
//! is a concave quadratic in `mu1`:
//!
//! ```text
//! g(mu1) = -1/2 det(Q)/Q22 mu1^2 + (Q22 w1 - Q12 w2)/Q22 mu1 + 1/2 w2^2/Q22
//! ```
//!
//! where `w_t = v_Bt' grad f`, `Q_st = v_Bs' K v_Bt`. Its maximizer
//! `(Q22 w1 - Q12 w2) / det(Q)` is the planning step. It is used only when
//! neither the planned step nor the assumed follow-up touches the box.
//!
//! The iteration right after a planning step is a plain SMO step whose
//! working set selection also considers the working set that was planned
//! for. If the planning step stayed within `[1 - eta, 1 + eta]` times its
//! Newton step, candidates are ranked by the Newton gain bound, otherwise by
//! the exact clipped gain. Either way a planning step and its successor
//! together gain at least `(1 - eta^2)` times the Newton gain bound of the
//! planning step's working set.

use crate::error::{Error, Result};
use crate::problem::TrainingProblem;
use crate::solver::{
    drive, Criterion, SolveReport, Solver, SolverConfig, StepKind, StepOutcome, StepPlan,
    WorkingSet,
};

/// Relative threshold below which `det(Q)` counts as zero.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// The two-step model: current working set `b1`, assumed next one `b2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanContext {
    pub b1: WorkingSet,
    pub b2: WorkingSet,
    pub w1: f64,
    pub w2: f64,
    pub q11: f64,
    pub q22: f64,
    pub q12: f64,
}

impl PlanContext {
    pub fn det(&self) -> f64 {
        self.q11 * self.q22 - self.q12 * self.q12
    }

    pub fn is_degenerate(&self) -> bool {
        !(self.q22 > 0.0) || self.det() <= DEGENERACY_THRESHOLD * f64::max(1.0, self.q11 * self.q22)
    }

    fn degenerate(&self) -> Error {
        Error::DegeneratePlan {
            det: self.det(),
            q22: self.q22,
        }
    }

    /// Maximizer of [`PlanContext::double_step_gain`].
    pub fn planning_step(&self) -> Result<f64> {
        if self.is_degenerate() {
            return Err(self.degenerate());
        }
        Ok((self.q22 * self.w1 - self.q12 * self.w2) / self.det())
    }

    /// Newton step on `b2` after a first step of size `mu1` on `b1`.
    pub fn second_step(&self, mu1: f64) -> Result<f64> {
        if !(self.q22 > 0.0) {
            return Err(self.degenerate());
        }
        Ok(self.w2 / self.q22 - self.q12 / self.q22 * mu1)
    }

    /// Gain of a step `mu1` on `b1` followed by the Newton step on `b2`.
    pub fn double_step_gain(&self, mu1: f64) -> Result<f64> {
        if !(self.q22 > 0.0) {
            return Err(self.degenerate());
        }
        let q22 = self.q22;
        Ok(-0.5 * self.det() / q22 * mu1 * mu1
            + (q22 * self.w1 - self.q12 * self.w2) / q22 * mu1
            + 0.5 * self.w2 * self.w2 / q22)
    }

    /// Gain of two arbitrary steps, `w'mu - 1/2 mu'Q mu`.
    pub fn two_step_gain(&self, mu1: f64, mu2: f64) -> f64 {
        self.w1 * mu1 + self.w2 * mu2
            - 0.5 * (self.q11 * mu1 * mu1 + 2.0 * self.q12 * mu1 * mu2 + self.q22 * mu2 * mu2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanResult {
    pub context: PlanContext,
    pub mu_plan: f64,
    pub mu_second: f64,
    /// Neither the planned step nor the assumed second step reaches the box.
    pub both_free: bool,
    pub double_gain: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PaVariant {
    /// Plan after free SMO steps.
    PlanningAhead,
    /// Plan after any SMO step, free or clipped.
    AnyStepPredictor,
    /// No planning; the Newton step is scaled by `factor` before clipping.
    ScaledNewton { factor: f64 },
    /// Plan against each of the `sets` most recent working sets and keep the best.
    Multi { sets: usize },
}

pub const MAX_PLANNING_SETS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct PaConfig {
    pub solver: SolverConfig,
    pub eta: f64,
    pub variant: PaVariant,
}

impl Default for PaConfig {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            eta: 0.9,
            variant: PaVariant::PlanningAhead,
        }
    }
}

impl PaConfig {
    pub fn validate(&self) -> Result<()> {
        self.solver.validate()?;
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "eta must lie in (0, 1), got {}",
                self.eta
            )));
        }
        match self.variant {
            PaVariant::Multi { sets } if !(1..=MAX_PLANNING_SETS).contains(&sets) => {
                Err(Error::InvalidConfig(format!(
                    "multi planning needs 1..={MAX_PLANNING_SETS} sets, got {sets}"
                )))
            }
            PaVariant::ScaledNewton { factor } if !(factor > 0.0 && factor.is_finite()) => {
                Err(Error::InvalidConfig(format!(
                    "Newton scaling factor must be positive, got {factor}"
                )))
            }
            _ => Ok(()),
        }
    }

    fn planning_sets(&self) -> usize {
        match self.variant {
            PaVariant::Multi { sets } => sets,
            _ => 1,
        }
    }
}

/// Step size chosen by the update rule, with the plain SMO step it replaced.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpdateChoice {
    pub smo: StepPlan,
    pub mu: f64,
    pub kind: StepKind,
    pub plan: Option<PlanResult>,
}

impl<'p> Solver<'p> {
    /// Plans a step on `b1` assuming `b2` follows. Fails with
    /// [`Error::DegeneratePlan`] when `Q` is (numerically) singular.
    pub fn plan_ahead(&mut self, b1: WorkingSet, b2: WorkingSet) -> Result<PlanResult> {
        let row_i1 = self.row(b1.i());
        let row_j1 = self.row(b1.j());
        let k22 = self.row(b2.i())[b2.j()];
        let d = self.problem.diagonal();
        let g = self.state.gradient();
        let (i1, j1, i2, j2) = (b1.i(), b1.j(), b2.i(), b2.j());
        let context = PlanContext {
            b1,
            b2,
            w1: g[i1] - g[j1],
            w2: g[i2] - g[j2],
            q11: (d[i1] + d[j1] - 2.0 * row_i1[j1]).max(0.0),
            q22: (d[i2] + d[j2] - 2.0 * k22).max(0.0),
            q12: row_i1[i2] - row_i1[j2] - row_j1[i2] + row_j1[j2],
        };
        let mu_plan = context.planning_step()?;
        let mu_second = context.second_step(mu_plan)?;
        let double_gain = context.double_step_gain(mu_plan)?;
        Ok(PlanResult {
            context,
            mu_plan,
            mu_second,
            both_free: self.stays_interior(b1, mu_plan, b2, mu_second),
            double_gain,
        })
    }

    /// Both steps keep their coordinates strictly inside the box; landing on
    /// a bound counts as hitting it.
    fn stays_interior(&self, b1: WorkingSet, mu1: f64, b2: WorkingSet, mu2: f64) -> bool {
        let (lo, up) = (self.problem.lower(), self.problem.upper());
        let alpha = self.state.alpha();
        let inside = |k: usize, v: f64| lo[k] < v && v < up[k];
        let first_i = alpha[b1.i()] + mu1;
        let first_j = alpha[b1.j()] - mu1;
        if !(inside(b1.i(), first_i) && inside(b1.j(), first_j)) {
            return false;
        }
        let after_first = |k: usize| {
            if k == b1.i() {
                first_i
            } else if k == b1.j() {
                first_j
            } else {
                alpha[k]
            }
        };
        inside(b2.i(), after_first(b2.i()) + mu2) && inside(b2.j(), after_first(b2.j()) - mu2)
    }

    /// Best usable plan for `b_t` against the `sets` most recent working sets:
    /// non-degenerate, both steps free, largest double-step gain (ties go to
    /// the more recent set).
    pub fn multi_plan(&mut self, b_t: WorkingSet, sets: usize) -> Result<Option<PlanResult>> {
        let mut best: Option<PlanResult> = None;
        for back in 0..sets {
            let Some(record) = self.state.recent(back) else {
                break;
            };
            let b2 = record.working_set;
            match self.plan_ahead(b_t, b2) {
                Ok(plan) if plan.both_free => {
                    if best.is_none_or(|b| plan.double_gain > b.double_gain) {
                        best = Some(plan);
                    }
                }
                Ok(_) | Err(Error::DegeneratePlan { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(best)
    }

    /// `clip(factor * mu*)` on a feasible working set.
    pub fn scaled_newton_update(&mut self, set: WorkingSet, factor: f64) -> Result<f64> {
        let plan = self.newton_step(set)?;
        Ok(plan.clip(factor * plan.newton))
    }

    /// Update rule: plan ahead when the previous iteration qualifies and the
    /// plan stays inside the box, otherwise take the clipped SMO step.
    pub fn pa_update_step(&mut self, b_t: WorkingSet, config: &PaConfig) -> Result<UpdateChoice> {
        let smo = self.newton_step(b_t)?;
        let previous = self.state.last_step().map(|r| r.kind);
        let may_plan = match config.variant {
            PaVariant::ScaledNewton { .. } => false,
            PaVariant::AnyStepPredictor => {
                matches!(previous, Some(StepKind::FreeSmo | StepKind::ClippedSmo))
            }
            PaVariant::PlanningAhead | PaVariant::Multi { .. } => {
                previous == Some(StepKind::FreeSmo)
            }
        };
        if may_plan {
            if let Some(plan) = self.multi_plan(b_t, config.planning_sets())? {
                return Ok(UpdateChoice {
                    smo,
                    mu: plan.mu_plan,
                    kind: StepKind::Planning,
                    plan: Some(plan),
                });
            }
        }
        let (mu, target) = match config.variant {
            PaVariant::ScaledNewton { factor } => {
                (smo.clip(factor * smo.newton), factor * smo.newton)
            }
            _ => (smo.mu, smo.newton),
        };
        let kind = if mu == target {
            StepKind::FreeSmo
        } else {
            StepKind::ClippedSmo
        };
        Ok(UpdateChoice {
            smo,
            mu,
            kind,
            plan: None,
        })
    }

    /// Working set selection for planning-ahead SMO. Identical to the
    /// standard rule unless the previous step was a planning step; then the
    /// working sets preceding it compete with the standard choice.
    pub fn select_working_set_pa(&mut self, config: &PaConfig) -> Option<WorkingSet> {
        let i = self.scan().i?;
        self.select_pa_partner(i, config)
    }

    fn select_pa_partner(&mut self, i: usize, config: &PaConfig) -> Option<WorkingSet> {
        let last = self.state.last_step().copied();
        let Some(last) = last.filter(|r| r.kind == StepKind::Planning) else {
            return self.select_partner(i, Criterion::Bound).map(|(set, _)| set);
        };
        let ratio = last.newton_ratio();
        let criterion = if 1.0 - config.eta <= ratio && ratio <= 1.0 + config.eta {
            Criterion::Bound
        } else {
            Criterion::Exact
        };
        let (mut best, mut value) = self.select_partner(i, criterion)?;
        for back in 1..=config.planning_sets() {
            let Some(record) = self.state.recent(back) else {
                break;
            };
            let Some(candidate) = self.ascent_orientation(record.working_set) else {
                continue;
            };
            let candidate_value = match criterion {
                Criterion::Bound => self.gain_bound(candidate),
                Criterion::Exact => match self.exact_gain(candidate) {
                    Ok(gain) => gain,
                    Err(_) => continue,
                },
            };
            if candidate_value > value {
                best = candidate;
                value = candidate_value;
            }
        }
        Some(best)
    }

    /// The orientation of `set` along which the objective increases, if that
    /// direction is feasible.
    fn ascent_orientation(&self, set: WorkingSet) -> Option<WorkingSet> {
        let g = self.state.gradient();
        let l = g[set.i()] - g[set.j()];
        let oriented = if l > 0.0 {
            set
        } else if l < 0.0 {
            set.reversed()
        } else {
            return None;
        };
        self.is_feasible_direction(oriented).then_some(oriented)
    }

    /// One planning-ahead iteration. `None` once the KKT gap is at most epsilon.
    pub fn iterate_pa(&mut self, config: &PaConfig) -> Result<Option<StepOutcome>> {
        let scan = self.scan();
        if !(scan.gap() > config.solver.epsilon) {
            return Ok(None);
        }
        let Some(set) = scan.i.and_then(|i| self.select_pa_partner(i, config)) else {
            return Ok(None);
        };
        let choice = self.pa_update_step(set, config)?;
        let gain = self.apply_step(set, choice.mu, choice.kind)?;
        Ok(Some(StepOutcome {
            working_set: set,
            kind: choice.kind,
            mu: choice.mu,
            newton: choice.smo.newton,
            gain,
            bound: choice.smo.bound(),
        }))
    }
}

/// Planning-ahead SMO from `alpha = 0`.
pub fn pa_solve(problem: &TrainingProblem, config: &PaConfig) -> Result<SolveReport> {
    config.validate()?;
    drive(problem, &config.solver, Some(config.eta), |solver| {
        solver.iterate_pa(config)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cache::KernelCache;
    use crate::problem::{Dataset, KernelSpec, Label, PrecomputedKernel, SparseVector};
    use crate::solver::{SolverState, StepRecord};
    use std::sync::Arc;

    fn ws(i: usize, j: usize) -> WorkingSet {
        WorkingSet::new(i, j).unwrap()
    }

    fn ctx(w1: f64, w2: f64, q11: f64, q22: f64, q12: f64) -> PlanContext {
        PlanContext {
            b1: ws(0, 1),
            b2: ws(0, 2),
            w1,
            w2,
            q11,
            q22,
            q12,
        }
    }

    fn identity_problem(labels: &[f64], c: f64) -> TrainingProblem {
        let n = labels.len();
        let rows = (0..n)
            .map(|r| (0..n).map(|k| if r == k { 1.0 } else { 0.0 }).collect())
            .collect();
        let m = PrecomputedKernel::from_rows(rows).unwrap();
        let labels = labels
            .iter()
            .map(|&v| Label::from_value(v).unwrap())
            .collect();
        let data = Dataset::new(vec![SparseVector::default(); n], labels).unwrap();
        TrainingProblem::new(data, KernelSpec::Precomputed(Arc::new(m)), c).unwrap()
    }

    fn record(set: WorkingSet, kind: StepKind, mu: f64, newton: f64) -> StepRecord {
        StepRecord {
            working_set: set,
            kind,
            mu,
            newton,
            q: 2.0,
        }
    }

    #[test]
    fn hand_computed_plan() {
        let c = ctx(2.0, 2.0, 2.0, 2.0, 1.0);
        let mu = c.planning_step().unwrap();
        assert!((mu - 2.0 / 3.0).abs() < 1e-15);
        assert!((c.second_step(mu).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((c.double_step_gain(mu).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        // greedy: Newton step on b1 followed by the Newton step on b2
        assert!((c.double_step_gain(1.0).unwrap() - 1.25).abs() < 1e-15);
        assert_eq!(c.double_step_gain(0.0).unwrap(), 1.0);
    }

    #[test]
    fn planning_step_maximizes_by_grid_search() {
        let c = ctx(2.0, 2.0, 2.0, 2.0, 1.0);
        let (best_mu, _) = (-2000..=4000)
            .map(|k| k as f64 * 1e-3)
            .map(|mu| (mu, c.double_step_gain(mu).unwrap()))
            .fold(
                (0.0, f64::NEG_INFINITY),
                |acc, x| if x.1 > acc.1 { x } else { acc },
            );
        assert!((best_mu - 2.0 / 3.0).abs() <= 1e-3);
    }

    #[test]
    fn decoupled_directions_plan_the_newton_step() {
        let c = ctx(3.0, -1.0, 1.5, 4.0, 0.0);
        assert_eq!(c.planning_step().unwrap(), 3.0 / 1.5);
        let c = ctx(0.0, 0.0, 2.0, 2.0, 1.0);
        assert_eq!(c.planning_step().unwrap(), 0.0);
        assert_eq!(c.double_step_gain(0.0).unwrap(), 0.0);
    }

    #[test]
    fn degenerate_contexts_are_flagged() {
        let c = ctx(1.0, 1.0, 2.0, 2.0, 2.0);
        assert!(c.is_degenerate());
        assert!(matches!(
            c.planning_step(),
            Err(Error::DegeneratePlan { .. })
        ));
        let c = ctx(1.0, 1.0, 2.0, 0.0, 0.0);
        assert!(c.double_step_gain(0.5).is_err());
        assert!(c.second_step(0.5).is_err());
    }

    #[test]
    fn double_step_gain_matches_the_general_form() {
        let c = ctx(1.3, -0.7, 2.5, 1.1, 0.4);
        for mu1 in [-1.0, 0.0, 0.25, 0.9, 3.0] {
            let mu2 = c.second_step(mu1).unwrap();
            let direct = c.two_step_gain(mu1, mu2);
            assert!((direct - c.double_step_gain(mu1).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn planning_after_a_free_step() {
        let p = identity_problem(&[1.0, -1.0, -1.0], 10.0);
        let mut state = SolverState::new(&p);
        state.push_history(record(ws(0, 2), StepKind::FreeSmo, 0.5, 0.5));
        let mut s = Solver::with_state(&p, KernelCache::with_row_capacity(3, 3), state);

        let plan = s.plan_ahead(ws(0, 1), ws(0, 2)).unwrap();
        let c = plan.context;
        assert_eq!((c.w1, c.w2, c.q11, c.q22, c.q12), (2.0, 2.0, 2.0, 2.0, 1.0));
        assert!(plan.both_free);

        let choice = s.pa_update_step(ws(0, 1), &PaConfig::default()).unwrap();
        assert_eq!(choice.kind, StepKind::Planning);
        assert!((choice.mu - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn no_planning_without_a_free_predecessor() {
        let p = identity_problem(&[1.0, -1.0, -1.0], 10.0);
        let config = PaConfig::default();

        let mut s = Solver::new(&p, KernelCache::with_row_capacity(3, 3));
        let choice = s.pa_update_step(ws(0, 1), &config).unwrap();
        assert_eq!(choice.kind, StepKind::FreeSmo);
        assert_eq!(choice.mu, 1.0);

        let mut state = SolverState::new(&p);
        state.push_history(record(ws(0, 2), StepKind::ClippedSmo, 0.1, 0.5));
        let mut s = Solver::with_state(&p, KernelCache::with_row_capacity(3, 3), state.clone());
        assert_eq!(s.pa_update_step(ws(0, 1), &config).unwrap().plan, None);

        // the any-step predictor plans after clipped steps too
        let any = PaConfig {
            variant: PaVariant::AnyStepPredictor,
            ..PaConfig::default()
        };
        let mut s = Solver::with_state(&p, KernelCache::with_row_capacity(3, 3), state);
        assert_eq!(
            s.pa_update_step(ws(0, 1), &any).unwrap().kind,
            StepKind::Planning
        );
    }

    #[test]
    fn plan_hitting_the_box_falls_back() {
        // same geometry, but C = 0.5 puts the planned point outside the box
        let p = identity_problem(&[1.0, -1.0, -1.0], 0.5);
        let mut state = SolverState::new(&p);
        state.push_history(record(ws(0, 2), StepKind::FreeSmo, 0.25, 0.25));
        let mut s = Solver::with_state(&p, KernelCache::with_row_capacity(3, 3), state);
        assert!(!s.plan_ahead(ws(0, 1), ws(0, 2)).unwrap().both_free);
        let choice = s.pa_update_step(ws(0, 1), &PaConfig::default()).unwrap();
        assert_eq!(choice.kind, StepKind::ClippedSmo);
        assert_eq!(choice.mu, 0.5);
    }

    #[test]
    fn multi_plan_keeps_the_larger_double_gain() {
        // candidate (0,2) couples with (0,1) through Q12 = 1, candidate (3,4)
        // is decoupled; both plans stay inside the box
        let p = identity_problem(&[1.0, -1.0, -1.0, 1.0, -1.0], 10.0);
        let mut state = SolverState::new(&p);
        state.push_history(record(ws(3, 4), StepKind::FreeSmo, 0.5, 0.5));
        state.push_history(record(ws(0, 2), StepKind::FreeSmo, 0.5, 0.5));
        let mut s = Solver::with_state(&p, KernelCache::with_row_capacity(5, 5), state);
        let coupled = s.plan_ahead(ws(0, 1), ws(0, 2)).unwrap();
        let decoupled = s.plan_ahead(ws(0, 1), ws(3, 4)).unwrap();
        assert!((coupled.double_gain - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(decoupled.double_gain, 2.0);
        let best = s.multi_plan(ws(0, 1), 2).unwrap().unwrap();
        assert_eq!(best.context.b2, ws(3, 4));
        let only_recent = s.multi_plan(ws(0, 1), 1).unwrap().unwrap();
        assert_eq!(only_recent.context.b2, ws(0, 2));
    }

    #[test]
    fn multi_plan_without_usable_candidates() {
        let p = identity_problem(&[1.0, -1.0, -1.0], 0.5);
        let mut state = SolverState::new(&p);
        state.push_history(record(ws(0, 1), StepKind::FreeSmo, 0.25, 0.25));
        state.push_history(record(ws(0, 2), StepKind::FreeSmo, 0.25, 0.25));
        let mut s = Solver::with_state(&p, KernelCache::with_row_capacity(3, 3), state);
        // (0,1) against itself is degenerate, (0,2) leaves the box
        assert_eq!(s.multi_plan(ws(0, 1), 2).unwrap(), None);
    }

    #[test]
    fn scaled_newton_update_cases() {
        let p = identity_problem(&[1.0, -1.0], 10.0);
        let mut s = Solver::new(&p, KernelCache::with_row_capacity(2, 2));
        let mu = s.scaled_newton_update(ws(0, 1), 1.1).unwrap();
        assert!((mu - 1.1).abs() < 1e-15);
        let plan = s.newton_step(ws(0, 1)).unwrap();
        assert!((plan.gain_at(mu) - 0.99).abs() < 1e-12);
        assert_eq!(s.scaled_newton_update(ws(0, 1), 1.0).unwrap(), plan.mu);

        let p = identity_problem(&[1.0, -1.0], 1.05);
        let mut s = Solver::new(&p, KernelCache::with_row_capacity(2, 2));
        assert_eq!(s.scaled_newton_update(ws(0, 1), 1.1).unwrap(), 1.05);
    }

    #[test]
    fn config_validation() {
        assert!(PaConfig::default().validate().is_ok());
        for eta in [0.0, 1.0, -0.1, f64::NAN] {
            assert!(PaConfig {
                eta,
                ..PaConfig::default()
            }
            .validate()
            .is_err());
        }
        for sets in [0, 21] {
            let c = PaConfig {
                variant: PaVariant::Multi { sets },
                ..PaConfig::default()
            };
            assert!(c.validate().is_err());
        }
        let c = PaConfig {
            variant: PaVariant::ScaledNewton { factor: 0.0 },
            ..PaConfig::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn selection_after_non_planning_steps_is_standard() {
        let p = identity_problem(&[1.0, -1.0, -1.0, 1.0], 10.0);
        let config = PaConfig::default();
        let mut state = SolverState::new(&p);
        state.push_history(record(ws(3, 2), StepKind::FreeSmo, 0.5, 0.5));
        state.push_history(record(ws(0, 1), StepKind::FreeSmo, 0.5, 0.5));
        let mut s = Solver::with_state(&p, KernelCache::with_row_capacity(4, 4), state);
        let standard = s.select_working_set_standard();
        assert_eq!(s.select_working_set_pa(&config), standard);
    }
}
