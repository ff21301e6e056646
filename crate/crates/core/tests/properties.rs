mod common;

use pasmo_core::oracle::{check_gradient, objective, verify_kkt};
use pasmo_core::planning::PlanContext;
use pasmo_core::solver::{Solver, SolverState};
use pasmo_core::{
    pa_solve, smo_solve, PaConfig, PaVariant, SolverConfig, StepKind, TrainingProblem, WorkingSet,
};
use proptest::prelude::*;
use rand::Rng;

use common::{
    full_cache, problem_from_matrix, random_gram, random_labels, random_problem, random_state,
    random_step, rng,
};

/// A point with `|alpha_i| <= 1` inside a box of size `1e6`, and a pair
/// with positive curvature whose Newton step is far from the box. The step
/// must not be tiny next to `alpha`, or rounding in the coordinate updates
/// dominates the measured gain.
fn free_direction(seed: u64) -> (TrainingProblem, SolverState, WorkingSet) {
    (0..)
        .find_map(|attempt| try_free_direction(seed.wrapping_add(attempt)))
        .expect("some seed yields a free direction")
}

fn try_free_direction(seed: u64) -> Option<(TrainingProblem, SolverState, WorkingSet)> {
    let mut rng = rng(seed);
    let len = rng.gen_range(3..=8);
    let k = random_gram(&mut rng, len);
    let y = random_labels(&mut rng, len);
    let small = problem_from_matrix(k.clone(), &y, 1.0);
    let alpha = random_state(&small, &mut rng, 20).alpha().to_vec();
    let p = problem_from_matrix(k, &y, 1e6);
    let state = SolverState::from_alpha(&p, alpha).unwrap();
    let mut solver = Solver::with_state(&p, full_cache(&p), state.clone());
    let set = WorkingSet::new(rng.gen_range(0..len), rng.gen_range(0..len))?;
    let plan = solver.newton_step(set).ok()?;
    (plan.q > 1e-6
        && plan.newton.abs() > 1e-2
        && 2.0 * plan.newton.abs() < plan.upper.min(-plan.lower))
    .then_some((p, state, set))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gain_along_a_free_direction_is_a_parabola(seed in any::<u64>()) {
        let (p, state, set) = free_direction(seed);
        let mut solver = Solver::with_state(&p, full_cache(&p), state.clone());
        let plan = solver.newton_step(set).unwrap();
        let bound = plan.bound().value();
        for r in [0.5, 1.0, 1.5, 2.0] {
            let mut s = Solver::with_state(&p, full_cache(&p), state.clone());
            let gain = s.apply_step(set, r * plan.newton, StepKind::FreeSmo).unwrap();
            let expected = (2.0 * r - r * r) * bound;
            prop_assert!((gain - expected).abs() <= 1e-10 * bound, "r = {r}: {gain} vs {expected}");
        }
        let mut s = Solver::with_state(&p, full_cache(&p), state);
        let mu = s.scaled_newton_update(set, 1.1).unwrap();
        let gain = s.apply_step(set, mu, StepKind::FreeSmo).unwrap();
        prop_assert!((gain - 0.99 * bound).abs() <= 1e-10 * bound);
    }

    #[test]
    fn planning_step_maximizes_the_double_step_gain(
        w1 in -10.0..10.0f64,
        w2 in -10.0..10.0f64,
        q11 in 0.1..5.0f64,
        q22 in 0.1..5.0f64,
        coupling in -0.99..0.99f64,
        mu in -100.0..100.0f64,
    ) {
        let q12 = coupling * (q11 * q22).sqrt();
        let b = WorkingSet::new(0, 1).unwrap();
        let c = PlanContext { b1: b, b2: b, w1, w2, q11, q22, q12 };
        prop_assume!(!c.is_degenerate());
        let best = c.double_step_gain(c.planning_step().unwrap()).unwrap();
        let other = c.double_step_gain(mu).unwrap();
        prop_assert!(other <= best + 1e-12 * best.abs().max(1.0));
    }
}

#[test]
fn gradient_stays_consistent_over_many_steps() {
    for seed in 0..5 {
        let mut rng = rng(seed);
        let p = random_problem(&mut rng, 8, 10.0);
        let mut solver = Solver::new(&p, full_cache(&p));
        let mut taken = 0;
        while taken < 10_000 {
            if random_step(&mut solver, &mut rng) {
                taken += 1;
                p.check_feasible(solver.state().alpha()).unwrap();
            }
        }
        assert!(check_gradient(&p, solver.state()) <= 1e-8);
    }
}

#[test]
fn smo_steps_never_decrease_the_objective() {
    for seed in 0..50 {
        let p = common::instance(seed);
        let mut solver = Solver::new(&p, full_cache(&p));
        let mut f: f64 = 0.0;
        while let Some(outcome) = solver.iterate_smo(1e-10).unwrap() {
            let next = objective(&p, solver.state().alpha()).unwrap();
            assert!(next >= f - 1e-12 * f.abs().max(1.0), "seed {seed}");
            assert!(outcome.gain >= -1e-12 * f.abs().max(1.0));
            assert!(outcome.gain <= outcome.bound.value() + 1e-12 * f.abs().max(1.0));
            f = next;
        }
    }
}

#[test]
fn planning_double_steps_never_decrease_the_objective() {
    let config = PaConfig {
        solver: SolverConfig {
            epsilon: 1e-10,
            ..SolverConfig::default()
        },
        ..PaConfig::default()
    };
    let mut planning_steps = 0;
    for seed in 0..200 {
        let p = common::instance(seed);
        let mut solver = Solver::new(&p, full_cache(&p));
        let mut before_planning = None;
        let mut f: f64 = 0.0;
        while let Some(outcome) = solver.iterate_pa(&config).unwrap() {
            let next = objective(&p, solver.state().alpha()).unwrap();
            let tolerance = 1e-12 * next.abs().max(1.0);
            if let Some(start) = before_planning.take() {
                assert!(next >= start - tolerance, "seed {seed}");
            }
            if outcome.kind == StepKind::Planning {
                planning_steps += 1;
                before_planning = Some(f);
            } else {
                assert!(next >= f - tolerance, "seed {seed}");
            }
            f = next;
        }
    }
    assert!(planning_steps > 0);
}

#[test]
fn verified_runs_report_no_violations() {
    let base = SolverConfig {
        epsilon: 1e-6,
        verify: true,
        ..SolverConfig::default()
    };
    let variants = [
        PaVariant::PlanningAhead,
        PaVariant::AnyStepPredictor,
        PaVariant::Multi { sets: 4 },
    ];
    for seed in 0..100 {
        let p = common::instance(seed);
        let mut reports = vec![smo_solve(&p, &base).unwrap()];
        for variant in variants {
            reports.push(
                pa_solve(
                    &p,
                    &PaConfig {
                        solver: base.clone(),
                        eta: 0.9,
                        variant,
                    },
                )
                .unwrap(),
            );
        }
        for r in reports {
            let d = r.diagnostics.unwrap();
            assert_eq!(d.feasibility_violations, 0);
            assert_eq!(d.monotonicity_violations, 0);
            assert_eq!(d.double_step_bound_violations, 0, "seed {seed}");
            assert_eq!(d.double_step_decreases, 0);
            assert!(d.max_gradient_deviation <= 1e-10);
            assert!(r.converged);
            assert!(verify_kkt(&p, &r.alpha, base.epsilon).unwrap().satisfied);
            assert_eq!(r.steps.total(), r.iterations);
        }
    }
}
