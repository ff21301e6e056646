#![allow(dead_code)]

use std::sync::Arc;

use pasmo_core::cache::KernelCache;
use pasmo_core::solver::{Solver, SolverState};
use pasmo_core::{
    Dataset, KernelSpec, Label, PrecomputedKernel, SparseVector, StepKind, TrainingProblem,
    WorkingSet,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const C_VALUES: [f64; 3] = [0.1, 1.0, 10.0];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn problem_from_matrix(rows: Vec<Vec<f64>>, labels: &[f64], c: f64) -> TrainingProblem {
    let n = rows.len();
    let m = PrecomputedKernel::from_rows(rows).unwrap();
    let labels = labels
        .iter()
        .map(|&v| Label::from_value(v).unwrap())
        .collect();
    let data = Dataset::new(vec![SparseVector::default(); n], labels).unwrap();
    TrainingProblem::new(data, KernelSpec::Precomputed(Arc::new(m)), c).unwrap()
}

/// `K = A'A` for a random `A` with `rank <= len` rows, sometimes with two
/// identical columns so that some directions have zero curvature.
pub fn random_gram(rng: &mut ChaCha8Rng, len: usize) -> Vec<Vec<f64>> {
    let rank = rng.gen_range(1..=len + 1);
    let mut a: Vec<Vec<f64>> = (0..len)
        .map(|_| (0..rank).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    if len > 2 && rng.gen_bool(0.25) {
        let (p, q) = (rng.gen_range(0..len), rng.gen_range(0..len));
        a[q] = a[p].clone();
    }
    (0..len)
        .map(|i| {
            (0..len)
                .map(|j| a[i].iter().zip(&a[j]).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect()
}

pub fn random_labels(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len)
        .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .collect()
}

pub fn random_problem(rng: &mut ChaCha8Rng, len: usize, c: f64) -> TrainingProblem {
    let k = random_gram(rng, len);
    let y = random_labels(rng, len);
    problem_from_matrix(k, &y, c)
}

/// Instance `seed` of the seeded family: `len` in 2..=8, C from [`C_VALUES`].
pub fn instance(seed: u64) -> TrainingProblem {
    let mut rng = rng(seed);
    let len = rng.gen_range(2..=8);
    let c = C_VALUES[rng.gen_range(0..C_VALUES.len())];
    random_problem(&mut rng, len, c)
}

pub fn full_cache(problem: &TrainingProblem) -> KernelCache {
    KernelCache::with_row_capacity(problem.len(), problem.len())
}

/// A uniformly random step along a random feasible pair, or `false` if the
/// drawn pair cannot move.
pub fn random_step(solver: &mut Solver<'_>, rng: &mut ChaCha8Rng) -> bool {
    let len = solver.problem().len();
    let (i, j) = (rng.gen_range(0..len), rng.gen_range(0..len));
    let Some(mut set) = WorkingSet::new(i, j) else {
        return false;
    };
    if !solver.is_feasible_direction(set) {
        set = set.reversed();
        if !solver.is_feasible_direction(set) {
            return false;
        }
    }
    let plan = solver.newton_step(set).unwrap();
    let mu = plan.lower + (plan.upper - plan.lower) * rng.gen::<f64>();
    solver.apply_step(set, mu, StepKind::ClippedSmo).unwrap();
    true
}

/// Feasible point reached by `steps` random steps from zero.
pub fn random_state(problem: &TrainingProblem, rng: &mut ChaCha8Rng, steps: usize) -> SolverState {
    let mut solver = Solver::new(problem, full_cache(problem));
    for _ in 0..steps {
        random_step(&mut solver, rng);
    }
    let alpha = solver.state().alpha().to_vec();
    SolverState::from_alpha(problem, alpha).unwrap()
}
