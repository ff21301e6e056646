//! The benchmark protocol: every permutation of the dataset is solved from
//! scratch with the same configuration.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use pasmo_core::solver::Diagnostics;
use pasmo_core::{
    pa_solve, smo_solve, Dataset, KernelSpec, PaConfig, PaVariant, SolveReport, SolverConfig,
    TrainingProblem,
};
use serde::{Deserialize, Serialize};

use crate::error::{BenchError, Result};
use crate::float_repr;
use crate::permute::permutation;

pub const DEFAULT_NEWTON_FACTOR: f64 = 1.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverChoice {
    Smo,
    Pa,
    /// Planning after every SMO step, free or clipped.
    PaAlg2,
    ScaledNewton,
    Multi(usize),
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverChoice::Smo => f.write_str("smo"),
            SolverChoice::Pa => f.write_str("pa"),
            SolverChoice::PaAlg2 => f.write_str("pa-alg2"),
            SolverChoice::ScaledNewton => f.write_str("scaled-newton"),
            SolverChoice::Multi(n) => write!(f, "multi:{n}"),
        }
    }
}

impl FromStr for SolverChoice {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smo" => Ok(SolverChoice::Smo),
            "pa" => Ok(SolverChoice::Pa),
            "pa-alg2" => Ok(SolverChoice::PaAlg2),
            "scaled-newton" => Ok(SolverChoice::ScaledNewton),
            _ => s
                .strip_prefix("multi:")
                .and_then(|n| n.parse().ok())
                .map(SolverChoice::Multi)
                .ok_or_else(|| BenchError::Config(format!("unknown solver {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub solver: SolverChoice,
    pub epsilon: f64,
    pub eta: f64,
    pub c: f64,
    pub kernel: KernelSpec,
    pub cache_mb: f64,
    pub permutations: usize,
    pub seed: u64,
    pub max_iterations: u64,
    pub newton_factor: f64,
    /// Collect invariant diagnostics during the solve (slow).
    pub verify: bool,
}

impl RunConfig {
    pub fn new(solver: SolverChoice, c: f64, kernel: KernelSpec) -> Self {
        let defaults = SolverConfig::default();
        Self {
            solver,
            epsilon: defaults.epsilon,
            eta: PaConfig::default().eta,
            c,
            kernel,
            cache_mb: defaults.cache_megabytes,
            permutations: 10,
            seed: 0,
            max_iterations: defaults.max_iterations,
            newton_factor: DEFAULT_NEWTON_FACTOR,
            verify: false,
        }
    }

    pub fn pa_config(&self) -> PaConfig {
        let variant = match self.solver {
            SolverChoice::Smo | SolverChoice::Pa => PaVariant::PlanningAhead,
            SolverChoice::PaAlg2 => PaVariant::AnyStepPredictor,
            SolverChoice::ScaledNewton => PaVariant::ScaledNewton {
                factor: self.newton_factor,
            },
            SolverChoice::Multi(sets) => PaVariant::Multi { sets },
        };
        PaConfig {
            solver: SolverConfig {
                epsilon: self.epsilon,
                max_iterations: self.max_iterations,
                cache_megabytes: self.cache_mb,
                verify: self.verify,
                record_trace: false,
            },
            eta: self.eta,
            variant,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.permutations == 0 {
            return Err(BenchError::Config(
                "at least one permutation is required".into(),
            ));
        }
        self.pa_config().validate()?;
        Ok(())
    }
}

/// One solver run on one ordering of the data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub solver: String,
    pub dataset: String,
    pub perm: usize,
    pub seed: u64,
    pub iterations: u64,
    pub time_s: f64,
    #[serde(with = "float_repr")]
    pub f_final: f64,
    #[serde(with = "float_repr")]
    pub kkt_gap: f64,
    pub free_steps: u64,
    pub clipped_steps: u64,
    pub planning_steps: u64,
    pub converged: bool,
    #[serde(with = "float_repr::many", default)]
    pub step_ratio_samples: Vec<f64>,
    #[serde(skip)]
    pub diagnostics: Option<Diagnostics>,
}

impl RunRow {
    fn new(config: &RunConfig, dataset: &str, perm: usize, seed: u64, report: SolveReport) -> Self {
        Self {
            solver: config.solver.to_string(),
            dataset: dataset.to_owned(),
            perm,
            seed,
            iterations: report.iterations,
            time_s: report.elapsed.as_secs_f64(),
            f_final: report.objective,
            kkt_gap: report.kkt_gap,
            free_steps: report.steps.free_smo,
            clipped_steps: report.steps.clipped_smo,
            planning_steps: report.steps.planning,
            converged: report.converged,
            step_ratio_samples: report.step_ratios,
            diagnostics: report.diagnostics,
        }
    }
}

/// Averages over converged runs only.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub solver: String,
    pub dataset: String,
    pub runs: usize,
    pub excluded: usize,
    pub mean_iterations: Option<f64>,
    pub median_iterations: Option<f64>,
    pub mean_time_s: Option<f64>,
    pub mean_f_final: Option<f64>,
}

impl Summary {
    pub fn of(solver: &str, dataset: &str, rows: &[RunRow]) -> Self {
        let kept: Vec<&RunRow> = rows.iter().filter(|r| r.converged).collect();
        let mean = |value: fn(&RunRow) -> f64| {
            (!kept.is_empty())
                .then(|| kept.iter().map(|r| value(r)).sum::<f64>() / kept.len() as f64)
        };
        let mut iterations: Vec<u64> = kept.iter().map(|r| r.iterations).collect();
        iterations.sort_unstable();
        let median_iterations = match iterations.len() {
            0 => None,
            n if n % 2 == 1 => Some(iterations[n / 2] as f64),
            n => Some(0.5 * (iterations[n / 2 - 1] as f64 + iterations[n / 2] as f64)),
        };
        Self {
            solver: solver.to_owned(),
            dataset: dataset.to_owned(),
            runs: rows.len(),
            excluded: rows.len() - kept.len(),
            mean_iterations: mean(|r| r.iterations as f64),
            median_iterations,
            mean_time_s: mean(|r| r.time_s),
            mean_f_final: mean(|r| r.f_final),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub runs: Vec<RunRow>,
    pub summary: Summary,
}

impl BenchReport {
    pub fn from_rows(solver: &str, dataset: &str, mut runs: Vec<RunRow>) -> Self {
        runs.sort_by_key(|r| r.perm);
        let summary = Summary::of(solver, dataset, &runs);
        Self { runs, summary }
    }
}

/// Runs the configured solver on an already built problem.
pub fn solve_problem(config: &RunConfig, problem: &TrainingProblem) -> Result<SolveReport> {
    let pa = config.pa_config();
    let report = match config.solver {
        SolverChoice::Smo => smo_solve(problem, &pa.solver)?,
        _ => pa_solve(problem, &pa)?,
    };
    Ok(report)
}

fn problem_for(
    config: &RunConfig,
    dataset: &Dataset,
    order: Option<&[usize]>,
) -> Result<TrainingProblem> {
    let Some(order) = order else {
        return Ok(TrainingProblem::new(
            dataset.clone(),
            config.kernel.clone(),
            config.c,
        )?);
    };
    let kernel = match &config.kernel {
        KernelSpec::Precomputed(m) => KernelSpec::Precomputed(Arc::new(m.reordered(order))),
        other => other.clone(),
    };
    Ok(TrainingProblem::new(
        dataset.reordered(order),
        kernel,
        config.c,
    )?)
}

/// A single run on the data in file order, reported as permutation 0.
pub fn run_single(config: &RunConfig, dataset: &Dataset, name: &str) -> Result<BenchReport> {
    config.validate()?;
    let problem = problem_for(config, dataset, None)?;
    let report = solve_problem(config, &problem)?;
    let row = RunRow::new(config, name, 0, config.seed, report);
    Ok(BenchReport::from_rows(
        &config.solver.to_string(),
        name,
        vec![row],
    ))
}

/// Permutation `p` shuffles the data with seed `config.seed + p`.
pub fn run_bench(config: &RunConfig, dataset: &Dataset, name: &str) -> Result<BenchReport> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.permutations);
    for perm in 0..config.permutations {
        let seed = config.seed.wrapping_add(perm as u64);
        let order = permutation(dataset.len(), seed);
        let problem = problem_for(config, dataset, Some(&order))?;
        let report = solve_problem(config, &problem)?;
        rows.push(RunRow::new(config, name, perm, seed, report));
    }
    Ok(BenchReport::from_rows(
        &config.solver.to_string(),
        name,
        rows,
    ))
}
