//! Reference solutions and verifiers for small problems.
//!
//! Nothing here uses the solver: kernel values come straight from the
//! problem, gradients are recomputed densely, and the reference optimum is
//! found by enumerating every assignment of the variables to
//! lower bound / upper bound / free and solving the equality-constrained
//! system on the free ones.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::problem::TrainingProblem;
use crate::solver::SolverState;

pub const MAX_ORACLE_LEN: usize = 12;

/// Gap below which a candidate counts as a KKT point.
pub const CERTIFICATION_GAP: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarStatus {
    AtLower,
    AtUpper,
    Free,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleSolution {
    pub alpha: Vec<f64>,
    pub objective: f64,
    pub status: Vec<VarStatus>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KktCheck {
    pub satisfied: bool,
    pub gap: f64,
}

fn gram(problem: &TrainingProblem) -> DMatrix<f64> {
    let n = problem.len();
    DMatrix::from_fn(n, n, |i, j| problem.kernel_value(i, j))
}

fn dense_gradient(problem: &TrainingProblem, k: &DMatrix<f64>, alpha: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(problem.y()) - k * DVector::from_column_slice(alpha)
}

fn dense_objective(problem: &TrainingProblem, k: &DMatrix<f64>, alpha: &[f64]) -> f64 {
    let a = DVector::from_column_slice(alpha);
    DVector::from_column_slice(problem.y()).dot(&a) - 0.5 * a.dot(&(k * &a))
}

fn gap_of(problem: &TrainingProblem, alpha: &[f64], g: &DVector<f64>) -> f64 {
    let (lo, up) = (problem.lower(), problem.upper());
    let mut max_up = f64::NEG_INFINITY;
    let mut min_down = f64::INFINITY;
    for (n, &a) in alpha.iter().enumerate() {
        if a < up[n] {
            max_up = max_up.max(g[n]);
        }
        if a > lo[n] {
            min_down = min_down.min(g[n]);
        }
    }
    if max_up == f64::NEG_INFINITY || min_down == f64::INFINITY {
        f64::NEG_INFINITY
    } else {
        max_up - min_down
    }
}

/// Objective `y'alpha - 1/2 alpha'K alpha` evaluated densely.
pub fn objective(problem: &TrainingProblem, alpha: &[f64]) -> Result<f64> {
    if alpha.len() != problem.len() {
        return Err(Error::DimensionMismatch {
            expected: problem.len(),
            got: alpha.len(),
        });
    }
    Ok(dense_objective(problem, &gram(problem), alpha))
}

/// Exact optimum by active-set enumeration (`3^len` candidates).
pub fn dense_reference_solve(problem: &TrainingProblem) -> Result<OracleSolution> {
    let n = problem.len();
    if n > MAX_ORACLE_LEN {
        return Err(Error::OracleTooLarge {
            len: n,
            max: MAX_ORACLE_LEN,
        });
    }
    let k = gram(problem);
    let (lo, up, y) = (problem.lower(), problem.upper(), problem.y());
    let box_tol = 1e-9 * problem.c().max(1.0);

    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut digits = vec![0u8; n];
    let total = 3usize.pow(n as u32);
    let mut alpha = vec![0.0; n];
    for code in 0..total {
        let mut rest = code;
        for d in digits.iter_mut() {
            *d = (rest % 3) as u8;
            rest /= 3;
        }
        let free: Vec<usize> = (0..n).filter(|&v| digits[v] == 2).collect();
        for v in 0..n {
            alpha[v] = match digits[v] {
                0 => lo[v],
                1 => up[v],
                _ => 0.0,
            };
        }
        let fixed_sum: f64 = alpha.iter().sum();
        if free.is_empty() {
            if fixed_sum.abs() > problem.equality_tolerance() {
                continue;
            }
        } else if !solve_free(&k, y, &free, &mut alpha, fixed_sum) {
            continue;
        }
        if free
            .iter()
            .any(|&v| alpha[v] < lo[v] - box_tol || alpha[v] > up[v] + box_tol)
        {
            continue;
        }
        for &v in &free {
            alpha[v] = alpha[v].clamp(lo[v], up[v]);
        }
        if problem.check_feasible(&alpha).is_err() {
            continue;
        }
        let g = dense_gradient(problem, &k, &alpha);
        if !(gap_of(problem, &alpha, &g) <= CERTIFICATION_GAP) {
            continue;
        }
        let f = dense_objective(problem, &k, &alpha);
        if best.as_ref().is_none_or(|(_, b)| f > *b) {
            best = Some((alpha.clone(), f));
        }
    }

    let (alpha, objective) = best.ok_or(Error::OracleNoSolution)?;
    let status = alpha
        .iter()
        .enumerate()
        .map(|(v, &a)| {
            if a == lo[v] {
                VarStatus::AtLower
            } else if a == up[v] {
                VarStatus::AtUpper
            } else {
                VarStatus::Free
            }
        })
        .collect();
    Ok(OracleSolution {
        alpha,
        objective,
        status,
    })
}

/// Solves `[K_FF 1; 1' 0] [a_F; nu] = [y_F - K_FA a_A; -sum a_A]` in the
/// least-squares sense and accepts the result only if it solves the system.
fn solve_free(
    k: &DMatrix<f64>,
    y: &[f64],
    free: &[usize],
    alpha: &mut [f64],
    fixed_sum: f64,
) -> bool {
    let m = free.len();
    let mut system = DMatrix::zeros(m + 1, m + 1);
    let mut rhs = DVector::zeros(m + 1);
    for (r, &v) in free.iter().enumerate() {
        for (c, &w) in free.iter().enumerate() {
            system[(r, c)] = k[(v, w)];
        }
        system[(r, m)] = 1.0;
        system[(m, r)] = 1.0;
        // free entries of alpha are zero here, so this is K_FA a_A
        let coupled: f64 = (0..alpha.len()).map(|w| k[(v, w)] * alpha[w]).sum();
        rhs[r] = y[v] - coupled;
    }
    rhs[m] = -fixed_sum;

    let svd = system.clone().svd(true, true);
    let scale = svd.singular_values.max().max(1.0);
    let Ok(solution) = svd.solve(&rhs, 1e-12 * scale) else {
        return false;
    };
    let residual = (&system * &solution - &rhs).amax();
    if !(residual <= 1e-9 * rhs.amax().max(1.0)) {
        return false;
    }
    for (r, &v) in free.iter().enumerate() {
        alpha[v] = solution[r];
    }
    true
}

/// Recomputes the gradient from scratch and evaluates the KKT gap.
pub fn verify_kkt(problem: &TrainingProblem, alpha: &[f64], epsilon: f64) -> Result<KktCheck> {
    problem.check_feasible(alpha)?;
    let g = dense_gradient(problem, &gram(problem), alpha);
    let gap = gap_of(problem, alpha, &g);
    Ok(KktCheck {
        satisfied: gap <= epsilon,
        gap,
    })
}

/// `max |G_state - (y - K alpha)|`.
pub fn check_gradient(problem: &TrainingProblem, state: &SolverState) -> f64 {
    let g = dense_gradient(problem, &gram(problem), state.alpha());
    state
        .gradient()
        .iter()
        .zip(g.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}
