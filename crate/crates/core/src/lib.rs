//! Solvers for the dual SVM training problem
//!
//! ```text
//! maximize    y'alpha - 1/2 alpha'K alpha
//! subject to  sum(alpha) = 0,  min(0, y_i C) <= alpha_i <= max(0, y_i C)
//! ```
//!
//! [`smo_solve`] runs sequential minimal optimization with second-order
//! working set selection; [`pa_solve`] adds planning-ahead steps. The
//! [`oracle`] module holds an independent dense solver for small instances.

// negated comparisons are kept so that NaN falls on the rejecting side
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;

pub mod cache;
pub mod oracle;
pub mod planning;
pub mod problem;
pub mod solver;

pub use error::{Error, Result};
pub use planning::{pa_solve, PaConfig, PaVariant};
pub use problem::{Dataset, KernelSpec, Label, PrecomputedKernel, SparseVector, TrainingProblem};
pub use solver::{smo_solve, SolveReport, SolverConfig, StepKind, WorkingSet};
