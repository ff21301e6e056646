//! Data handling and the benchmark harness around the `pasmo-core` solvers.

pub mod chessboard;
mod error;
mod float_repr;
pub mod histogram;
pub mod instances;
pub mod libsvm;
pub mod permute;
pub mod report;
pub mod run;

pub use error::{BenchError, Result};
