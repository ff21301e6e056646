//! The dual SVM problem: data, kernels and the box constraints derived from `C`.
//!
//! The problem being solved is
//!
//! ```text
//! maximize   f(a) = y'a - 1/2 a'Ka
//! subject to sum(a) = 0,   L_i <= a_i <= U_i
//! ```
//!
//! with `L_i = min(0, y_i C)` and `U_i = max(0, y_i C)`. All indices in this
//! crate are 0-based; only the sparse feature indices inside a
//! [`SparseVector`] follow the 1-based LIBSVM convention.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Class label of a training point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn from_value(value: f64) -> Result<Self> {
        if value == 1.0 {
            Ok(Label::Positive)
        } else if value == -1.0 {
            Ok(Label::Negative)
        } else {
            Err(Error::InvalidLabel(value))
        }
    }

    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Label::Positive => 1.0,
            Label::Negative => -1.0,
        }
    }
}

/// Sparse feature vector with strictly increasing 1-based indices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseVector {
    entries: Vec<(u32, f64)>,
}

impl SparseVector {
    pub fn new(entries: Vec<(u32, f64)>) -> Result<Self> {
        let mut previous = 0u32;
        for &(index, _) in &entries {
            if index <= previous {
                return Err(Error::NonIncreasingIndex { previous, index });
            }
            previous = index;
        }
        Ok(Self { entries })
    }

    /// Dense coordinates `x_1, x_2, ...` become entries `1:x_1 2:x_2 ...`.
    pub fn from_dense(values: &[f64]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .map(|(k, &v)| (k as u32 + 1, v))
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sparse dot product; summation runs over matching indices in
    /// increasing order, so `a.dot(b)` and `b.dot(a)` are bit-identical.
    pub fn dot(&self, other: &SparseVector) -> f64 {
        let (a, b) = (&self.entries, &other.entries);
        let (mut p, mut q) = (0, 0);
        let mut sum = 0.0;
        while p < a.len() && q < b.len() {
            match a[p].0.cmp(&b[q].0) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    sum += a[p].1 * b[q].1;
                    p += 1;
                    q += 1;
                }
            }
        }
        sum
    }

    pub fn squared_norm(&self) -> f64 {
        self.dot(self)
    }
}

/// Labelled training points.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Dataset {
    points: Vec<SparseVector>,
    labels: Vec<Label>,
}

impl Dataset {
    pub fn new(points: Vec<SparseVector>, labels: Vec<Label>) -> Result<Self> {
        if points.len() != labels.len() {
            return Err(Error::LengthMismatch {
                points: points.len(),
                labels: labels.len(),
            });
        }
        Ok(Self { points, labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> &[SparseVector] {
        &self.points
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Reorders the examples; `order[k]` is the old position of the new `k`-th example.
    pub fn reordered(&self, order: &[usize]) -> Self {
        Self {
            points: order.iter().map(|&k| self.points[k].clone()).collect(),
            labels: order.iter().map(|&k| self.labels[k]).collect(),
        }
    }
}

/// A user supplied, symmetric `n x n` Gram matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PrecomputedKernel {
    n: usize,
    values: Vec<f64>,
}

impl PrecomputedKernel {
    pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::PrecomputedShape(values.len(), n));
        }
        for r in 0..n {
            for c in (r + 1)..n {
                if (values[r * n + c] - values[c * n + r]).abs() > Self::SYMMETRY_TOLERANCE {
                    return Err(Error::PrecomputedAsymmetric(r, c));
                }
            }
        }
        Ok(Self { n, values })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::PrecomputedShape(n * row.len(), n));
            }
            values.extend(row);
        }
        Self::new(n, values)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Result<f64> {
        for index in [i, j] {
            if index >= self.n {
                return Err(Error::IndexOutOfRange { index, len: self.n });
            }
        }
        Ok(self.values[i * self.n + j])
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    /// The matrix for examples reordered as in [`Dataset::reordered`].
    pub fn reordered(&self, order: &[usize]) -> Self {
        let values = order
            .iter()
            .flat_map(|&r| order.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.values[r * self.n + c])
            .collect();
        Self {
            n: order.len(),
            values,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum KernelSpec {
    /// `exp(-gamma * |a - b|^2)`
    Gaussian {
        gamma: f64,
    },
    Linear,
    Precomputed(Arc<PrecomputedKernel>),
}

impl KernelSpec {
    pub fn gaussian(gamma: f64) -> Result<Self> {
        if gamma > 0.0 && gamma.is_finite() {
            Ok(KernelSpec::Gaussian { gamma })
        } else {
            Err(Error::InvalidGamma(gamma))
        }
    }

    /// Evaluates a vector kernel. Precomputed kernels only know indices; use
    /// [`KernelSpec::eval_indexed`] for those.
    pub fn eval(&self, a: &SparseVector, b: &SparseVector) -> Result<f64> {
        match self {
            KernelSpec::Gaussian { gamma } => Ok(gaussian_value(
                *gamma,
                a.squared_norm(),
                b.squared_norm(),
                a.dot(b),
            )),
            KernelSpec::Linear => Ok(a.dot(b)),
            KernelSpec::Precomputed(_) => Err(Error::NotVectorKernel),
        }
    }

    /// Kernel value between examples `i` and `j` of `dataset`.
    pub fn eval_indexed(&self, dataset: &Dataset, i: usize, j: usize) -> Result<f64> {
        match self {
            KernelSpec::Precomputed(matrix) => matrix.get(i, j),
            _ => {
                let points = dataset.points();
                for index in [i, j] {
                    if index >= points.len() {
                        return Err(Error::IndexOutOfRange {
                            index,
                            len: points.len(),
                        });
                    }
                }
                self.eval(&points[i], &points[j])
            }
        }
    }
}

/// Gaussian kernel from precomputed norms; rounding can make the expanded
/// squared distance slightly negative, which is clamped to zero.
#[inline]
fn gaussian_value(gamma: f64, norm_a: f64, norm_b: f64, dot: f64) -> f64 {
    let d2 = (norm_a + norm_b - 2.0 * dot).max(0.0);
    (-gamma * d2).exp()
}

/// Immutable instance of the dual problem.
#[derive(Clone, Debug)]
pub struct TrainingProblem {
    dataset: Dataset,
    kernel: KernelSpec,
    c: f64,
    y: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    squared_norms: Vec<f64>,
    diagonal: Vec<f64>,
}

impl TrainingProblem {
    pub fn new(dataset: Dataset, kernel: KernelSpec, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidC(c));
        }
        match &kernel {
            KernelSpec::Gaussian { gamma } if !(*gamma > 0.0 && gamma.is_finite()) => {
                return Err(Error::InvalidGamma(*gamma));
            }
            KernelSpec::Precomputed(matrix) if matrix.size() != dataset.len() => {
                return Err(Error::PrecomputedSize {
                    matrix: matrix.size(),
                    points: dataset.len(),
                });
            }
            _ => {}
        }
        let y: Vec<f64> = dataset.labels().iter().map(|l| l.sign()).collect();
        let lower = y.iter().map(|&yi| f64::min(0.0, yi * c)).collect();
        let upper = y.iter().map(|&yi| f64::max(0.0, yi * c)).collect();
        let squared_norms: Vec<f64> = match kernel {
            KernelSpec::Gaussian { .. } => dataset
                .points()
                .iter()
                .map(SparseVector::squared_norm)
                .collect(),
            _ => Vec::new(),
        };
        let mut problem = Self {
            dataset,
            kernel,
            c,
            y,
            lower,
            upper,
            squared_norms,
            diagonal: Vec::new(),
        };
        problem.diagonal = (0..problem.len())
            .map(|i| problem.kernel_value(i, i))
            .collect();
        Ok(problem)
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Labels as `+1.0` / `-1.0`.
    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    /// `K_ii` for every example.
    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    /// `k(x_i, x_j)`. Panics if an index is out of range.
    #[inline]
    pub fn kernel_value(&self, i: usize, j: usize) -> f64 {
        let points = self.dataset.points();
        match &self.kernel {
            KernelSpec::Gaussian { gamma } => gaussian_value(
                *gamma,
                self.squared_norms[i],
                self.squared_norms[j],
                points[i].dot(&points[j]),
            ),
            KernelSpec::Linear => points[i].dot(&points[j]),
            KernelSpec::Precomputed(matrix) => matrix.values[i * matrix.n + j],
        }
    }

    /// Fills `out` (length `len()`) with row `i` of the Gram matrix.
    pub fn compute_row(&self, i: usize, out: &mut [f64]) {
        match &self.kernel {
            KernelSpec::Precomputed(matrix) => out.copy_from_slice(matrix.row(i)),
            _ => {
                for (j, value) in out.iter_mut().enumerate() {
                    *value = self.kernel_value(i, j);
                }
            }
        }
    }

    /// Dual objective `y'a - 1/2 a'Ka`, built from Gram rows of the nonzero entries of `alpha`.
    pub fn objective(&self, alpha: &[f64]) -> Result<f64> {
        if alpha.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: alpha.len(),
            });
        }
        let mut row = vec![0.0; self.len()];
        let mut linear = 0.0;
        let mut quadratic = 0.0;
        for (i, &ai) in alpha.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            linear += self.y[i] * ai;
            self.compute_row(i, &mut row);
            let k_alpha: f64 = row.iter().zip(alpha).map(|(k, a)| k * a).sum();
            quadratic += ai * k_alpha;
        }
        Ok(linear - 0.5 * quadratic)
    }

    /// Checks the box exactly and the equality constraint within `1e-9 * C * len`.
    pub fn check_feasible(&self, alpha: &[f64]) -> Result<()> {
        if alpha.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: alpha.len(),
            });
        }
        for (i, &a) in alpha.iter().enumerate() {
            if !(self.lower[i] <= a && a <= self.upper[i]) {
                return Err(Error::Infeasible(format!(
                    "alpha[{i}] = {a} outside [{}, {}]",
                    self.lower[i], self.upper[i]
                )));
            }
        }
        let sum: f64 = alpha.iter().sum();
        if sum.abs() > self.equality_tolerance() {
            return Err(Error::Infeasible(format!("sum of alpha is {sum:e}")));
        }
        Ok(())
    }

    pub fn equality_tolerance(&self) -> f64 {
        1e-9 * self.c * self.len().max(1) as f64
    }
}
