//! Seeded random problems with precomputed, possibly singular, Gram matrices.

use std::sync::Arc;

use pasmo_core::{Dataset, KernelSpec, Label, PrecomputedKernel, SparseVector, TrainingProblem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const C_VALUES: [f64; 3] = [0.1, 1.0, 10.0];

/// `K = A'A` with `A` of random rank; a quarter of the matrices get two
/// identical columns, giving directions of zero curvature.
pub fn random_gram(rng: &mut ChaCha8Rng, len: usize) -> PrecomputedKernel {
    let rank = rng.gen_range(1..=len + 1);
    let mut a: Vec<Vec<f64>> = (0..len)
        .map(|_| (0..rank).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    if len > 2 && rng.gen_bool(0.25) {
        let (p, q) = (rng.gen_range(0..len), rng.gen_range(0..len));
        a[q] = a[p].clone();
    }
    let rows = (0..len)
        .map(|i| {
            (0..len)
                .map(|j| a[i].iter().zip(&a[j]).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    PrecomputedKernel::from_rows(rows).expect("A'A is square and symmetric")
}

pub fn random_problem(rng: &mut ChaCha8Rng, len: usize, c: f64) -> TrainingProblem {
    let kernel = random_gram(rng, len);
    let labels = (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Label::Positive
            } else {
                Label::Negative
            }
        })
        .collect();
    let data =
        Dataset::new(vec![SparseVector::default(); len], labels).expect("one label per point");
    TrainingProblem::new(data, KernelSpec::Precomputed(Arc::new(kernel)), c).expect("valid problem")
}

/// Instance `seed` of the family with 2 to 8 variables and C from [`C_VALUES`].
pub fn instance(seed: u64) -> TrainingProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(2..=8);
    let c = C_VALUES[rng.gen_range(0..C_VALUES.len())];
    random_problem(&mut rng, len, c)
}
