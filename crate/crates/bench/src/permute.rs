use pasmo_core::Dataset;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream of the generator reserved for permutations, so that a permutation
/// seed never replays the stream that generated the data.
const PERMUTATION_STREAM: u64 = 1;

/// Seeded Fisher-Yates order; `order[k]` is the old index of the new `k`-th example.
pub fn permutation(len: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(PERMUTATION_STREAM);
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(&mut rng);
    order
}

pub fn permute(dataset: &Dataset, seed: u64) -> Dataset {
    dataset.reordered(&permutation(dataset.len(), seed))
}
