//! The chess-board problem: points uniform on `[0, 4)^2`, labelled by the
//! colour of their cell on a 4x4 board.

use pasmo_core::{Dataset, Label, SparseVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const BOARD_SIZE: f64 = 4.0;

/// `+1` on cells where `floor(x1) + floor(x2)` is even.
pub fn chessboard_label(x1: f64, x2: f64) -> Label {
    if (x1.floor() + x2.floor()) % 2.0 == 0.0 {
        Label::Positive
    } else {
        Label::Negative
    }
}

pub fn gen_chessboard(n: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let x1 = rng.gen::<f64>() * BOARD_SIZE;
        let x2 = rng.gen::<f64>() * BOARD_SIZE;
        points.push(SparseVector::from_dense(&[x1, x2]));
        labels.push(chessboard_label(x1, x2));
    }
    Dataset::new(points, labels).expect("one label per point")
}
