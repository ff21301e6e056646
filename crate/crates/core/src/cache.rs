//! Least-recently-used cache of Gram matrix rows.
//!
//! Rows are dense (`len` values each) because every SMO iteration reads a
//! full row for the gradient update. The budget is a whole number of rows;
//! the recency list is an index-linked list so every operation is O(1).

use std::sync::Arc;

use crate::problem::TrainingProblem;

const NIL: usize = usize::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub evictions: u64,
    pub kernel_evaluations: u64,
}

#[derive(Debug)]
pub struct KernelCache {
    len: usize,
    capacity_rows: usize,
    rows: Vec<Option<Arc<[f64]>>>,
    prev: Vec<usize>,
    next: Vec<usize>,
    // most recently used at `head`, eviction candidate at `tail`
    head: usize,
    tail: usize,
    stored: usize,
    stats: CacheStats,
}

impl KernelCache {
    /// Cache for a problem with `len` examples that holds at most
    /// `capacity_rows` rows (at least one).
    pub fn with_row_capacity(len: usize, capacity_rows: usize) -> Self {
        Self {
            len,
            capacity_rows: capacity_rows.max(1),
            rows: vec![None; len],
            prev: vec![NIL; len],
            next: vec![NIL; len],
            head: NIL,
            tail: NIL,
            stored: 0,
            stats: CacheStats::default(),
        }
    }

    /// Converts a budget in MiB to `floor(budget / row_bytes)` rows; two rows
    /// are always allowed since a single step touches two.
    pub fn with_megabytes(len: usize, megabytes: f64) -> Self {
        let row_bytes = (len.max(1) * std::mem::size_of::<f64>()) as f64;
        let budget = megabytes.max(0.0) * (1u64 << 20) as f64;
        let rows = (budget / row_bytes).floor() as usize;
        Self::with_row_capacity(len, rows.max(2))
    }

    pub fn capacity_rows(&self) -> usize {
        self.capacity_rows
    }

    pub fn capacity_bytes(&self) -> usize {
        self.capacity_rows * self.row_bytes()
    }

    pub fn stored_rows(&self) -> usize {
        self.stored
    }

    pub fn stored_bytes(&self) -> usize {
        self.stored * self.row_bytes()
    }

    pub fn stats(&self) -> CacheStats {
        self.stats
    }

    pub fn contains(&self, i: usize) -> bool {
        self.rows.get(i).is_some_and(Option::is_some)
    }

    fn row_bytes(&self) -> usize {
        self.len * std::mem::size_of::<f64>()
    }

    /// Row `i` of the Gram matrix, computed on a miss. The row becomes the
    /// most recently used one.
    pub fn row(&mut self, problem: &TrainingProblem, i: usize) -> Arc<[f64]> {
        assert_eq!(
            problem.len(),
            self.len,
            "cache built for a different problem"
        );
        assert!(
            i < self.len,
            "row index {i} out of range for {} examples",
            self.len
        );
        if let Some(row) = &self.rows[i] {
            let row = Arc::clone(row);
            self.stats.hits += 1;
            self.unlink(i);
            self.push_front(i);
            return row;
        }
        self.stats.misses += 1;
        while self.stored >= self.capacity_rows {
            self.evict();
        }
        let mut values = vec![0.0; self.len];
        problem.compute_row(i, &mut values);
        self.stats.kernel_evaluations += self.len as u64;
        let row: Arc<[f64]> = values.into();
        self.rows[i] = Some(Arc::clone(&row));
        self.stored += 1;
        self.push_front(i);
        row
    }

    fn evict(&mut self) {
        let victim = self.tail;
        debug_assert_ne!(victim, NIL);
        self.unlink(victim);
        self.rows[victim] = None;
        self.stored -= 1;
        self.stats.evictions += 1;
    }

    fn unlink(&mut self, i: usize) {
        let (p, n) = (self.prev[i], self.next[i]);
        if p == NIL {
            self.head = n;
        } else {
            self.next[p] = n;
        }
        if n == NIL {
            self.tail = p;
        } else {
            self.prev[n] = p;
        }
        self.prev[i] = NIL;
        self.next[i] = NIL;
    }

    fn push_front(&mut self, i: usize) {
        self.prev[i] = NIL;
        self.next[i] = self.head;
        if self.head != NIL {
            self.prev[self.head] = i;
        }
        self.head = i;
        if self.tail == NIL {
            self.tail = i;
        }
    }
}
