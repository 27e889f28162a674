//! Exact tables of the generalized Fibonacci sequences that drive the search.
//!
//! For a weight vector `w_0..w_{h-1}` two sequences matter:
//!
//! * `level_count(k)`: the number of nodes at level `k` of the complete
//!   (unbounded) decision tree. It satisfies `c(k) = Σ_i c(k - w_i)` with
//!   `c(0) = 1` and `c(k) = 0` for `k < 0`. For weights `(1,2)` this is the
//!   classic Fibonacci sequence.
//! * `leaf_capacity(k)`: the maximum number of leaves any decision tree of
//!   level at most `k` can have: the sum of the last `min_weight` terms of
//!   `level_count`. The least `k` with `leaf_capacity(k) >= n` is the
//!   worst-case cost lower bound for searching among `n` items.
//!
//! Values grow exponentially, so the table stores exact big integers.
//! Extension is append-only and lazy; a fully built table is immutable and
//! safe to read from any number of threads.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::weights::Weights;

/// Result of [`FibTable::min_level_for`]: the smallest level whose leaf
/// capacity reaches the requested item count, together with that capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelBound {
    /// Worst-case cost lower bound in canonical units.
    pub level: u64,
    /// `leaf_capacity(level)`.
    pub capacity: BigUint,
}

/// Memoized exact values of the two sequences for one weight vector.
#[derive(Debug, Clone)]
pub struct FibTable {
    weights: Weights,
    counts: Vec<BigUint>,
    capacities: Vec<BigUint>,
}

impl FibTable {
    pub fn new(weights: Weights) -> Self {
        FibTable {
            weights,
            counts: Vec::new(),
            capacities: Vec::new(),
        }
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    /// Highest index currently materialized, if any.
    pub fn computed_up_to(&self) -> Option<u64> {
        self.counts.len().checked_sub(1).map(|k| k as u64)
    }

    fn ensure(&mut self, k: u64) {
        let ell = self.weights.min_weight() as usize;
        while self.counts.len() <= k as usize {
            let next = self.counts.len();
            let value = if next == 0 {
                BigUint::one()
            } else {
                let mut sum = BigUint::zero();
                for &w in self.weights.values() {
                    if let Some(idx) = next.checked_sub(w as usize) {
                        sum += &self.counts[idx];
                    }
                }
                sum
            };
            self.counts.push(value);
            // capacity(k) = counts(k) + ... + counts(k - ell + 1)
            let mut cap = BigUint::zero();
            for i in 0..ell {
                if let Some(idx) = next.checked_sub(i) {
                    cap += &self.counts[idx];
                }
            }
            self.capacities.push(cap);
        }
    }

    /// Number of nodes at level `k` of the complete decision tree.
    /// Zero for negative `k`.
    pub fn level_count(&mut self, k: i64) -> BigUint {
        if k < 0 {
            return BigUint::zero();
        }
        self.ensure(k as u64);
        self.counts[k as usize].clone()
    }

    /// Maximum leaf count of a decision tree with level at most `k`.
    /// Zero for negative `k`.
    pub fn leaf_capacity(&mut self, k: i64) -> BigUint {
        if k < 0 {
            return BigUint::zero();
        }
        self.ensure(k as u64);
        self.capacities[k as usize].clone()
    }

    /// `min(leaf_capacity(k), cap)` without materializing a big integer at
    /// the call site. Used by the search loop, where capacities only matter
    /// up to the current interval size.
    pub fn leaf_capacity_capped(&mut self, k: i64, cap: u64) -> u64 {
        if k < 0 {
            return 0;
        }
        self.ensure(k as u64);
        let v = &self.capacities[k as usize];
        match v.to_u64() {
            Some(small) => small.min(cap),
            None => cap,
        }
    }

    /// Exact `leaf_capacity(k)` as `u128`, or `None` if it does not fit.
    pub fn leaf_capacity_u128(&mut self, k: i64) -> Option<u128> {
        if k < 0 {
            return Some(0);
        }
        self.ensure(k as u64);
        self.capacities[k as usize].to_u128()
    }

    /// Smallest `k >= 0` with `leaf_capacity(k) >= n`, plus that capacity.
    /// This is the worst-case cost lower bound for `n` items.
    pub fn min_level_for(&mut self, n: u64) -> LevelBound {
        let n = BigUint::from(n.max(1));
        let mut k = 0u64;
        loop {
            self.ensure(k);
            if self.capacities[k as usize] >= n {
                return LevelBound {
                    level: k,
                    capacity: self.capacities[k as usize].clone(),
                };
            }
            k += 1;
        }
    }
}
