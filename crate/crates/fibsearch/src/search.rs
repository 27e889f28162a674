//! Cost-asymmetric Fibonacci search.
//!
//! The algorithm walks the optimal decision tree *implicitly*: it never
//! builds a tree, only the exact sequence tables. Preparation and each
//! search are logarithmic in the number of items.
//!
//! Two modes are provided:
//!
//! * [`Mode::Short`]: worst-case optimal. At a node with remaining budget
//!   `b`, outcome `i` is given `leaf_capacity(b - w_i)` items, left to
//!   right, the last nonempty part clamped to whatever remains.
//! * [`Mode::Full`]: worst-case *and* average-case optimal for equiprobable
//!   targets. Conceptually the complete budget tree is pruned down to `n`
//!   leaves by repeatedly deleting the most expensive current leaf
//!   (rightmost first among ties) and skipping any comparison left with a
//!   single possible outcome. The implementation never prunes anything: it
//!   counts, per budget, how many greedy deletions happen at each priority
//!   level and reads the part sizes straight out of those tables.
//!
//! # The probe contract
//!
//! The search does not touch the caller's data. Each round it emits a
//! [`ProbeRequest`] carrying the current index interval and `h - 1` *cut
//! positions*: `cuts[i]` is the first index that does **not** belong to
//! outcomes `0..=i`, so outcome `i` covers `cuts[i-1] .. cuts[i]` (half
//! open, with `cuts[-1] = left` and `cuts[h-1] = right + 1`). Equal adjacent
//! cuts mark an outcome that can never occur. For a sorted array the
//! comparison behind outcome `i` is `x <= v[cuts[i] - 1]`; an implementor
//! over an implicit domain only needs to locate its hidden target relative
//! to the cuts. The probe must answer deterministically and consistently
//! with a fixed target; inconsistencies are detected and reported with the
//! trace gathered so far.

use num_rational::Ratio;
use thiserror::Error;

use crate::sequences::FibTable;
use crate::weights::Weights;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Short,
    Full,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Short => f.write_str("short"),
            Mode::Full => f.write_str("full"),
        }
    }
}

/// One comparison request. See the module docs for the cut convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeRequest {
    /// Current interval of uncertainty, inclusive on both ends.
    pub interval: (u64, u64),
    /// `arity - 1` nondecreasing cut positions inside the interval.
    pub cuts: Vec<u64>,
}

/// A probe answer as recorded in the trace: the outcome index together with
/// the canonical cost it was charged (`charged_cost == weights[outcome]`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeOutcome {
    pub outcome_index: usize,
    pub charged_cost: u64,
}

/// Answers probe requests for one fixed hidden target.
pub trait Probe {
    /// Returns the outcome index the hidden target falls into.
    fn answer(&mut self, request: &ProbeRequest) -> usize;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStep {
    pub request: ProbeRequest,
    pub outcome: ProbeOutcome,
}

/// Complete record of one search: every probe, the per-probe remaining
/// budgets, the total canonical cost, and the cost scaled back to the
/// caller's weight units.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTrace {
    pub steps: Vec<SearchStep>,
    /// Remaining cost budget immediately before each probe.
    pub budgets: Vec<u64>,
    pub total_cost: u64,
    pub scaled_cost: Ratio<u128>,
    pub result_index: u64,
}

impl SearchTrace {
    pub fn outcomes(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.outcome.outcome_index).collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("cannot search among zero items")]
    EmptyDomain,
    #[error(
        "inconsistent probe: outcome {outcome} at step {step} is impossible \
         (no items in that part); trace so far: {trace:?}"
    )]
    InconsistentProbe {
        outcome: usize,
        step: usize,
        trace: Box<SearchTrace>,
    },
    #[error("input array is not sorted: element {index} is smaller than its predecessor")]
    UnsortedInput { index: usize },
}

/// Counts, for the complete tree of every budget `b <= k`, how many greedy
/// leaf deletions happen while the current maximum leaf level is at least
/// `lam`. The deletion process removes the deepest leaf (rightmost among
/// ties) and skips comparisons left with one possible outcome, so a whole
/// subtree's deletions interleave as a priority merge of its children's
/// deletions. That merge is what the recurrence below counts:
///
/// `R_b(lam) = sum_i [ R_{b-w_i}(lam - w_i) + emptied_i(lam) ]`
///
/// where `emptied_i` accounts for the single deletion that removes a
/// child's last leaf (level `w_i`), allowed for every child except the one
/// that survives to the end, the leftmost cheapest.
#[derive(Debug, Clone)]
struct SurplusTable {
    weights: Weights,
    /// Exact leaf capacity per budget.
    caps: Vec<u128>,
    /// `rows[b][lam]`, `lam` in `0..=b+1`; index 0 duplicates `caps[b]-1`.
    rows: Vec<Vec<u128>>,
    /// Leftmost cheapest fitting outcome per budget (`None` below the
    /// second-smallest weight, where no comparison fits).
    survivor: Vec<Option<usize>>,
}

impl SurplusTable {
    fn build(table: &mut FibTable, k: u64) -> SurplusTable {
        let weights = table.weights().clone();
        let w = weights.values().to_vec();
        let mut t = SurplusTable {
            weights,
            caps: Vec::with_capacity(k as usize + 1),
            rows: Vec::with_capacity(k as usize + 1),
            survivor: Vec::with_capacity(k as usize + 1),
        };
        for b in 0..=k {
            let cap = table
                .leaf_capacity_u128(b as i64)
                .expect("leaf capacity fits u128 for any u64 item count");
            t.caps.push(cap);
            let fitting: Vec<usize> = (0..w.len()).filter(|&i| w[i] <= b).collect();
            if fitting.len() < 2 {
                t.survivor.push(None);
                t.rows.push(vec![0; b as usize + 2]);
                continue;
            }
            let survivor = fitting
                .iter()
                .copied()
                .min_by_key(|&i| w[i])
                .expect("at least two fitting outcomes");
            t.survivor.push(Some(survivor));
            let mut row = vec![0u128; b as usize + 2];
            for lam in 1..=(b as i64 + 1) {
                let mut sum = 0u128;
                for i in 0..w.len() {
                    sum += t.child_removals(b, i, lam);
                }
                row[lam as usize] = sum;
            }
            debug_assert_eq!(row[1], cap - 1, "every deletion has priority >= 1");
            row[0] = row[1];
            t.rows.push(row);
        }
        t
    }

    fn budget(&self) -> u64 {
        self.caps.len() as u64 - 1
    }

    /// `R_b(lam)`: greedy deletions with priority at least `lam`.
    fn removals(&self, b: i64, lam: i64) -> u128 {
        if b < 0 {
            return 0;
        }
        let b = b as usize;
        if lam <= 0 {
            return self.caps[b].saturating_sub(1);
        }
        if lam as usize >= self.rows[b].len() {
            return 0;
        }
        self.rows[b][lam as usize]
    }

    /// Deletions absorbed by child `i` of a budget-`b` node, at priority at
    /// least `lam`: the child's own deletions shifted by the edge weight,
    /// plus possibly the one deletion that empties it outright.
    fn child_removals(&self, b: u64, i: usize, lam: i64) -> u128 {
        let w = self.weights.values()[i];
        if w > b {
            return 0;
        }
        let own = self.removals(b as i64 - w as i64, lam - w as i64);
        let empties = self.survivor[b as usize] != Some(i) && w as i64 >= lam;
        own + u128::from(empties)
    }

    /// Exact leaf capacity of the budget-`b` subtree under outcome `i`.
    fn child_capacity(&self, b: u64, i: usize) -> u128 {
        let w = self.weights.values()[i];
        if w > b {
            0
        } else {
            self.caps[(b - w) as usize]
        }
    }

    /// Part sizes for `m` items at budget `b` under full-mode pruning: the
    /// surplus `capacity - m` is charged to the children in deletion order
    /// (highest priority first, rightmost child first among equal
    /// priorities).
    fn split(&self, b: u64, m: u64) -> Vec<u64> {
        let h = self.weights.arity();
        let surplus = self.caps[b as usize] - m as u128;
        if surplus == 0 {
            return (0..h).map(|i| self.child_capacity(b, i) as u64).collect();
        }
        let mut lam = 1i64;
        for cand in (1..=b as i64).rev() {
            if self.removals(b as i64, cand) >= surplus {
                lam = cand;
                break;
            }
        }
        let mut charged: Vec<u128> = (0..h).map(|i| self.child_removals(b, i, lam + 1)).collect();
        let mut extra = surplus - charged.iter().sum::<u128>();
        for i in (0..h).rev() {
            let room = self.child_removals(b, i, lam) - charged[i];
            let take = extra.min(room);
            charged[i] += take;
            extra -= take;
        }
        debug_assert_eq!(extra, 0, "surplus fully assigned");
        let parts: Vec<u64> = (0..h)
            .map(|i| (self.child_capacity(b, i) - charged[i]) as u64)
            .collect();
        debug_assert_eq!(parts.iter().map(|&p| p as u128).sum::<u128>(), m as u128);
        parts
    }
}

/// Reusable search state for one weight vector: the sequence table plus the
/// full-mode deletion counts, both grown lazily and shared across searches.
#[derive(Debug, Clone)]
pub struct Searcher {
    table: FibTable,
    surplus: Option<SurplusTable>,
}

impl Searcher {
    pub fn new(weights: Weights) -> Self {
        Searcher {
            table: FibTable::new(weights),
            surplus: None,
        }
    }

    pub fn weights(&self) -> &Weights {
        self.table.weights()
    }

    pub fn table(&self) -> &FibTable {
        &self.table
    }

    fn short_split(&mut self, b: u64, m: u64) -> Vec<u64> {
        let w = self.table.weights().values().to_vec();
        let mut remaining = m;
        let mut parts = Vec::with_capacity(w.len());
        for &wi in &w {
            let take = self.table.leaf_capacity_capped(b as i64 - wi as i64, remaining);
            parts.push(take);
            remaining -= take;
        }
        debug_assert_eq!(remaining, 0, "interval fits the budget capacity");
        parts
    }

    /// Grows the tables for an `n`-item search and returns the starting
    /// budget (the worst-case lower bound).
    pub(crate) fn prepare(&mut self, n: u64, mode: Mode) -> u64 {
        let budget = self.table.min_level_for(n).level;
        if mode == Mode::Full && self.surplus.as_ref().is_none_or(|s| s.budget() < budget) {
            self.surplus = Some(SurplusTable::build(&mut self.table, budget));
        }
        budget
    }

    /// Part sizes for `m` items at the given remaining budget. Callers must
    /// have prepared the searcher for at least this budget.
    pub(crate) fn split_for(&mut self, mode: Mode, budget: u64, m: u64) -> Vec<u64> {
        match mode {
            Mode::Short => self.short_split(budget, m),
            Mode::Full => self
                .surplus
                .as_ref()
                .expect("prepare() builds the surplus table for full mode")
                .split(budget, m),
        }
    }

    /// Runs one search over `n` items against the given probe.
    ///
    /// The worst-case total cost over all targets equals the
    /// [`min_level_for`](FibTable::min_level_for) lower bound in both modes;
    /// full mode additionally minimizes the cost summed over all
    /// equiprobable targets.
    pub fn search(
        &mut self,
        n: u64,
        probe: &mut dyn Probe,
        mode: Mode,
    ) -> Result<SearchTrace, SearchError> {
        if n == 0 {
            return Err(SearchError::EmptyDomain);
        }
        let weights = self.table.weights().clone();
        let w = weights.values().to_vec();
        let h = w.len();
        let mut budget = self.prepare(n, mode);

        let mut left = 0u64;
        let mut right = n - 1;
        let mut steps: Vec<SearchStep> = Vec::new();
        let mut budgets: Vec<u64> = Vec::new();
        let mut total: u64 = 0;
        while left < right {
            let m = right - left + 1;
            let parts = self.split_for(mode, budget, m);
            let occupied: Vec<usize> = (0..h).filter(|&i| parts[i] > 0).collect();
            if let [only] = occupied[..] {
                // every item sits in one part: the comparison would reveal
                // nothing, so it is skipped at zero cost
                budget -= w[only];
                continue;
            }
            let mut cuts = Vec::with_capacity(h - 1);
            let mut acc = left;
            for &part in parts.iter().take(h - 1) {
                acc += part;
                cuts.push(acc);
            }
            let request = ProbeRequest {
                interval: (left, right),
                cuts,
            };
            let answered = probe.answer(&request);
            if answered >= h || parts[answered] == 0 {
                let trace = SearchTrace {
                    steps,
                    budgets,
                    total_cost: total,
                    scaled_cost: weights.scale_cost(total as u128),
                    result_index: left,
                };
                return Err(SearchError::InconsistentProbe {
                    outcome: answered,
                    step: trace.steps.len(),
                    trace: Box::new(trace),
                });
            }
            budgets.push(budget);
            total += w[answered];
            let new_left = left + parts[..answered].iter().sum::<u64>();
            steps.push(SearchStep {
                request,
                outcome: ProbeOutcome {
                    outcome_index: answered,
                    charged_cost: w[answered],
                },
            });
            right = new_left + parts[answered] - 1;
            left = new_left;
            budget -= w[answered];
        }
        Ok(SearchTrace {
            steps,
            budgets,
            total_cost: total,
            scaled_cost: weights.scale_cost(total as u128),
            result_index: left,
        })
    }
}

/// One-shot convenience wrapper around [`Searcher`].
pub fn fib_search(
    n: u64,
    weights: &Weights,
    probe: &mut dyn Probe,
    mode: Mode,
) -> Result<SearchTrace, SearchError> {
    Searcher::new(weights.clone()).search(n, probe, mode)
}

/// Probe for a hidden target known by index: the h-outcome guessing game.
#[derive(Debug, Clone, Copy)]
pub struct IndexProbe {
    pub target: u64,
}

impl Probe for IndexProbe {
    fn answer(&mut self, request: &ProbeRequest) -> usize {
        request.cuts.partition_point(|&c| c <= self.target)
    }
}

/// Probe over a sorted slice: outcome `i` is decided by the comparison
/// `key <= values[cuts[i] - 1]`, skipping parts that hold no items. A key
/// beyond every occupied part is clamped to the last occupied one, so
/// searches for absent keys terminate at a sensible position.
pub struct SliceProbe<'a, T: Ord> {
    values: &'a [T],
    key: &'a T,
}

impl<'a, T: Ord> SliceProbe<'a, T> {
    pub fn new(values: &'a [T], key: &'a T) -> Self {
        SliceProbe { values, key }
    }
}

impl<T: Ord> Probe for SliceProbe<'_, T> {
    fn answer(&mut self, request: &ProbeRequest) -> usize {
        let (left, right) = request.interval;
        let mut prev = left;
        let mut last_occupied = None;
        for (i, &cut) in request.cuts.iter().enumerate() {
            if cut > prev {
                if *self.key <= self.values[cut as usize - 1] {
                    return i;
                }
                last_occupied = Some(i);
            }
            prev = cut;
        }
        if right + 1 > prev {
            return request.cuts.len();
        }
        last_occupied.expect("a probe always has at least two occupied parts")
    }
}

/// Searches a sorted slice and reports whether the key was actually present
/// (the final membership check of the array adapter).
pub fn search_slice<T: Ord>(
    values: &[T],
    key: &T,
    weights: &Weights,
    mode: Mode,
    verify_sorted: bool,
) -> Result<(SearchTrace, bool), SearchError> {
    if values.is_empty() {
        return Err(SearchError::EmptyDomain);
    }
    if verify_sorted {
        for (i, pair) in values.windows(2).enumerate() {
            if pair[0] > pair[1] {
                return Err(SearchError::UnsortedInput { index: i + 1 });
            }
        }
    }
    let mut probe = SliceProbe::new(values, key);
    let trace = fib_search(values.len() as u64, weights, &mut probe, mode)?;
    let found = values[trace.result_index as usize] == *key;
    Ok((trace, found))
}

/// Maximum total cost of a search over all `n` targets.
pub fn worst_case_cost(n: u64, weights: &Weights, mode: Mode) -> u64 {
    let mut searcher = Searcher::new(weights.clone());
    (0..n)
        .map(|target| {
            searcher
                .search(n, &mut IndexProbe { target }, mode)
                .expect("index probes are always consistent")
                .total_cost
        })
        .max()
        .unwrap_or(0)
}

/// Total cost of a search summed over all `n` targets. Divided by `n` this
/// is the expected cost under uniform targets.
pub fn total_cost_sum(n: u64, weights: &Weights, mode: Mode) -> u128 {
    let mut searcher = Searcher::new(weights.clone());
    (0..n)
        .map(|target| {
            searcher
                .search(n, &mut IndexProbe { target }, mode)
                .expect("index probes are always consistent")
                .total_cost as u128
        })
        .sum()
}
