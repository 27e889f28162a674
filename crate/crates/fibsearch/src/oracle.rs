//! Brute-force dynamic programming oracles and classical baselines.
//!
//! Everything here recomputes optimal search costs from first principles,
//! sharing no machinery with the sequence tables or the search algorithm;
//! oracle equality tests are only meaningful if the two sides are
//! independent. Desk-scale limits keep the exhaustive recursions honest.
//!
//! Because the searched population is uniform, the optimal cost of an
//! interval depends only on its length, so the interval DP is indexed by
//! length. Split enumeration walks boundary tuples in lexicographic order
//! and keeps the first minimum, which makes every oracle output (including
//! the winning split) reproducible byte for byte.

use std::collections::HashMap;

use thiserror::Error;

use crate::weights::Weights;

/// Largest `n` accepted by the exhaustive DPs for two-outcome problems.
pub const MAX_ORACLE_N_BINARY: u64 = 512;
/// Largest `n` accepted for three or more outcomes (the split enumeration is
/// O(n^(h-1)) per interval).
pub const MAX_ORACLE_N_WIDE: u64 = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("n={n} exceeds the desk-scale oracle limit {limit}")]
    LimitExceeded { n: u64, limit: u64 },
    #[error("level cap {cap} is below the optimal worst case {worst}")]
    InfeasibleCap { cap: u64, worst: u64 },
}

fn check_limit(n: u64, weights: &Weights) -> Result<(), OracleError> {
    let limit = if weights.arity() == 2 {
        MAX_ORACLE_N_BINARY
    } else {
        MAX_ORACLE_N_WIDE
    };
    if n > limit {
        return Err(OracleError::LimitExceeded { n, limit });
    }
    Ok(())
}

/// Enumerates every way of splitting `m` items into `h` ordered parts where
/// no single part takes everything, calling `f` with each composition in
/// lexicographic order. Parts may be empty: a comparison is allowed to make
/// some outcome intervals empty (those outcomes then simply never occur),
/// which is essential once there are more outcomes than items.
fn for_each_split(m: u64, h: usize, f: &mut impl FnMut(&[u64])) {
    let mut parts = vec![0u64; h];
    fn rec(m_left: u64, i: usize, parts: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        let h = parts.len();
        if i == h - 1 {
            parts[i] = m_left;
            // reject the degenerate split that makes no progress
            if parts.iter().all(|&p| p < parts.iter().sum::<u64>()) {
                f(parts);
            }
            return;
        }
        for take in 0..=m_left {
            parts[i] = take;
            rec(m_left - take, i + 1, parts, f);
        }
    }
    rec(m, 0, &mut parts, f);
}

/// Exact minimal worst-case cost over all valid decision trees with `n`
/// leaves: `worst(m) = min over splits of max_i (w_i + worst(m_i))` taken
/// over the parts that are nonempty.
pub fn dp_worst(n: u64, weights: &Weights) -> Result<u64, OracleError> {
    check_limit(n, weights)?;
    Ok(dp_worst_table(n, weights)[n as usize])
}

fn dp_worst_table(n: u64, weights: &Weights) -> Vec<u64> {
    let h = weights.arity();
    let w = weights.values();
    let mut worst = vec![0u64; (n + 1) as usize];
    for m in 2..=n {
        let mut best = u64::MAX;
        for_each_split(m, h, &mut |parts| {
            let mut cost = 0u64;
            for (i, &p) in parts.iter().enumerate() {
                if p > 0 {
                    cost = cost.max(w[i] + worst[p as usize]);
                }
            }
            if cost < best {
                best = cost;
            }
        });
        worst[m as usize] = best;
    }
    worst
}

/// The boundary tuple (as part sizes) realizing `dp_worst(n)`, first minimum
/// in lexicographic order. Exposed for reproducibility tests.
pub fn dp_worst_split(n: u64, weights: &Weights) -> Result<Vec<u64>, OracleError> {
    check_limit(n, weights)?;
    let table = dp_worst_table(n, weights);
    let mut best = u64::MAX;
    let mut best_split = vec![n];
    if n >= 2 {
        for_each_split(n, weights.arity(), &mut |parts| {
            let mut cost = 0u64;
            for (i, &p) in parts.iter().enumerate() {
                if p > 0 {
                    cost = cost.max(weights.values()[i] + table[p as usize]);
                }
            }
            if cost < best {
                best = cost;
                best_split = parts.to_vec();
            }
        });
    }
    Ok(best_split)
}

/// Exact minimal total cost summed over all `n` equiprobable targets, over
/// trees whose level does not exceed `level_cap` when one is given. The
/// uniform expected cost is this total divided by `n`.
pub fn dp_expected(
    n: u64,
    weights: &Weights,
    level_cap: Option<u64>,
) -> Result<u128, OracleError> {
    check_limit(n, weights)?;
    if let Some(cap) = level_cap {
        let worst = dp_worst(n, weights)?;
        if cap < worst {
            return Err(OracleError::InfeasibleCap { cap, worst });
        }
    }
    let mut memo: HashMap<(u64, Option<u64>), Option<u128>> = HashMap::new();
    let total = dp_expected_rec(n, weights, level_cap, &mut memo)
        .expect("cap was checked feasible");
    Ok(total)
}

fn dp_expected_rec(
    m: u64,
    weights: &Weights,
    cap: Option<u64>,
    memo: &mut HashMap<(u64, Option<u64>), Option<u128>>,
) -> Option<u128> {
    if m <= 1 {
        return Some(0);
    }
    if let Some(&v) = memo.get(&(m, cap)) {
        return v;
    }
    let w = weights.values().to_vec();
    let mut best: Option<u128> = None;
    for_each_split(m, weights.arity(), &mut |parts| {
        let mut cost: u128 = 0;
        let mut feasible = true;
        for (i, &p) in parts.iter().enumerate() {
            if p == 0 {
                continue;
            }
            let child_cap = match cap {
                Some(c) => {
                    if c < w[i] {
                        feasible = false;
                        break;
                    }
                    Some(c - w[i])
                }
                None => None,
            };
            match dp_expected_rec(p, weights, child_cap, memo) {
                Some(sub) => cost += p as u128 * w[i] as u128 + sub,
                None => {
                    feasible = false;
                    break;
                }
            }
        }
        if feasible && best.is_none_or(|b| cost < b) {
            best = Some(cost);
        }
    });
    memo.insert((m, cap), best);
    best
}

/// Worst-case total cost of textbook midpoint binary search: probe at
/// `floor((left+right)/2)`, outcome true keeps `[left, mid]`, false keeps
/// `[mid+1, right]`. Simulated exactly over interval lengths (the uniform
/// problem makes every interval of equal length behave identically).
pub fn midpoint_binary_cost(n: u64, unit_costs: (u64, u64)) -> u128 {
    fn rec(m: u64, costs: (u64, u64), memo: &mut HashMap<u64, u128>) -> u128 {
        if m <= 1 {
            return 0;
        }
        if let Some(&v) = memo.get(&m) {
            return v;
        }
        let left = m.div_ceil(2);
        let right = m / 2;
        let v = (costs.0 as u128 + rec(left, costs, memo))
            .max(costs.1 as u128 + rec(right, costs, memo));
        memo.insert(m, v);
        v
    }
    rec(n, unit_costs, &mut HashMap::new())
}

/// Worst-case cost of the depth-`ceil(log2 n)` complete comparison tree
/// restricted to its `n` leftmost leaves, with single-child nodes collapsed:
/// `cost(m) = max(c_true + cost(s), c_false + cost(m - s))` where `s` is
/// half the smallest power of two reaching `m`.
pub fn packed_binary_cost(n: u64, unit_costs: (u64, u64)) -> u128 {
    fn rec(m: u64, costs: (u64, u64), memo: &mut HashMap<u64, u128>) -> u128 {
        if m <= 1 {
            return 0;
        }
        if let Some(&v) = memo.get(&m) {
            return v;
        }
        let s = 1u64 << (64 - (m - 1).leading_zeros() - 1);
        let v = (costs.0 as u128 + rec(s, costs, memo))
            .max(costs.1 as u128 + rec(m - s, costs, memo));
        memo.insert(m, v);
        v
    }
    rec(n, unit_costs, &mut HashMap::new())
}
