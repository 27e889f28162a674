//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them on success). Every
//! tolerance and threshold is pinned here, in code.
//!
//! Grids used throughout:
//!   binary weights: (1,1) (1,2) (1,3) (2,3) (2,5) (3,4)
//!   ternary weights: (1,1,1) (1,2,2) (1,2,3)

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use fibsearch::oracle::{dp_expected, dp_worst, midpoint_binary_cost, packed_binary_cost};
use fibsearch::search::{total_cost_sum, worst_case_cost, IndexProbe, Mode, Searcher};
use fibsearch::sequences::FibTable;
use fibsearch::tree::{build_counting_tree, build_search_tree, prune_to_size, TreeError};
use fibsearch::varn;
use fibsearch::weights::Weights;

const BINARY_GRID: [[u64; 2]; 6] = [[1, 1], [1, 2], [1, 3], [2, 3], [2, 5], [3, 4]];
const TERNARY_GRID: [[u64; 3]; 3] = [[1, 1, 1], [1, 2, 2], [1, 2, 3]];

fn weights(values: &[u64]) -> Weights {
    Weights::from_integers(values).unwrap()
}

/// ceil(log2 n) for n >= 1.
fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as u64
    }
}

#[test]
fn criterion_1_crash_test_reproduction() {
    let start = Instant::now();
    let w = weights(&[1, 3]);
    let mut table = FibTable::new(w.clone());
    assert_eq!(table.leaf_capacity(13), BigUint::from(88u32));
    assert_eq!(table.leaf_capacity(14), BigUint::from(129u32));
    let bound = table.min_level_for(101);
    assert_eq!(bound.level, 14);

    let unit = 500u128;
    let worst = worst_case_cost(101, &w, Mode::Short);
    assert_eq!(worst, 14);
    let fib_cost = w.scale_cost(worst as u128) * num_rational::Ratio::from_integer(unit);
    assert_eq!(fib_cost, num_rational::Ratio::from_integer(7000u128));

    assert_eq!(packed_binary_cost(101, (500, 1500)), 9500);
    assert!(midpoint_binary_cost(101, (500, 1500)) <= 10500);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, limit 1s");
    println!(
        "criterion 1 PASS: bound 14 (88/129), fib worst 7000, packed 9500, \
         midpoint <= 10500, in {elapsed:?}"
    );
}

#[test]
fn criterion_2_worst_case_oracle_equality() {
    let start = Instant::now();
    let mut checked = 0u64;
    let mut run_grid = |values: &[u64], n_max: u64| {
        let w = weights(values);
        let mut table = FibTable::new(w.clone());
        for n in 1..=n_max {
            let bound = table.min_level_for(n).level;
            let dp = dp_worst(n, &w).unwrap();
            let short = worst_case_cost(n, &w, Mode::Short);
            let full = worst_case_cost(n, &w, Mode::Full);
            assert_eq!(short, full, "short vs full, weights {values:?} n={n}");
            assert_eq!(short, dp, "search vs dp, weights {values:?} n={n}");
            assert_eq!(dp, bound, "dp vs bound, weights {values:?} n={n}");
            checked += 1;
        }
    };
    for values in BINARY_GRID {
        run_grid(&values, 120);
    }
    for values in TERNARY_GRID {
        run_grid(&values, 60);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}, limit 2min");
    println!(
        "criterion 2 PASS: worst(short) == worst(full) == dp_worst == bound \
         on {checked} instances, in {elapsed:?}"
    );
}

#[test]
fn criterion_3_average_case_optimality() {
    let start = Instant::now();
    let mut checked = 0u64;
    for values in BINARY_GRID {
        let w = weights(&values);
        let mut table = FibTable::new(w.clone());
        for n in 1..=60u64 {
            let cap = table.min_level_for(n).level;
            let algorithm = total_cost_sum(n, &w, Mode::Full);
            let oracle = dp_expected(n, &w, Some(cap)).unwrap();
            if algorithm != oracle {
                // a counterexample falsifies the surplus-assignment rule and
                // must fail loudly, never be absorbed
                println!(
                    "criterion 3 FAIL: weights {values:?} n={n} cap={cap}: \
                     full-mode total {algorithm} != capped optimum {oracle}"
                );
                panic!("average-case optimality counterexample");
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 3 PASS: full-mode total == capped expected-cost optimum \
         on {checked} instances, in {elapsed:?}"
    );
}

#[test]
fn criterion_4_tree_sequence_cross_checks() {
    let start = Instant::now();
    let grids: Vec<Vec<u64>> = BINARY_GRID
        .iter()
        .map(|v| v.to_vec())
        .chain(TERNARY_GRID.iter().map(|v| v.to_vec()))
        .collect();

    // leaf counts and censuses, budgets/caps up to 22 where the explicit
    // tree fits the configured node limit
    let mut counts_checked = 0u64;
    for values in &grids {
        let w = weights(values);
        let mut table = FibTable::new(w.clone());
        for budget in 0..=22u64 {
            match build_search_tree(&w, budget) {
                Ok(tree) => {
                    assert_eq!(
                        BigUint::from(tree.leaf_count()),
                        table.leaf_capacity(budget as i64),
                        "leaf count, weights {values:?} budget {budget}"
                    );
                    counts_checked += 1;
                }
                Err(TreeError::TooLarge { .. }) => break,
                Err(other) => panic!("unexpected error {other}"),
            }
        }
        for cap in 0..=22u64 {
            match build_counting_tree(&w, cap) {
                Ok(tree) => {
                    let census = tree.level_census();
                    for k in 0..=cap {
                        assert_eq!(
                            BigUint::from(census.get(&k).copied().unwrap_or(0)),
                            table.level_count(k as i64),
                            "census, weights {values:?} cap {cap} level {k}"
                        );
                    }
                }
                Err(TreeError::TooLarge { .. }) => break,
                Err(other) => panic!("unexpected error {other}"),
            }
        }
    }

    // trace/tree equivalence: all small n exhaustively, then boundary cases
    // around every capacity up to level 12, capped at desk scale (every
    // target is traced, and the (1,1,1) capacity at level 12 alone exceeds
    // half a million targets)
    let mut traces_checked = 0u64;
    for values in &grids {
        let w = weights(values);
        let mut table = FibTable::new(w.clone());
        let top: u64 = table
            .leaf_capacity(12)
            .to_u64()
            .expect("capacity at level 12 is desk-scale")
            .min(5000);
        let mut ns: Vec<u64> = (1..=top.min(64)).collect();
        for k in 0..=12i64 {
            let cap = table.leaf_capacity(k).to_u64().unwrap();
            for candidate in [cap.saturating_sub(1), cap, cap + 1, cap + cap / 3] {
                if candidate >= 1 && candidate <= top {
                    ns.push(candidate);
                }
            }
        }
        ns.sort_unstable();
        ns.dedup();
        let mut searcher = Searcher::new(w.clone());
        for &n in &ns {
            let level = table.min_level_for(n).level;
            let complete = build_search_tree(&w, level).unwrap();
            let pruned = prune_to_size(&complete, n).unwrap();
            assert_eq!(pruned.leaf_count(), n);
            let exact_capacity = table.leaf_capacity(level as i64) == BigUint::from(n);
            for target in 0..n {
                let trace = searcher.search(n, &mut IndexProbe { target }, Mode::Full).unwrap();
                let path = pruned.path_to_leaf(target as usize);
                assert_eq!(
                    trace.outcomes(),
                    path.iter().map(|s| s.outcome).collect::<Vec<_>>(),
                    "outcomes, weights {values:?} n={n} target={target}"
                );
                for (step, tree_step) in trace.steps.iter().zip(&path) {
                    assert_eq!(
                        step.request.cuts,
                        tree_step.cuts.iter().map(|&c| c as u64).collect::<Vec<u64>>(),
                        "cuts, weights {values:?} n={n} target={target}"
                    );
                }
                assert_eq!(
                    trace.total_cost,
                    path.iter().map(|s| s.cost).sum::<u64>(),
                    "cost, weights {values:?} n={n} target={target}"
                );
                if exact_capacity {
                    // at exact capacities the short mode walks the same tree
                    let short = searcher.search(n, &mut IndexProbe { target }, Mode::Short).unwrap();
                    assert_eq!(short.outcomes(), trace.outcomes());
                }
                traces_checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 4 PASS: {counts_checked} leaf-count checks, censuses up to cap 22, \
         {traces_checked} trace/tree path equalities, in {elapsed:?}"
    );
}

#[test]
fn criterion_5_complexity_bounds() {
    let start = Instant::now();
    let grids: Vec<(Vec<u64>, u64)> = BINARY_GRID
        .iter()
        .map(|v| (v.to_vec(), 120))
        .chain(TERNARY_GRID.iter().map(|v| (v.to_vec(), 60)))
        .collect();
    let mut checked = 0u64;
    let mut prep_violations: Vec<String> = Vec::new();
    for (values, n_max) in grids {
        let w = weights(&values);
        let ell = w.min_weight();
        let u = w.max_weight();
        let mut table = FibTable::new(w.clone());
        for n in 1..=n_max {
            let log = ceil_log2(n);
            let depth_bound = u.div_ceil(ell) * log;
            let prep_index = table.min_level_for(n).level;
            if prep_index > depth_bound {
                prep_violations.push(format!(
                    "weights {values:?} n={n}: table index {prep_index} > \
                     ceil({u}/{ell})*ceil(log2 {n}) = {depth_bound}"
                ));
            }
            for mode in [Mode::Short, Mode::Full] {
                let mut searcher = Searcher::new(w.clone());
                for target in 0..n {
                    let trace = searcher.search(n, &mut IndexProbe { target }, mode).unwrap();
                    assert!(
                        trace.steps.len() as u64 <= depth_bound,
                        "probe count, weights {values:?} n={n} target={target}"
                    );
                    assert!(
                        trace.total_cost <= u * log,
                        "cost bound, weights {values:?} n={n} target={target}"
                    );
                    checked += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if prep_violations.is_empty() {
        println!(
            "criterion 5 PASS: probe/cost/preparation bounds on {checked} searches, in {elapsed:?}"
        );
    } else {
        println!(
            "criterion 5 FAIL: probe-count and cost bounds hold on {checked} searches, \
             but the preparation-index bound is violated on {} instances \
             (the table index is a level, bounded by u*ceil(log2 n), not by the \
             depth bound ceil(u/ell)*ceil(log2 n)); first violations:",
            prep_violations.len()
        );
        for v in prep_violations.iter().take(6) {
            println!("  {v}");
        }
    }
    assert!(
        prep_violations.is_empty(),
        "preparation-index bound violations: {} instances, first: {}",
        prep_violations.len(),
        prep_violations[0]
    );
}

#[test]
fn criterion_6_growth_bounds() {
    let start = Instant::now();
    // relative tolerance on the floating bound evaluation only
    const REL_TOL: f64 = 1e-9;
    let mut violations: Vec<String> = Vec::new();
    let mut checked = 0u64;
    for values in BINARY_GRID {
        let w = weights(&values);
        let ell = w.min_weight() as f64;
        let u = w.max_weight() as f64;
        let mut table = FibTable::new(w.clone());
        for k in 0..=120i64 {
            let g = table
                .leaf_capacity(k)
                .to_f64()
                .expect("capacity fits f64 up to level 120");
            let lower = 2f64.powf((k as f64 + 1.0 - u) / u);
            if g < lower * (1.0 - REL_TOL) {
                violations.push(format!(
                    "lower: weights {values:?} k={k}: capacity {g} < 2^(({k}+1-{u})/{u}) = {lower}"
                ));
            }
            checked += 1;
            if k as f64 >= u {
                let upper = 2f64.powf((k as f64 + 2.0 - u) / ell);
                if g > upper * (1.0 + REL_TOL) {
                    violations.push(format!(
                        "upper: weights {values:?} k={k}: capacity {g} > 2^(({k}+2-{u})/{ell}) = {upper}"
                    ));
                }
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    if violations.is_empty() {
        println!("criterion 6 PASS: growth bounds on {checked} evaluations, in {elapsed:?}");
    } else {
        println!(
            "criterion 6 FAIL: {} violation(s) out of {checked} evaluations:",
            violations.len()
        );
        for v in &violations {
            println!("  {v}");
        }
    }
    assert!(
        violations.is_empty(),
        "growth-bound violations: {violations:?}"
    );
}

#[test]
fn criterion_7_varn_code_properties() {
    let start = Instant::now();
    let grids: Vec<Vec<u64>> = BINARY_GRID
        .iter()
        .map(|v| v.to_vec())
        .chain(TERNARY_GRID.iter().map(|v| v.to_vec()))
        .collect();
    let mut tables_checked = 0u64;
    for values in &grids {
        let w = weights(values);
        let mut table = FibTable::new(w.clone());
        let sizes: Vec<u64> = (1..=200).chain([1000, 5000]).collect();
        for n in sizes {
            let bound = table.min_level_for(n).level;
            let code = varn::code_table(n, &w).unwrap();
            assert_eq!(code.len() as u64, n);
            let max_cost = code.iter().map(|c| c.cost).max().unwrap();
            assert_eq!(max_cost, bound, "max cost, weights {values:?} n={n}");
            for pair in code.windows(2) {
                assert!(
                    pair[0].letters < pair[1].letters,
                    "alphabetic order, weights {values:?} n={n}"
                );
                assert!(
                    !pair[1].letters.starts_with(&pair[0].letters),
                    "prefix-freeness, weights {values:?} n={n}"
                );
            }
            // decode inverts encode: exhaustive for small tables, a fixed
            // 1000-index sample otherwise
            if n <= 200 {
                for (j, c) in code.iter().enumerate() {
                    assert_eq!(varn::decode(n, &w, &c.letters), Ok(j as u64));
                }
            } else {
                for i in 0..1000u64 {
                    let j = (i * 7919) % n; // deterministic spread
                    assert_eq!(
                        varn::decode(n, &w, &code[j as usize].letters),
                        Ok(j),
                        "weights {values:?} n={n} j={j}"
                    );
                }
            }
            tables_checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, limit 1min");
    println!(
        "criterion 7 PASS: prefix-free alphabetic minimax codes on {tables_checked} tables, \
         in {elapsed:?}"
    );
}

#[test]
fn criterion_8_classic_correspondence() {
    let start = Instant::now();
    // classic Fibonacci with F(1) = F(2) = 1
    let mut fib: Vec<BigUint> = vec![BigUint::from(0u32), BigUint::from(1u32), BigUint::from(1u32)];
    for i in 3..=41usize {
        let next = &fib[i - 1] + &fib[i - 2];
        fib.push(next);
    }
    let mut t12 = FibTable::new(weights(&[1, 2]));
    for k in 0..=40i64 {
        assert_eq!(t12.level_count(k), fib[k as usize + 1], "k={k}");
    }
    let mut t11 = FibTable::new(weights(&[1, 1]));
    for k in 0..=60u32 {
        assert_eq!(
            t11.leaf_capacity(k as i64),
            BigUint::from(2u32).pow(k),
            "k={k}"
        );
    }
    let elapsed = start.elapsed();
    println!(
        "criterion 8 PASS: (1,2) counts match classic Fibonacci to k=40, \
         (1,1) capacities are powers of two to k=60, in {elapsed:?}"
    );
}

/// The qualitative trend behind the criteria: this search never loses to
/// either binary-search baseline on the grid when the cheaper outcome is the
/// true branch. (The two baselines are not ordered between themselves:
/// leftmost-packing beats plain halving at some sizes and loses at others,
/// see the frozen counterexample below, so only the search's dominance is
/// asserted grid-wide.)
#[test]
fn baseline_dominance_on_the_grid() {
    for values in BINARY_GRID {
        let w = weights(&values);
        for n in 1..=120u64 {
            let fib = worst_case_cost(n, &w, Mode::Short) as u128;
            let packed = packed_binary_cost(n, (values[0], values[1]));
            let midpoint = midpoint_binary_cost(n, (values[0], values[1]));
            assert!(fib <= packed, "weights {values:?} n={n}: {fib} > {packed}");
            assert!(fib <= midpoint, "weights {values:?} n={n}: {fib} > {midpoint}");
        }
    }
    // five leftmost leaves of the depth-3 tree put four items behind the
    // deep cheap-side chain: worst path 1+2+2 = 5, while halving reaches 4
    assert_eq!(packed_binary_cost(5, (1, 2)), 5);
    assert_eq!(midpoint_binary_cost(5, (1, 2)), 4);
    println!("baseline dominance PASS: the search never loses to either baseline on the grid");
}
