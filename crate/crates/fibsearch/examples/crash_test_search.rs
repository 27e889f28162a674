//! Estimating the lowest speed at which a vehicle's crash protection
//! triggers, to one decimal, when a triggering test wrecks 1500 worth of
//! hardware and a non-triggering one only 500.
//!
//! The candidate speeds are the 101 values 10.0, 10.1, ..., 20.0 km/h
//! (stored as integer tenths). A probe at speed v answers "threshold <= v"
//! (the feature triggered, expensive) or "threshold > v" (it did not,
//! cheap), so the comparison costs are (500, 1500) = 500 x weights (1, 3).
//!
//! Run with: cargo run --example crash_test_search

use fibsearch::oracle::{midpoint_binary_cost, packed_binary_cost};
use fibsearch::sequences::FibTable;
use fibsearch::{search_slice, worst_case_cost, Mode, Weights};

fn main() {
    let speeds_in_tenths: Vec<u32> = (100..=200).collect();
    let weights = Weights::from_integers(&[1, 3]).expect("two positive weights");
    let unit = 500u64;

    let mut table = FibTable::new(weights.clone());
    let bound = table.min_level_for(speeds_in_tenths.len() as u64);
    println!(
        "{} candidate speeds, capacity table reaches {} at level {}",
        speeds_in_tenths.len(),
        bound.capacity,
        bound.level
    );
    println!(
        "=> no strategy can guarantee less than {} cost units = {} money\n",
        bound.level,
        bound.level * unit
    );

    // search for one concrete threshold and show the probes
    let secret = 137u32; // 13.7 km/h
    let (trace, found) = search_slice(&speeds_in_tenths, &secret, &weights, Mode::Full, true)
        .expect("sorted input");
    assert!(found);
    println!("probing for a threshold of 13.7 km/h:");
    for step in &trace.steps {
        let at = step.request.cuts[0] - 1;
        let answer = if step.outcome.outcome_index == 0 { "triggered" } else { "no trigger" };
        println!(
            "  test at {:>4.1} km/h: {:<10} (cost {})",
            speeds_in_tenths[at as usize] as f64 / 10.0,
            answer,
            step.outcome.charged_cost * unit
        );
    }
    println!(
        "  found index {} = {:.1} km/h, total damage {}\n",
        trace.result_index,
        speeds_in_tenths[trace.result_index as usize] as f64 / 10.0,
        trace.total_cost * unit
    );

    // worst case over every possible threshold, against the baselines
    let n = speeds_in_tenths.len() as u64;
    let worst = worst_case_cost(n, &weights, Mode::Short) * unit;
    let midpoint = midpoint_binary_cost(n, (500, 1500));
    let packed = packed_binary_cost(n, (500, 1500));
    println!("worst case over all thresholds:");
    println!("  cost-aware search   {worst:>6}");
    println!("  midpoint bisection  {midpoint:>6}");
    println!("  packed bisection    {packed:>6}");
}
