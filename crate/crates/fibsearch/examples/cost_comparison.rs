//! How much does cost-awareness buy? A sweep over problem sizes comparing
//! the worst-case cost of this search against midpoint bisection and
//! leftmost-packed bisection, and against the brute-force optimum.
//!
//! Run with: cargo run --example cost_comparison

use fibsearch::oracle::{dp_worst, midpoint_binary_cost, packed_binary_cost};
use fibsearch::search::{total_cost_sum, worst_case_cost, Mode};
use fibsearch::Weights;

fn main() {
    for values in [[1u64, 2], [1, 3], [2, 5]] {
        let weights = Weights::from_integers(&values).unwrap();
        println!("weights {values:?}");
        println!("{:>6} {:>10} {:>10} {:>10} {:>10} {:>12}", "n", "search", "optimum", "midpoint", "packed", "avg (full)");
        for n in [5u64, 10, 25, 50, 100, 250, 500] {
            let search = worst_case_cost(n, &weights, Mode::Short);
            let optimum = dp_worst(n, &weights).expect("within oracle limit");
            let midpoint = midpoint_binary_cost(n, (values[0], values[1]));
            let packed = packed_binary_cost(n, (values[0], values[1]));
            let avg = total_cost_sum(n, &weights, Mode::Full) as f64 / n as f64;
            println!("{n:>6} {search:>10} {optimum:>10} {midpoint:>10} {packed:>10} {avg:>12.3}");
            assert_eq!(search, optimum, "the search meets the brute-force optimum");
        }
        println!();
    }
    println!("the gap to the bisection baselines widens as the cost ratio grows");
}
