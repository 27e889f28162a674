//! The two sequences behind the search: node counts per level and leaf
//! capacities per level, for a few weight vectors.
//!
//! Run with: cargo run --example sequence_tables

use fibsearch::sequences::FibTable;
use fibsearch::Weights;

fn main() {
    // with weights (1,2) the node counts are the classic Fibonacci numbers
    let mut classic = FibTable::new(Weights::from_integers(&[1, 2]).unwrap());
    let row: Vec<String> = (0..=10).map(|k| classic.level_count(k).to_string()).collect();
    println!("counts for weights (1,2): {}", row.join(" "));

    // asymmetric weights thin the tree out: far fewer options per level
    let mut lopsided = FibTable::new(Weights::from_integers(&[1, 3]).unwrap());
    let row: Vec<String> = (0..=14).map(|k| lopsided.level_count(k).to_string()).collect();
    println!("counts for weights (1,3): {}", row.join(" "));

    // capacities answer "how many items can a budget of k distinguish?"
    println!("\nlevel    capacity (1,3)   capacity (2,3)   capacity (1,2,3)");
    let mut c13 = FibTable::new(Weights::from_integers(&[1, 3]).unwrap());
    let mut c23 = FibTable::new(Weights::from_integers(&[2, 3]).unwrap());
    let mut c123 = FibTable::new(Weights::from_integers(&[1, 2, 3]).unwrap());
    for k in 0..=14i64 {
        println!(
            "{k:>5}    {:>14}   {:>14}   {:>16}",
            c13.leaf_capacity(k),
            c23.leaf_capacity(k),
            c123.leaf_capacity(k)
        );
    }

    // the smallest level whose capacity reaches n is the exact worst-case
    // cost of searching among n items
    for n in [10u64, 101, 1_000_000] {
        let bound = c13.min_level_for(n);
        println!(
            "\nsearching {n} items under weights (1,3): worst case exactly {} (capacity {})",
            bound.level, bound.capacity
        );
    }

    // tables are exact at any index; growth is exponential
    let mut big = FibTable::new(Weights::from_integers(&[1, 1]).unwrap());
    println!("\ncapacity(200) for weights (1,1) = {}", big.leaf_capacity(200));
}
