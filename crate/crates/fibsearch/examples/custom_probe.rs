//! Plugging an implicit domain into the probe contract: finding an unknown
//! threshold inside a trillion-element index range without any array.
//!
//! A probe request carries the current interval and cut positions; outcome i
//! means the hidden index falls before cut i. Here the "comparison" is a
//! simulated experiment whose failure outcome costs five times its success
//! outcome, and the domain is far too large to materialize.
//!
//! Run with: cargo run --example custom_probe

use fibsearch::{fib_search, Mode, Probe, ProbeRequest, Weights};

/// Simulates an expensive monotone experiment: "does the system hold up at
/// load x?" Every index below `breaking_point` holds, everything above
/// fails. Answering a probe means running the experiment at the cut.
struct LoadTester {
    breaking_point: u64,
    experiments_run: u64,
}

impl Probe for LoadTester {
    fn answer(&mut self, request: &ProbeRequest) -> usize {
        self.experiments_run += 1;
        // outcome = first part whose cut lies beyond the breaking point
        request.cuts.partition_point(|&cut| cut <= self.breaking_point)
    }
}

fn main() {
    let n: u64 = 1_000_000_000_000; // a trillion candidate load levels
    // holding up is routine (cost 1); a failure wrecks the rig (cost 5)
    let weights = Weights::from_integers(&[5, 1]).unwrap();

    let mut tester = LoadTester {
        breaking_point: 123_456_789_012,
        experiments_run: 0,
    };
    let trace = fib_search(n, &weights, &mut tester, Mode::Short).expect("nonempty domain");

    println!("domain size          {n}");
    println!("experiments run      {}", tester.experiments_run);
    println!("probes in the trace  {}", trace.steps.len());
    println!("total cost           {}", trace.total_cost);
    println!("located index        {}", trace.result_index);
    assert_eq!(trace.result_index, tester.breaking_point);

    // the preparation is logarithmic too: only the budgets actually used
    let budgets: Vec<u64> = trace.budgets.iter().take(6).copied().collect();
    println!("first budgets        {budgets:?} ...");
}
