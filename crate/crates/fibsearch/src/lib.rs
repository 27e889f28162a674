//! Comparison search when the cost of a comparison depends on its outcome.
//!
//! Classic binary search charges every comparison the same. In many problems
//! it shouldn't: overshooting an unknown threshold may be far more expensive
//! than undershooting it (a destructive test, a dropped packet, a blown
//! budget). With per-outcome costs the midpoint is no longer the right place
//! to probe: the optimal probe positions follow a generalized Fibonacci
//! sequence, and the optimal strategy is an implicit lopsided decision tree
//! that this crate walks without ever building it.
//!
//! What's here:
//!
//! * [`weights`]: canonical integer cost vectors with an exact rational
//!   scale back to the caller's units.
//! * [`sequences`]: exact big-integer tables of the node-count and
//!   leaf-capacity sequences, and the worst-case lower bound `min_level_for`.
//! * [`search`]: the search itself, over a probe contract: worst-case
//!   optimal `short` mode and average-case optimal `full` mode, for two or
//!   more outcomes per comparison.
//! * [`tree`]: explicit decision trees (search and counting kinds), pruning,
//!   level censuses and Graphviz output, for desk-scale verification.
//! * [`oracle`]: independent brute-force DP oracles and the classical
//!   binary-search baselines every optimality claim is checked against.
//! * [`varn`]: alphabetic prefix codes over letters of unequal costs,
//!   generated from the implicit tree in logarithmic time per word.
//!
//! Run `cargo run --example` with any of the bundled examples to see each
//! capability end to end, or use the `fibsearch` binary for a scriptable
//! command-line surface.

pub mod cli;
pub mod oracle;
pub mod search;
pub mod sequences;
pub mod tree;
pub mod varn;
pub mod weights;

pub use search::{
    fib_search, search_slice, total_cost_sum, worst_case_cost, IndexProbe, Mode, Probe,
    ProbeOutcome, ProbeRequest, SearchError, SearchStep, SearchTrace, Searcher, SliceProbe,
};
pub use sequences::{FibTable, LevelBound};
pub use tree::{build_counting_tree, build_search_tree, prune_to_size, Tree, TreeKind, TreeNode};
pub use varn::{code_table, decode, encode, Codeword};
pub use weights::{canonical_weights, parse_weights, Weights};
