//! Explicit decision trees: building, pruning, counting, and rendering to
//! Graphviz DOT.
//!
//! Run with: cargo run --example decision_tree_dot > tree.dot
//! Then:     dot -Tsvg tree.dot -o tree.svg

use fibsearch::tree::{build_counting_tree, build_search_tree, prune_to_size};
use fibsearch::Weights;

fn main() {
    let weights = Weights::from_integers(&[1, 2]).unwrap();

    // the complete budget-5 search tree has 8 leaves; its shape is the
    // optimal strategy for 8 items
    let complete = build_search_tree(&weights, 5).expect("within node limit");
    eprintln!(
        "complete tree: {} leaves, level {}, depth {}",
        complete.leaf_count(),
        complete.level(),
        complete.depth()
    );
    eprintln!("leaf levels: {:?}", complete.leaf_levels());

    // pruning to 6 leaves deletes the two most expensive leaves and skips
    // the comparisons they leave behind
    let pruned = prune_to_size(&complete, 6).expect("6 <= 8 leaves");
    eprintln!("pruned to 6: leaf levels {:?}", pruned.leaf_levels());

    // counting trees reproduce the per-level node censuses
    let counting = build_counting_tree(&weights, 6).expect("within node limit");
    let census = counting.level_census();
    eprintln!("counting-tree census: {census:?}");

    // the DOT rendering goes to stdout, diagnostics went to stderr
    print!("{}", pruned.to_dot());
}
