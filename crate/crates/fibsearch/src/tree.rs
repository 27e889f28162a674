//! Explicit lopsided decision trees, for desk-scale verification and
//! rendering. The search algorithm never materializes these; they exist so
//! that leaf counts, level censuses and probe traces can be checked against
//! an independent, literal construction.
//!
//! Two kinds are built:
//!
//! * **search trees**: valid decision trees: a node either carries a full
//!   comparison (one child per outcome whose weight fits the remaining
//!   budget, at least two of them) or is a leaf. A budget-`b` search tree
//!   has exactly `leaf_capacity(b)` leaves.
//! * **counting trees**: the unbounded complete tree truncated at a level
//!   cap, single children permitted. The node census at level `k` equals
//!   `level_count(k)`; this reproduces the node-counting identities.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::weights::Weights;

/// Explicit trees refuse to grow beyond this many nodes.
pub const NODE_LIMIT: usize = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("explicit tree would exceed the node limit of {limit} nodes")]
    TooLarge { limit: usize },
    #[error("cannot prune to {requested} leaves, the tree has {available}")]
    NotEnoughLeaves { requested: u64, available: u64 },
    #[error("pruning requires a search tree, got a counting tree")]
    NotASearchTree,
    #[error("cannot prune to zero leaves")]
    EmptyPrune,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    Search,
    Counting,
}

/// One tree node. `children` holds `(outcome index, node index)` pairs in
/// outcome order; an empty list marks a leaf. `level` is the weighted depth
/// (accumulated comparison cost), `depth` the plain edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNode {
    pub level: u64,
    pub depth: u32,
    pub children: Vec<(usize, usize)>,
    /// First and last leaf index (inclusive) below this node, in
    /// left-to-right leaf order.
    pub leaf_range: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct Tree {
    weights: Weights,
    kind: TreeKind,
    nodes: Vec<TreeNode>,
    root: usize,
    level: u64,
    depth: u32,
    leaf_count: u64,
}

/// A probe position on a root-to-leaf walk: the interval of leaf indices at
/// the node and the cut positions splitting it between the children. The cut
/// for outcome `i` is the index of the first leaf belonging to a later
/// outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStep {
    pub interval: (usize, usize),
    pub cuts: Vec<usize>,
    pub outcome: usize,
    pub cost: u64,
}

impl Tree {
    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> &TreeNode {
        &self.nodes[self.root]
    }

    /// Maximum node level (the tree's level).
    pub fn level(&self) -> u64 {
        self.level
    }

    /// Maximum node depth (edge count).
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn leaf_count(&self) -> u64 {
        self.leaf_count
    }

    /// Node count per level, over all nodes (internal and leaf).
    pub fn level_census(&self) -> BTreeMap<u64, u64> {
        let mut census = BTreeMap::new();
        for node in &self.nodes {
            *census.entry(node.level).or_insert(0u64) += 1;
        }
        census
    }

    /// Levels of the leaves in left-to-right order.
    pub fn leaf_levels(&self) -> Vec<u64> {
        let mut leaves: Vec<(usize, u64)> = self
            .nodes
            .iter()
            .filter(|n| n.children.is_empty())
            .map(|n| (n.leaf_range.0, n.level))
            .collect();
        leaves.sort_unstable();
        leaves.into_iter().map(|(_, lvl)| lvl).collect()
    }

    /// The root-to-leaf walk for leaf index `j`, one step per comparison.
    pub fn path_to_leaf(&self, j: usize) -> Vec<PathStep> {
        assert!((j as u64) < self.leaf_count, "leaf index out of range");
        let w = self.weights.values();
        let mut steps = Vec::new();
        let mut at = self.root;
        while !self.nodes[at].children.is_empty() {
            let node = &self.nodes[at];
            let mut cuts = Vec::with_capacity(self.weights.arity() - 1);
            let mut next_start = node.leaf_range.0;
            let mut by_outcome: Vec<Option<usize>> = vec![None; self.weights.arity()];
            for &(outcome, child) in &node.children {
                by_outcome[outcome] = Some(child);
            }
            let mut chosen = None;
            for (outcome, slot) in by_outcome.iter().enumerate() {
                if let Some(child) = slot {
                    let range = self.nodes[*child].leaf_range;
                    if range.0 <= j && j <= range.1 {
                        chosen = Some((outcome, *child));
                    }
                    next_start = range.1 + 1;
                }
                if outcome < self.weights.arity() - 1 {
                    cuts.push(next_start);
                }
            }
            let (outcome, child) = chosen.expect("leaf index inside node range");
            steps.push(PathStep {
                interval: node.leaf_range,
                cuts,
                outcome,
                cost: w[outcome],
            });
            at = child;
        }
        steps
    }

    /// Deterministic Graphviz rendering: one node per tree node labeled with
    /// its level, rank groups per level, edges labeled with outcome index
    /// and weight. Identical trees produce byte-identical output.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tree {\n  rankdir=TB;\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{} [label=\"L{}\"];", i, node.level);
        }
        let mut by_level: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, node) in self.nodes.iter().enumerate() {
            by_level.entry(node.level).or_default().push(i);
        }
        for (_, ids) in by_level {
            out.push_str("  { rank=same;");
            for id in ids {
                let _ = write!(out, " n{id};");
            }
            out.push_str(" }\n");
        }
        let w = self.weights.values();
        for (i, node) in self.nodes.iter().enumerate() {
            for &(outcome, child) in &node.children {
                let _ = writeln!(
                    out,
                    "  n{} -> n{} [label=\"{} (w={})\"];",
                    i, child, outcome, w[outcome]
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

struct Builder {
    weights: Weights,
    nodes: Vec<TreeNode>,
    next_leaf: usize,
}

impl Builder {
    fn push(&mut self, level: u64, depth: u32) -> Result<usize, TreeError> {
        if self.nodes.len() >= NODE_LIMIT {
            return Err(TreeError::TooLarge { limit: NODE_LIMIT });
        }
        self.nodes.push(TreeNode {
            level,
            depth,
            children: Vec::new(),
            leaf_range: (0, 0),
        });
        Ok(self.nodes.len() - 1)
    }

    fn build_search(&mut self, budget: u64, level: u64, depth: u32) -> Result<usize, TreeError> {
        let id = self.push(level, depth)?;
        let fitting: Vec<(usize, u64)> = self
            .weights
            .values()
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, w)| w <= budget)
            .collect();
        if fitting.len() < 2 {
            self.nodes[id].leaf_range = (self.next_leaf, self.next_leaf);
            self.next_leaf += 1;
            return Ok(id);
        }
        let first = self.next_leaf;
        for (outcome, w) in fitting {
            let child = self.build_search(budget - w, level + w, depth + 1)?;
            self.nodes[id].children.push((outcome, child));
        }
        self.nodes[id].leaf_range = (first, self.next_leaf - 1);
        Ok(id)
    }

    fn build_counting(&mut self, cap: u64, level: u64, depth: u32) -> Result<usize, TreeError> {
        let id = self.push(level, depth)?;
        let first = self.next_leaf;
        let mut any_child = false;
        let w_list = self.weights.values().to_vec();
        for (outcome, &w) in w_list.iter().enumerate() {
            if level + w <= cap {
                let child = self.build_counting(cap, level + w, depth + 1)?;
                self.nodes[id].children.push((outcome, child));
                any_child = true;
            }
        }
        if any_child {
            self.nodes[id].leaf_range = (first, self.next_leaf - 1);
        } else {
            self.nodes[id].leaf_range = (self.next_leaf, self.next_leaf);
            self.next_leaf += 1;
        }
        Ok(id)
    }

    fn finish(self, kind: TreeKind, root: usize) -> Tree {
        let level = self.nodes.iter().map(|n| n.level).max().unwrap_or(0);
        let depth = self.nodes.iter().map(|n| n.depth).max().unwrap_or(0);
        let leaf_count = self.nodes.iter().filter(|n| n.children.is_empty()).count() as u64;
        Tree {
            weights: self.weights,
            kind,
            nodes: self.nodes,
            root,
            level,
            depth,
            leaf_count,
        }
    }
}

/// Builds the complete valid decision tree with level at most `budget`: a
/// node splits on every outcome whose weight fits the remaining budget and
/// is a leaf when fewer than two fit. Its leaf count equals
/// `leaf_capacity(budget)`.
pub fn build_search_tree(weights: &Weights, budget: u64) -> Result<Tree, TreeError> {
    let mut b = Builder {
        weights: weights.clone(),
        nodes: Vec::new(),
        next_leaf: 0,
    };
    let root = b.build_search(budget, 0, 0)?;
    Ok(b.finish(TreeKind::Search, root))
}

/// Builds the unrolled counting tree: a node at level `d` has child `i`
/// exactly when `d + w_i <= cap`, single children included. The node census
/// at level `k` equals `level_count(k)` for every `k <= cap`.
pub fn build_counting_tree(weights: &Weights, cap: u64) -> Result<Tree, TreeError> {
    let mut b = Builder {
        weights: weights.clone(),
        nodes: Vec::new(),
        next_leaf: 0,
    };
    let root = b.build_counting(cap, 0, 0)?;
    Ok(b.finish(TreeKind::Counting, root))
}

/// Removes `leaf_count - n` leaves from a search tree, repeatedly deleting
/// the leaf with the highest current level (rightmost first among ties) and
/// splicing out any comparison left with a single child; a skipped
/// comparison contributes no cost, so the surviving subtree moves up by the
/// spliced edge's weight. Left-to-right leaf order is preserved.
pub fn prune_to_size(tree: &Tree, n: u64) -> Result<Tree, TreeError> {
    if tree.kind != TreeKind::Search {
        return Err(TreeError::NotASearchTree);
    }
    if n == 0 {
        return Err(TreeError::EmptyPrune);
    }
    if n > tree.leaf_count {
        return Err(TreeError::NotEnoughLeaves {
            requested: n,
            available: tree.leaf_count,
        });
    }

    // mutable working copy: children as (outcome, index), plus parent links
    let mut children: Vec<Vec<(usize, usize)>> = tree.nodes.iter().map(|x| x.children.clone()).collect();
    let mut parent: Vec<Option<usize>> = vec![None; tree.nodes.len()];
    for (i, ch) in children.iter().enumerate() {
        for &(_, c) in ch {
            parent[c] = Some(i);
        }
    }
    let mut root = tree.root;
    let w = tree.weights.values().to_vec();

    // Current leaf levels, kept incrementally: removing the deepest leaf
    // splices its parent out, which lifts exactly the surviving sibling (a
    // single leaf at that point in the greedy order, but a subtree lift is
    // handled too). A lazy max-heap over (level, position) yields the
    // deepest-rightmost leaf; stale entries are skipped on pop.
    let mut level: Vec<u64> = vec![0; tree.nodes.len()];
    let mut heap: std::collections::BinaryHeap<(u64, usize, usize)> = Default::default();
    {
        let mut stack: Vec<(usize, u64)> = vec![(root, 0)];
        while let Some((at, lvl)) = stack.pop() {
            level[at] = lvl;
            if children[at].is_empty() {
                // leaf_range.0 is the original in-order position; splices
                // preserve relative order, so it stays a valid tiebreaker
                heap.push((lvl, tree.nodes[at].leaf_range.0, at));
                continue;
            }
            for &(outcome, c) in children[at].iter().rev() {
                stack.push((c, lvl + w[outcome]));
            }
        }
    }
    let mut gone: Vec<bool> = vec![false; tree.nodes.len()];

    let mut removals = tree.leaf_count - n;
    while removals > 0 {
        let (lvl, _pos, victim) = heap.pop().expect("enough leaves to remove");
        if gone[victim] || lvl != level[victim] {
            continue; // stale entry
        }
        gone[victim] = true;
        let p = parent[victim].expect("more than one leaf, victim has a parent");
        children[p].retain(|&(_, c)| c != victim);
        if children[p].len() == 1 {
            // comparison with one possible outcome: splice it out and lift
            // the survivor by the spliced edge weight
            let (outcome, only) = children[p][0];
            match parent[p] {
                Some(gp) => {
                    for slot in children[gp].iter_mut() {
                        if slot.1 == p {
                            slot.1 = only;
                        }
                    }
                    parent[only] = Some(gp);
                }
                None => {
                    root = only;
                    parent[only] = None;
                }
            }
            children[p].clear();
            gone[p] = true;
            let lift = w[outcome];
            let mut stack = vec![only];
            while let Some(at) = stack.pop() {
                level[at] -= lift;
                if children[at].is_empty() {
                    heap.push((level[at], tree.nodes[at].leaf_range.0, at));
                } else {
                    for &(_, c) in &children[at] {
                        stack.push(c);
                    }
                }
            }
        }
        removals -= 1;
    }

    // rebuild a compact arena in preorder
    let mut b = Builder {
        weights: tree.weights.clone(),
        nodes: Vec::new(),
        next_leaf: 0,
    };
    fn copy(
        b: &mut Builder,
        children: &[Vec<(usize, usize)>],
        old: usize,
        level: u64,
        depth: u32,
        w: &[u64],
    ) -> usize {
        let id = b.push(level, depth).expect("pruned tree is smaller than the original");
        if children[old].is_empty() {
            b.nodes[id].leaf_range = (b.next_leaf, b.next_leaf);
            b.next_leaf += 1;
            return id;
        }
        let first = b.next_leaf;
        for &(outcome, c) in &children[old] {
            let child = copy(b, children, c, level + w[outcome], depth + 1, w);
            b.nodes[id].children.push((outcome, child));
        }
        b.nodes[id].leaf_range = (first, b.next_leaf - 1);
        id
    }
    let new_root = copy(&mut b, &children, root, 0, 0, &w);
    Ok(b.finish(TreeKind::Search, new_root))
}
