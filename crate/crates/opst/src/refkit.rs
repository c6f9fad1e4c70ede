//! Brute-force reference implementations used as test oracles.
//!
//! Everything in this module is written straight from the definitions and
//! favors obviousness over speed: quadratic scans, symbol-by-symbol trie
//! insertion, exhaustive window filters. The indexed implementations in the
//! rest of the crate are validated against these; nothing here shares logic
//! with them beyond the public types.

use crate::code::CharCode;
use crate::squares::OpSquare;
use crate::tree::{OpSuffixTree, Symbol};
use crate::Value;
use std::collections::BTreeMap;

/// Code of `w` by the definitional double loop: for every position, count
/// earlier smaller and earlier equal values directly. O(n²).
pub fn naive_code<T: Value>(w: &[T]) -> Vec<CharCode> {
    let mut out = Vec::with_capacity(w.len());
    for i in 0..w.len() {
        let mut lt = 0u32;
        let mut eq = 0u32;
        for k in 0..i {
            if w[k] < w[i] {
                lt += 1;
            } else if w[k] == w[i] {
                eq += 1;
            }
        }
        out.push(CharCode { lt, eq });
    }
    out
}

/// Order-isomorphism by the quantified definition: equal lengths and, for
/// every pair of positions, agreeing `<=` outcomes. O(n²) with early exit.
pub fn naive_iso<T: Value, U: Value>(x: &[T], y: &[U]) -> bool {
    if x.len() != y.len() {
        return false;
    }
    for i in 0..x.len() {
        for j in 0..x.len() {
            if (x[i] <= x[j]) != (y[i] <= y[j]) {
                return false;
            }
        }
    }
    true
}

/// Starting positions (1-based, ascending) of the factors of `t` that are
/// order-isomorphic to `x`, by checking every window. O(n·m²).
///
/// # Panics
///
/// If `x` is empty.
pub fn naive_occurrences<T: Value, U: Value>(t: &[T], x: &[U]) -> Vec<usize> {
    assert!(!x.is_empty(), "empty pattern");
    let m = x.len();
    if m > t.len() {
        return Vec::new();
    }
    (1..=t.len() - m + 1)
        .filter(|&i| naive_iso(&t[i - 1..i - 1 + m], x))
        .collect()
}

fn window_pair_iso<T: Value>(t: &[T], i: usize, k: usize) -> bool {
    naive_iso(&t[i - 1..i - 1 + k], &t[i - 1 + k..i - 1 + 2 * k])
}

/// Every order-preserving square of `t`, by filtering all `(start, half)`
/// pairs through the definition. Sorted by half length, then start.
pub fn naive_all_op_squares<T: Value>(t: &[T]) -> Vec<OpSquare> {
    let n = t.len();
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        for i in 1..=n - 2 * k + 1 {
            if window_pair_iso(t, i, k) {
                out.push(OpSquare { start: i, half: k });
            }
        }
    }
    out
}

/// The squares of `t` whose halves cannot be grown by one position: either
/// the square already ends at the last position of `t`, or the two
/// one-longer windows are not order-isomorphic. Sorted by half, then start.
pub fn naive_non_extendible_squares<T: Value>(t: &[T]) -> Vec<OpSquare> {
    let n = t.len();
    naive_all_op_squares(t)
        .into_iter()
        .filter(|sq| {
            let (i, k) = (sq.start, sq.half);
            i + 2 * k - 1 == n || !naive_iso(&t[i - 1..i + k], &t[i - 1 + k..i + 2 * k])
        })
        .collect()
}

/// A compacted trie over a prefix-free family of rows, built symbol by
/// symbol and then path-compressed. Row numbers are 1-based input order.
pub struct NaiveTrie {
    pub root: NaiveNode,
}

pub struct NaiveNode {
    /// Label of the edge leading into this node; empty only at the root.
    pub label: Vec<Symbol>,
    /// Children keyed by the first symbol of their edge label.
    pub children: BTreeMap<Symbol, NaiveNode>,
    /// For leaves, the 1-based number of the row ending here.
    pub row: Option<usize>,
}

struct RawNode {
    children: BTreeMap<Symbol, RawNode>,
    row: Option<usize>,
}

/// Builds the compacted trie of `rows`.
///
/// # Panics
///
/// If one row is a prefix of another (or a duplicate); such a family has no
/// well-formed trie with one leaf per row.
pub fn naive_compacted_trie(rows: &[Vec<Symbol>]) -> NaiveTrie {
    let mut root = RawNode {
        children: BTreeMap::new(),
        row: None,
    };
    for (idx, row) in rows.iter().enumerate() {
        let mut node = &mut root;
        for &sym in row {
            assert!(
                node.row.is_none(),
                "row {} is a proper prefix of row {}",
                node.row.unwrap(),
                idx + 1
            );
            node = node.children.entry(sym).or_insert_with(|| RawNode {
                children: BTreeMap::new(),
                row: None,
            });
        }
        assert!(
            node.children.is_empty() && node.row.is_none(),
            "row {} is a prefix of (or equal to) another row",
            idx + 1
        );
        node.row = Some(idx + 1);
    }
    NaiveTrie {
        root: compact(root, Vec::new()),
    }
}

fn compact(mut raw: RawNode, mut label: Vec<Symbol>) -> NaiveNode {
    if !label.is_empty() {
        while raw.row.is_none() && raw.children.len() == 1 {
            let (sym, child) = raw.children.into_iter().next().unwrap();
            label.push(sym);
            raw = child;
        }
    }
    NaiveNode {
        label,
        children: raw
            .children
            .into_iter()
            .map(|(sym, child)| (sym, compact(child, vec![sym])))
            .collect(),
        row: raw.row,
    }
}

impl NaiveTrie {
    pub fn leaf_count(&self) -> usize {
        fn count(node: &NaiveNode) -> usize {
            if node.children.is_empty() {
                1
            } else {
                node.children.values().map(count).sum()
            }
        }
        count(&self.root)
    }
}

/// Structural equality between a [`NaiveTrie`] and a built [`OpSuffixTree`]:
/// same branching, same edge labels, same row number at every leaf.
pub fn trie_matches_tree<T: Value>(trie: &NaiveTrie, tree: &OpSuffixTree<T>) -> bool {
    fn walk<T: Value>(naive: &NaiveNode, tree: &OpSuffixTree<T>, node: crate::tree::NodeId) -> bool {
        match naive.row {
            Some(row) => tree.leaf_start(node) == Some(row) && naive.children.is_empty(),
            None => {
                let kids = tree.children_sorted(node);
                if kids.len() != naive.children.len() || tree.leaf_start(node).is_some() {
                    return false;
                }
                naive
                    .children
                    .iter()
                    .zip(&kids)
                    .all(|((&sym, nchild), &(tsym, tchild))| {
                        sym == tsym
                            && nchild.label == tree.edge_symbols(tchild)
                            && walk(nchild, tree, tchild)
                    })
            }
        }
    }
    walk(&trie.root, tree, tree.root())
}
