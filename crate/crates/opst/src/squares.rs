//! Discovery of order-preserving squares: factors of the form `u·v` where
//! the two halves have the same length and the same relative order of
//! values (for example `(3,1,4)(7,2,8)` — both halves go high, low,
//! highest).
//!
//! Everything here reduces to one fact: the halves starting at `i` and
//! `i + k` are order-isomorphic exactly when the encodings of the suffixes
//! starting there agree on their first `k` characters, i.e. when
//! [`OpSuffixTree::lca_depth`]`(i, i + k) >= k`. Single tests are O(1)
//! against a built tree.
//!
//! Enumeration goes through the *non-extendible* squares — those that
//! cannot grow both halves by one position to the right, either because the
//! text ends or because the longer halves stop being isomorphic. They are
//! precisely the pairs of leaves at distance `k` whose lowest common
//! ancestor sits at code depth exactly `k`, and leaf-set merging over the
//! tree finds all of them in O(n log n) expected time. Every other square
//! arises from some non-extendible one by shifting the start leftwards
//! (growing both halves on the right keeps a square a square after
//! dropping the first position), which is how the full enumeration works.

use crate::tree::OpSuffixTree;
use crate::Value;
use std::collections::HashSet;

/// An order-preserving square: the factor of length `2 * half` starting at
/// `start` (1-based) whose two halves are order-isomorphic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct OpSquare {
    /// 1-based starting position of the first half.
    pub start: usize,
    /// Length of each half.
    pub half: usize,
}

/// Whether the factor of length `2 * k` starting at `i` (1-based) is an
/// order-preserving square. O(1).
///
/// # Panics
///
/// If `i < 1`, `k < 1`, or the square would overrun the text.
pub fn is_op_square<T: Value>(tree: &OpSuffixTree<T>, i: usize, k: usize) -> bool {
    let n = tree.len();
    assert!(i >= 1 && k >= 1, "start and half length must be positive");
    assert!(
        i + 2 * k - 1 <= n,
        "square of half {k} at {i} overruns text of length {n}"
    );
    tree.lca_depth(i, i + k) >= k
}

/// All non-extendible order-preserving squares, sorted by half length and
/// then by start.
///
/// Walks the tree bottom-up keeping the set of leaf starts per subtree.
/// At an internal node of code depth `k ≥ 1`, two starts `s` and `s + k`
/// coming from *different* children form a leaf pair with lowest common
/// ancestor exactly there — a square whose halves agree on exactly `k`
/// encoding characters, hence non-extendible. Sets merge smaller-into-
/// larger, with each incoming batch checked in full before insertion so
/// same-child pairs are never miscounted.
pub fn non_extendible_squares<T: Value>(tree: &OpSuffixTree<T>) -> Vec<OpSquare> {
    let nc = tree.node_count();
    let kids: Vec<Vec<usize>> = (0..nc)
        .map(|v| tree.children_sorted(v).into_iter().map(|(_, c)| c).collect())
        .collect();
    let mut sets: Vec<Option<HashSet<usize>>> = (0..nc).map(|_| None).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize)> = vec![(tree.root(), 0)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if let Some(&c) = kids[v].get(*next) {
            *next += 1;
            stack.push((c, 0));
            continue;
        }
        stack.pop();
        if let Some(s) = tree.leaf_start(v) {
            sets[v] = Some(HashSet::from([s]));
            continue;
        }
        let k = tree.depth(v);
        let mut base: Option<HashSet<usize>> = None;
        for &c in &kids[v] {
            let mut part = sets[c].take().expect("children are merged before parents");
            let Some(mut acc) = base.take() else {
                base = Some(part);
                continue;
            };
            if acc.len() < part.len() {
                std::mem::swap(&mut acc, &mut part);
            }
            if k > 0 {
                for &s in &part {
                    if acc.contains(&(s + k)) {
                        debug_assert!(s + 2 * k - 1 <= tree.len());
                        out.push(OpSquare { start: s, half: k });
                    }
                    if s > k && acc.contains(&(s - k)) {
                        debug_assert!(s + k - 1 <= tree.len());
                        out.push(OpSquare { start: s - k, half: k });
                    }
                }
            }
            acc.extend(part);
            base = Some(acc);
        }
        sets[v] = base;
    }
    out.sort_unstable_by_key(|sq| (sq.half, sq.start));
    out
}

/// All order-preserving squares, sorted by half length and then by start.
/// Beware that the output alone can be quadratic in the text length (a
/// constant text has a square at every viable `(start, half)` pair).
///
/// Each non-extendible square is shifted leftwards for as long as the
/// shifted factor stays a square; a visited set merges overlapping walks.
pub fn all_op_squares<T: Value>(tree: &OpSuffixTree<T>) -> Vec<OpSquare> {
    let mut out = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    for sq in non_extendible_squares(tree) {
        let k = sq.half;
        let mut i = sq.start;
        loop {
            if !seen.insert((i, k)) {
                break;
            }
            out.push(OpSquare { start: i, half: k });
            if i == 1 || !is_op_square(tree, i - 1, k) {
                break;
            }
            i -= 1;
        }
    }
    out.sort_unstable_by_key(|sq| (sq.half, sq.start));
    out
}

/// For each half length, whether the text contains an order-preserving
/// square with halves that long. Built from the non-extendible squares:
/// a square of some half length exists exactly when a non-extendible one
/// does.
pub struct SquareLengthIndex {
    /// `present[k]` for `k` in `1..=n/2`; index 0 unused.
    present: Vec<bool>,
}

/// Builds the per-half-length square presence table for the tree's text.
pub fn square_length_index<T: Value>(tree: &OpSuffixTree<T>) -> SquareLengthIndex {
    let mut present = vec![false; tree.len() / 2 + 1];
    for sq in non_extendible_squares(tree) {
        present[sq.half] = true;
    }
    SquareLengthIndex { present }
}

impl SquareLengthIndex {
    /// Largest half length that fits in the text (`n / 2`).
    pub fn max_half(&self) -> usize {
        self.present.len() - 1
    }

    /// Whether the text has an order-preserving square with halves of
    /// length `k`. Lengths beyond [`max_half`](Self::max_half) have none.
    ///
    /// # Panics
    ///
    /// If `k` is zero.
    pub fn has_square_of_half(&self, k: usize) -> bool {
        assert!(k >= 1, "half length must be at least 1");
        k < self.present.len() && self.present[k]
    }
}
