//! The order-preserving code: a per-position encoding of predecessor counts
//! that characterizes order-isomorphism.
//!
//! For a sequence `w` and position `i`, the code character is the pair
//! `(lt, eq)` where `lt` counts earlier positions holding a strictly smaller
//! value and `eq` counts earlier positions holding an equal value. Two
//! sequences are order-isomorphic exactly when their codes agree, and the
//! code of a prefix is a prefix of the code — the property that makes the
//! encoding usable inside suffix structures.

use crate::Value;
use thiserror::Error;

/// One code character: predecessor counts of a single position.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharCode {
    /// Number of earlier positions with a strictly smaller value.
    pub lt: u32,
    /// Number of earlier positions with an equal value.
    pub eq: u32,
}

impl CharCode {
    pub fn new(lt: u32, eq: u32) -> Self {
        CharCode { lt, eq }
    }
}

impl std::fmt::Debug for CharCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.lt, self.eq)
    }
}

impl std::fmt::Display for CharCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.lt, self.eq)
    }
}

/// The code of a sequence: one [`CharCode`] per position.
pub type CodeSeq = Vec<CharCode>;

/// Canonical form of a sequence under order-isomorphism: each value replaced
/// by its rank among the distinct values present.
pub type Shape = Vec<u32>;

/// Code character of position `i` (1-based) of `w`: the pair of counts of
/// earlier positions holding a strictly smaller / an equal value.
///
/// Runs in O(i). Use [`code`] to obtain all positions in O(n log n), or a
/// [`crate::oracle::CharacterOracle`] to query arbitrary suffixes.
///
/// # Panics
///
/// If `i` is out of range (`i == 0` or `i > w.len()`).
pub fn phi<T: Value>(w: &[T], i: usize) -> CharCode {
    assert!(
        i >= 1 && i <= w.len(),
        "position {i} out of range 1..={}",
        w.len()
    );
    let v = w[i - 1];
    let mut lt = 0u32;
    let mut eq = 0u32;
    for &u in &w[..i - 1] {
        if u < v {
            lt += 1;
        } else if u == v {
            eq += 1;
        }
    }
    CharCode { lt, eq }
}

/// The full code of `w`: `code(w)[i] = phi(w, i + 1)`.
///
/// Computed with one order-statistics sweep over rank-compressed values,
/// O(n log n) overall.
pub fn code<T: Value>(w: &[T]) -> CodeSeq {
    assert!(w.len() < u32::MAX as usize, "sequence too long");
    let (_, ranks) = rank_compress(w);
    let sigma = ranks.iter().map(|&r| r as usize + 1).max().unwrap_or(0);
    let mut fen = Fenwick::new(sigma);
    let mut seen = vec![0u32; sigma];
    let mut out = Vec::with_capacity(w.len());
    for &r in &ranks {
        let r = r as usize;
        out.push(CharCode {
            lt: fen.prefix_sum(r),
            eq: seen[r],
        });
        fen.add(r, 1);
        seen[r] += 1;
    }
    out
}

/// Canonical representative of `w`'s order-isomorphism class: position `i`
/// receives the number of distinct values of `w` strictly smaller than
/// `w[i]`. The result is order-isomorphic to `w` and lexicographically
/// smallest among all order-isomorphic sequences over `0, 1, 2, …`.
pub fn shape<T: Value>(w: &[T]) -> Shape {
    rank_compress(w).1
}

/// Ways a [`CodeSeq`] can fail to be the code of any sequence.
///
/// Validation is partial: reconstruction detects the violations it runs
/// into, it does not certify arbitrary inputs up front.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CodeError {
    /// A non-empty code must start with `(0,0)`.
    #[error("code must start with (0,0), found {0}")]
    BadLead(CharCode),
    /// No minimal element could be identified among the remaining entries.
    #[error("unrealizable code: no (0,0) entry among the {remaining} remaining")]
    Stalled { remaining: usize },
    /// An `lt` count dropped below zero while peeling off minimal classes.
    #[error("unrealizable code: count underflow at position {position}")]
    Underflow { position: usize },
}

/// Rebuilds the [`shape`] of a sequence from its code alone, i.e. inverts
/// [`code`] up to order-isomorphism: `shape_from_code(&code(w)) ==
/// Ok(shape(w))` for every `w`.
///
/// Works by repeatedly peeling off the class of minimal values: the
/// rightmost remaining `(0,0)` entry together with every `(0, z)` entry to
/// its right holds the current minimum. Those positions receive the next
/// rank, and surviving `lt` counts drop by the number of removed entries to
/// their left.
pub fn shape_from_code(c: &[CharCode]) -> Result<Shape, CodeError> {
    if c.is_empty() {
        return Ok(Vec::new());
    }
    if c[0] != CharCode::new(0, 0) {
        return Err(CodeError::BadLead(c[0]));
    }
    let n = c.len();
    let mut lt: Vec<i64> = c.iter().map(|cc| cc.lt as i64).collect();
    let mut alive = vec![true; n];
    let mut out = vec![0u32; n];
    let mut rank = 0u32;
    let mut remaining = n;
    while remaining > 0 {
        let lead = (0..n)
            .rev()
            .find(|&p| alive[p] && lt[p] == 0 && c[p].eq == 0)
            .ok_or(CodeError::Stalled { remaining })?;
        // The minimal class: the rightmost (0,0) plus every (0,z) after it.
        let class: Vec<usize> = std::iter::once(lead)
            .chain((lead + 1..n).filter(|&p| alive[p] && lt[p] == 0))
            .collect();
        for &p in &class {
            alive[p] = false;
            out[p] = rank;
        }
        remaining -= class.len();
        let mut removed_left = 0usize;
        let mut next_class = class.iter().peekable();
        for (p, l) in lt.iter_mut().enumerate() {
            while next_class.peek().is_some_and(|&&q| q < p) {
                next_class.next();
                removed_left += 1;
            }
            if alive[p] {
                *l -= removed_left as i64;
                if *l < 0 {
                    return Err(CodeError::Underflow { position: p + 1 });
                }
            }
        }
        rank += 1;
    }
    Ok(out)
}

/// Whether `x` and `y` have the same relative order everywhere: equal
/// length, and `x[i] <= x[j]` exactly when `y[i] <= y[j]` for all `i`, `j`.
/// The two sequences may range over different scalar types.
pub fn is_order_isomorphic<T: Value, U: Value>(x: &[T], y: &[U]) -> bool {
    x.len() == y.len() && code(x) == code(y)
}

/// Sorted distinct values of `w` plus the rank of each position's value in
/// that ordering.
pub(crate) fn rank_compress<T: Value>(w: &[T]) -> (Vec<T>, Vec<u32>) {
    let mut distinct: Vec<T> = w.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let ranks = w
        .iter()
        .map(|v| distinct.partition_point(|u| u < v) as u32)
        .collect();
    (distinct, ranks)
}

/// Prefix-sum counter over a fixed universe of ranks.
struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick {
            tree: vec![0; n + 1],
        }
    }

    fn add(&mut self, mut i: usize, delta: u32) {
        i += 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum of counts at ranks strictly below `i`.
    fn prefix_sum(&self, mut i: usize) -> u32 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}
