//! Relative code characters for arbitrary suffixes, answered from one
//! preprocessed structure instead of n materialized encodings.
//!
//! Place a point `(i, w[i])` for every position of the text. The code
//! character of absolute position `i` relative to the suffix starting at `j`
//! is a pair of axis-aligned rectangle counts: points of `[j, i-1]` strictly
//! below `w[i]`, and points of `[j, i-1]` exactly at `w[i]`. Values are rank
//! compressed and the counting runs over a wavelet matrix, so building costs
//! O(n log n) and each query O(log n).

use crate::code::rank_compress;
use crate::code::CharCode;
use crate::Value;
use std::sync::atomic::{AtomicU64, Ordering};

/// Point-set over the text answering relative code-character queries.
///
/// Immutable once built; queries only read (a relaxed call counter aside),
/// so shared references may be used from several threads at once.
pub struct CharacterOracle<T> {
    distinct: Vec<T>,
    ranks: Vec<u32>,
    wm: WaveletMatrix,
    queries: AtomicU64,
}

impl<T: Value> CharacterOracle<T> {
    /// Preprocesses `w`. An empty text is allowed and yields an oracle with
    /// no valid positions.
    pub fn build(w: &[T]) -> Self {
        assert!(w.len() < u32::MAX as usize, "sequence too long");
        let (distinct, ranks) = rank_compress(w);
        let wm = WaveletMatrix::build(&ranks);
        CharacterOracle {
            distinct,
            ranks,
            wm,
            queries: AtomicU64::new(0),
        }
    }

    /// Number of text positions.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Code character of absolute position `i` within the suffix starting at
    /// `j`, i.e. of relative position `i - j + 1` of `w[j..]`. Both
    /// positions are 1-based; `j == i` gives `(0,0)`. O(log n).
    ///
    /// # Panics
    ///
    /// Unless `1 <= j <= i <= n`.
    pub fn suffix_char_code(&self, j: usize, i: usize) -> CharCode {
        assert!(
            1 <= j && j <= i && i <= self.len(),
            "positions ({j}, {i}) out of range 1 <= j <= i <= {}",
            self.len()
        );
        self.queries.fetch_add(1, Ordering::Relaxed);
        let r = self.ranks[i - 1];
        let lt = self.wm.count_below(j - 1, i - 1, r);
        let eq = self.wm.count_below(j - 1, i - 1, r + 1) - lt;
        CharCode {
            lt: lt as u32,
            eq: eq as u32,
        }
    }

    /// Number of points `(p, w[p])` with `x1 <= p <= x2` (1-based) and value
    /// inside the given closed bounds; `None` means unbounded on that side.
    /// An empty value range yields 0. O(log n).
    ///
    /// # Panics
    ///
    /// Unless `1 <= x1 <= x2 <= n`.
    pub fn count_in_rect(&self, x1: usize, x2: usize, lo: Option<T>, hi: Option<T>) -> usize {
        assert!(
            1 <= x1 && x1 <= x2 && x2 <= self.len(),
            "columns ({x1}, {x2}) out of range 1 <= x1 <= x2 <= {}",
            self.len()
        );
        self.queries.fetch_add(1, Ordering::Relaxed);
        let lo_rank = match lo {
            None => 0,
            Some(v) => self.distinct.partition_point(|u| *u < v) as u32,
        };
        let hi_rank = match hi {
            None => self.distinct.len() as u32,
            Some(v) => self.distinct.partition_point(|u| *u <= v) as u32,
        };
        if lo_rank >= hi_rank {
            return 0;
        }
        self.wm.count_below(x1 - 1, x2, hi_rank) - self.wm.count_below(x1 - 1, x2, lo_rank)
    }

    /// Total `suffix_char_code` / `count_in_rect` calls answered so far.
    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }
}

/// Succinct-ish bit vector with O(1) rank.
struct BitVec {
    blocks: Vec<u64>,
    prefix: Vec<u32>,
    len: usize,
}

impl BitVec {
    fn build(bits: &[bool]) -> Self {
        let n_blocks = bits.len() / 64 + 1;
        let mut blocks = vec![0u64; n_blocks];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                blocks[i / 64] |= 1 << (i % 64);
            }
        }
        let mut prefix = Vec::with_capacity(n_blocks + 1);
        let mut acc = 0u32;
        prefix.push(0);
        for &blk in &blocks {
            acc += blk.count_ones();
            prefix.push(acc);
        }
        BitVec {
            blocks,
            prefix,
            len: bits.len(),
        }
    }

    /// Ones among the first `i` bits.
    fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let mask = (1u64 << (i % 64)) - 1;
        self.prefix[i / 64] as usize + (self.blocks[i / 64] & mask).count_ones() as usize
    }

    fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }
}

/// Wavelet matrix over `u32` values: one bit vector per bit level, values
/// stably partitioned by that bit from the most significant level down.
struct WaveletMatrix {
    levels: Vec<BitVec>,
    zeros: Vec<usize>,
    bits: u32,
}

impl WaveletMatrix {
    fn build(data: &[u32]) -> Self {
        let max = data.iter().copied().max().unwrap_or(0);
        let bits = (32 - max.leading_zeros()).max(1);
        let mut cur: Vec<u32> = data.to_vec();
        let mut levels = Vec::with_capacity(bits as usize);
        let mut zeros = Vec::with_capacity(bits as usize);
        for lvl in (0..bits).rev() {
            let flags: Vec<bool> = cur.iter().map(|&v| (v >> lvl) & 1 == 1).collect();
            let mut lo: Vec<u32> = Vec::with_capacity(cur.len());
            let mut hi: Vec<u32> = Vec::new();
            for (&v, &f) in cur.iter().zip(&flags) {
                if f {
                    hi.push(v);
                } else {
                    lo.push(v);
                }
            }
            zeros.push(lo.len());
            lo.extend_from_slice(&hi);
            cur = lo;
            levels.push(BitVec::build(&flags));
        }
        WaveletMatrix {
            levels,
            zeros,
            bits,
        }
    }

    /// Values strictly below `ub` among positions `[l, r)` (0-based).
    fn count_below(&self, mut l: usize, mut r: usize, ub: u32) -> usize {
        debug_assert!(l <= r);
        if ub == 0 || l == r {
            return 0;
        }
        if (ub as u64) >= 1u64 << self.bits {
            return r - l;
        }
        let mut acc = 0;
        for (idx, lvl) in (0..self.bits).rev().enumerate() {
            let bv = &self.levels[idx];
            let l0 = bv.rank0(l);
            let r0 = bv.rank0(r);
            if (ub >> lvl) & 1 == 1 {
                // Everything with a 0 at this level sits below `ub`.
                acc += r0 - l0;
                l = self.zeros[idx] + (l - l0);
                r = self.zeros[idx] + (r - r0);
            } else {
                l = l0;
                r = r0;
            }
        }
        acc
    }
}
