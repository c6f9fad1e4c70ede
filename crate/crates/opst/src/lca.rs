//! Static range-minimum over a `u32` array: sparse table, O(n log n) build,
//! O(1) query. Used for constant-time lowest-common-ancestor depths over the
//! Euler tour of the suffix tree.

pub(crate) struct SparseMin {
    /// Row k holds minima of windows of length 2^k, flattened row-major.
    table: Vec<u32>,
    len: usize,
}

impl SparseMin {
    pub(crate) fn build(values: &[u32]) -> Self {
        let n = values.len();
        assert!(n > 0);
        let rows = n.ilog2() as usize + 1;
        let mut table = Vec::with_capacity(rows * n);
        table.extend_from_slice(values);
        for k in 1..rows {
            let half = 1usize << (k - 1);
            let prev = (k - 1) * n;
            for i in 0..n {
                let a = table[prev + i];
                let b = table[prev + (i + half).min(n - 1)];
                table.push(a.min(b));
            }
        }
        SparseMin { table, len: n }
    }

    /// Minimum over the inclusive range `[l, r]`.
    pub(crate) fn query(&self, l: usize, r: usize) -> u32 {
        debug_assert!(l <= r && r < self.len);
        let k = (r - l + 1).ilog2() as usize;
        let row = k * self.len;
        self.table[row + l].min(self.table[row + r + 1 - (1 << k)])
    }
}
