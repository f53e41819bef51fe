//! Range-minimum queries over a fixed array.
//!
//! Values are cut into blocks of 32. Each element stores the position of the
//! minimum from its block start and to its block end, and a sparse table
//! answers queries over whole blocks, so memory stays linear. Queries that
//! fall inside a single block scan it.

use alloc::vec::Vec;

use crate::error::{Error, Result};

const BLOCK: usize = 32;

#[derive(Debug, Clone)]
pub struct RmqIndex {
    values: Vec<u32>,
    /// Position of the minimum of `values[block_start..=i]`.
    prefix: Vec<u32>,
    /// Position of the minimum of `values[i..block_end]`.
    suffix: Vec<u32>,
    /// `levels[j][b]`: position of the minimum over blocks `b..b + 2^j`.
    levels: Vec<Vec<u32>>,
}

impl RmqIndex {
    pub fn new(values: Vec<u32>) -> Result<RmqIndex> {
        let n = values.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let better = |a: u32, b: u32| -> u32 {
            // Ties go to the smaller position.
            let (va, vb) = (values[a as usize], values[b as usize]);
            if vb < va || (vb == va && b < a) {
                b
            } else {
                a
            }
        };

        let mut prefix = Vec::with_capacity(n);
        let mut suffix = alloc::vec![0u32; n];
        let blocks = n.div_ceil(BLOCK);
        let mut base = Vec::with_capacity(blocks);
        for b in 0..blocks {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(n);
            let mut best = lo as u32;
            for i in lo..hi {
                best = better(best, i as u32);
                prefix.push(best);
            }
            let mut best = (hi - 1) as u32;
            for i in (lo..hi).rev() {
                best = better(best, i as u32);
                suffix[i] = best;
            }
            base.push(prefix[hi - 1]);
        }

        let mut levels = alloc::vec![base];
        let mut width = 1usize;
        while 2 * width <= blocks {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=blocks - 2 * width)
                .map(|b| better(prev[b], prev[b + width]))
                .collect();
            levels.push(next);
            width *= 2;
        }

        Ok(RmqIndex {
            values,
            prefix,
            suffix,
            levels,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Leftmost position of a minimum of `values[lo..=hi]`.
    pub fn query(&self, lo: usize, hi: usize) -> Result<usize> {
        let n = self.values.len();
        if hi >= n {
            return Err(Error::OutOfRange { index: hi, len: n });
        }
        if lo > hi {
            return Err(Error::InvalidParameter("empty query range"));
        }
        Ok(self.query_unchecked(lo, hi))
    }

    /// Value of the minimum over `values[lo..=hi]`.
    #[inline]
    pub fn min_value(&self, lo: usize, hi: usize) -> u32 {
        self.values[self.query_unchecked(lo, hi)]
    }

    pub(crate) fn query_unchecked(&self, lo: usize, hi: usize) -> usize {
        let (bl, bh) = (lo / BLOCK, hi / BLOCK);
        let v = &self.values;
        if bl == bh {
            let mut best = lo;
            for i in lo + 1..=hi {
                if v[i] < v[best] {
                    best = i;
                }
            }
            return best;
        }
        // Candidates arrive left to right, so strict comparison keeps the
        // leftmost tie.
        let mut best = self.suffix[lo] as usize;
        if bl + 1 < bh {
            let (a, b) = (bl + 1, bh - 1);
            let j = (usize::BITS - 1 - (b - a + 1).leading_zeros()) as usize;
            let x = self.levels[j][a] as usize;
            let y = self.levels[j][b + 1 - (1 << j)] as usize;
            if v[x] < v[best] {
                best = x;
            }
            if v[y] < v[best] {
                best = y;
            }
        }
        let p = self.prefix[hi] as usize;
        if v[p] < v[best] {
            best = p;
        }
        best
    }
}
