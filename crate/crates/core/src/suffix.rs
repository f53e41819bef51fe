//! Suffix array, inverse, LCP, BWT and the permutations φ and LF.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sais::suffix_array;
use crate::text::Text;

/// Suffix structures of one text. Ranks and positions are 0-based.
#[derive(Debug, Clone)]
pub struct SuffixContext {
    text: Text,
    sa: Vec<u32>,
    isa: Vec<u32>,
    lcp: Vec<u32>,
    bwt: Vec<u8>,
    lf: Vec<u32>,
    run_starts: Vec<u32>,
    c_table: [u32; 257],
}

impl SuffixContext {
    pub fn new(text: Text) -> SuffixContext {
        let sa = suffix_array(text.as_bytes());
        SuffixContext::from_suffix_array(text, sa)
    }

    /// Derives the other arrays from a suffix array computed elsewhere.
    /// `sa` must be the suffix array of `text`.
    pub fn from_suffix_array(text: Text, sa: Vec<u32>) -> SuffixContext {
        let t = text.as_bytes();
        let n = t.len();
        debug_assert_eq!(sa.len(), n);
        let isa = inverse(&sa);
        let lcp = kasai(t, &sa, &isa);
        let bwt: Vec<u8> = sa
            .iter()
            .map(|&p| if p == 0 { t[n - 1] } else { t[p as usize - 1] })
            .collect();
        SuffixContext::from_parts(text, sa, isa, lcp, bwt)
    }

    /// Assembles a context from arrays computed elsewhere; the remaining
    /// fields are derived from `bwt`.
    pub(crate) fn from_parts(
        text: Text,
        sa: Vec<u32>,
        isa: Vec<u32>,
        lcp: Vec<u32>,
        bwt: Vec<u8>,
    ) -> SuffixContext {
        let t = text.as_bytes();
        let n = t.len();

        let mut c_table = [0u32; 257];
        for &c in t {
            c_table[c as usize + 1] += 1;
        }
        for c in 0..256 {
            c_table[c + 1] += c_table[c];
        }

        // LF(i) = C[L[i]] + rank_{L[i]}(L, i), counted in one pass.
        let mut seen = [0u32; 256];
        let mut lf = vec![0u32; n];
        for (i, &c) in bwt.iter().enumerate() {
            lf[i] = c_table[c as usize] + seen[c as usize];
            seen[c as usize] += 1;
        }

        let mut run_starts = Vec::new();
        for i in 0..n {
            if i == 0 || bwt[i] != bwt[i - 1] {
                run_starts.push(i as u32);
            }
        }

        SuffixContext {
            text,
            sa,
            isa,
            lcp,
            bwt,
            lf,
            run_starts,
            c_table,
        }
    }

    #[inline]
    pub fn text(&self) -> &Text {
        &self.text
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    #[inline]
    pub fn isa(&self) -> &[u32] {
        &self.isa
    }

    /// `lcp[0] = 0`; `lcp[i]` compares the suffixes of ranks `i - 1` and `i`.
    #[inline]
    pub fn lcp(&self) -> &[u32] {
        &self.lcp
    }

    #[inline]
    pub fn bwt(&self) -> &[u8] {
        &self.bwt
    }

    /// Ranks at which a BWT run begins, ascending.
    #[inline]
    pub fn run_starts(&self) -> &[u32] {
        &self.run_starts
    }

    /// Number of BWT runs.
    #[inline]
    pub fn r(&self) -> usize {
        self.run_starts.len()
    }

    /// `c_table[c]` counts the symbols smaller than `c`.
    #[inline]
    pub fn c_table(&self) -> &[u32; 257] {
        &self.c_table
    }

    /// Text position of the suffix lexicographically preceding the one at
    /// `p`; the smallest suffix wraps to the largest.
    pub fn phi(&self, p: usize) -> Result<usize> {
        let n = self.len();
        if p >= n {
            return Err(Error::OutOfRange { index: p, len: n });
        }
        Ok(self.phi_unchecked(p))
    }

    #[inline]
    pub(crate) fn phi_unchecked(&self, p: usize) -> usize {
        let i = self.isa[p] as usize;
        if i > 0 {
            self.sa[i - 1] as usize
        } else {
            self.sa[self.len() - 1] as usize
        }
    }

    /// Rank of the suffix starting one position before the suffix of rank
    /// `i` (cyclically).
    pub fn lf(&self, i: usize) -> Result<usize> {
        let n = self.len();
        if i >= n {
            return Err(Error::OutOfRange { index: i, len: n });
        }
        Ok(self.lf[i] as usize)
    }

    /// Rebuilds the text from the BWT by repeated LF steps.
    pub fn invert_bwt(&self) -> Vec<u8> {
        let n = self.len();
        let mut out = vec![0u8; n];
        // Rank 0 is the suffix "$" at position n - 1.
        out[n - 1] = crate::text::SENTINEL;
        let mut i = 0usize;
        for k in 1..n {
            out[n - 1 - k] = self.bwt[i];
            i = self.lf[i] as usize;
        }
        out
    }
}

pub(crate) fn inverse(sa: &[u32]) -> Vec<u32> {
    let mut isa = vec![0u32; sa.len()];
    for (i, &p) in sa.iter().enumerate() {
        isa[p as usize] = i as u32;
    }
    isa
}

/// Kasai et al.: LCP from SA and ISA in linear time.
fn kasai(t: &[u8], sa: &[u32], isa: &[u32]) -> Vec<u32> {
    let n = t.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for p in 0..n {
        let i = isa[p] as usize;
        if i == 0 {
            h = 0;
            continue;
        }
        let q = sa[i - 1] as usize;
        while p + h < n && q + h < n && t[p + h] == t[q + h] {
            h += 1;
        }
        lcp[i] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}
